#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <span>
#include <sstream>
#include <utility>
#include <vector>

#include "probe.hpp"
#include "sparse_asm/parallel.hpp"
#include "thread_team.hpp"

namespace sparse_asm::detail {

// Barrier-phased parallel assembly. Inside a phase every worker writes only
// data it owns (its element range, its private counter, its row range, or
// its block of rows/columns in the merge loops); Sync::wait() separates the
// phases. Worker 0 runs the serial prefix steps between two barriers.

inline index_t* counter(RowCounters& rc, int k) {
    return rc.data.data() + std::size_t(k) * (std::size_t(rc.M) + 1);
}

template <class Probe>
RowCounters count_rows_parallel(const TripletList& t, Dimensions dims, int p,
                                std::span<Probe> probes) {
    const index_t M = dims.M;
    const index_t* ii = t.ii.data();
    const WorkerPartition part{t.size(), M, p};

    RowCounters rc;
    rc.M = M;
    rc.p = p;
    rc.data.assign((std::size_t(p) + 1) * (std::size_t(M) + 1), 0);

    parallel_region(p, [&](int k, Sync& sync) {
        Probe& probe = probes[std::size_t(k)];
        probe.phase(0);

        // histogram of the local element range into counter k+1
        index_t* own = counter(rc, k + 1);
        const Range elems = part.elements(k);
        for (index_t i = elems.begin; i < elems.end; ++i) {
            ++own[ii[i] - 1];
            probe.direct();
            probe.indirect();
        }
        sync.wait();

        // counter w+1 becomes the sum of workers 0..w; counter p the row totals
        const Range rows = block_range(M, k, p);
        for (index_t r = rows.begin; r < rows.end; ++r) {
            for (int w = 1; w < p; ++w) {
                counter(rc, w + 1)[r] += counter(rc, w)[r];
                probe.direct(2);
            }
        }
        sync.wait();

        // counter 0 becomes the start slot of every row
        if (k == 0) {
            index_t* base = counter(rc, 0);
            const index_t* totals = counter(rc, p);
            for (index_t r = 1; r <= M; ++r) {
                base[r] += base[r - 1] + totals[r - 1];
                probe.direct(3);
            }
        }
        sync.wait();

        // private offsets: start of row plus the share of lower workers
        const index_t* base = counter(rc, 0);
        for (index_t r = rows.begin; r < rows.end; ++r) {
            for (int w = 1; w < p; ++w) {
                counter(rc, w)[r] += base[r];
                probe.direct(2);
            }
        }
    });
    return rc;
}

template <class Probe>
RankArray build_rank_parallel(const TripletList& t, RowCounters& rc, int p,
                              std::span<Probe> probes) {
    const index_t* ii = t.ii.data();
    const WorkerPartition part{t.size(), rc.M, p};

    RankArray ra;
    ra.rank.resize(std::size_t(t.size()));
    index_t* rank = ra.rank.data();

    parallel_region(p, [&](int k, Sync&) {
        Probe& probe = probes[std::size_t(k)];
        probe.phase(1);
        index_t* own = counter(rc, k);
        const Range elems = part.elements(k);
        for (index_t i = elems.begin; i < elems.end; ++i) {
            rank[own[ii[i] - 1]++] = i;
            probe.direct();
            probe.indirect();
            probe.indirect_l();
        }
    });
    return ra;
}

template <class Probe>
ParallelPlan compress_and_accumulate_parallel(const TripletList& t, RankArray&& ra,
                                              RowCounters&& rc, Dimensions dims, int p,
                                              std::span<Probe> probes,
                                              std::chrono::steady_clock::time_point* part3_done) {
    const index_t M = dims.M, N = dims.N;
    const index_t* jj = t.jj.data();
    const WorkerPartition part{t.size(), M, p};
    const std::size_t stride = std::size_t(N) + 1;

    ParallelPlan plan;
    plan.p = p;
    plan.dims = dims;
    plan.irankP.resize(std::size_t(t.size()));
    plan.jc.assign(stride, 0);
    // column counters of workers 1..p; counter w lives at (w-1)*stride
    Buffer<index_t> jc_private(std::size_t(p) * stride, 0);

    const index_t* rank = ra.rank.data();
    const index_t* row_end = counter(rc, p - 1);  // row_end[r-1]: end slot of row r
    index_t* irankP = plan.irankP.data();
    index_t* jc0 = plan.jc.data();
    auto jcw = [&](int w) { return jc_private.data() + std::size_t(w - 1) * stride; };

    parallel_region(p, [&](int k, Sync& sync) {
        Probe& probe = probes[std::size_t(k)];
        probe.phase(2);

        const Range rows = part.row_range(k);
        const index_t istart = rows.begin > 1 ? row_end[rows.begin - 2] : 0;
        const index_t iend = rows.empty() ? istart : row_end[rows.end - 2];

        {
            Buffer<index_t> hcol(std::size_t(N), 0);
            index_t* own = jcw(k + 1);
            index_t i = istart;
            for (index_t row = rows.begin; row < rows.end; ++row) {
                const index_t end = row_end[row - 1];
                probe.direct();
                for (; i < end; ++i) {
                    const index_t col = jj[rank[i]];
                    if (hcol[col - 1] < row) {
                        hcol[col - 1] = row;
                        ++own[col];
                    }
                    irankP[i] = own[col] - 1;
                    probe.direct();      // rank[i]
                    probe.indirect_l();  // jj[rank[i]]
                    probe.indirect(2);   // hcol[col], own[col]
                    probe.direct();      // irankP[i]
                }
            }
        }
        sync.wait();
        if (k == 0 && part3_done) *part3_done = std::chrono::steady_clock::now();
        probe.phase(3);

        // column counter w+1 becomes the sum of workers 0..w
        const Range cols = block_range(N, k, p);
        for (index_t c = cols.begin + 1; c <= cols.end; ++c) {
            for (int w = 1; w < p; ++w) {
                jcw(w + 1)[c] += jcw(w)[c];
                probe.direct(2);
            }
        }
        sync.wait();

        // final column pointer; jc0[c-1] is then the first slot of column c
        if (k == 0) {
            const index_t* totals = jcw(p);
            for (index_t c = 1; c <= N; ++c) {
                jc0[c] += jc0[c - 1] + totals[c];
                probe.direct(3);
            }
        }
        sync.wait();

        for (index_t c = cols.begin + 1; c <= cols.end; ++c) {
            for (int w = 1; w < p; ++w) {
                jcw(w)[c] += jc0[c - 1];
                probe.direct(2);
            }
        }
        sync.wait();

        // shift local slots by this worker's first slot in each column
        if (k == 0) {
            for (index_t i = istart; i < iend; ++i) {
                irankP[i] += jc0[jj[rank[i]] - 1];
                probe.direct(2);
                probe.indirect_l();
                probe.indirect();
            }
        } else {
            const index_t* own = jcw(k);
            for (index_t i = istart; i < iend; ++i) {
                irankP[i] += own[jj[rank[i]]];
                probe.direct(2);
                probe.indirect_l();
                probe.indirect();
            }
        }
    });

    Buffer<index_t>().swap(jc_private);
    plan.rank = std::move(ra);
    plan.counters = std::move(rc);
    return plan;
}

inline CscMatrix scatter_rows(ParallelPlan&& plan, const TripletList& t,
                                  index_t capacity_hint) {
    const int p = plan.p;
    const index_t nnz = plan.nnz();
    const WorkerPartition part{t.size(), plan.dims.M, p};

    CscMatrix out;
    out.dims = plan.dims;
    if (capacity_hint > nnz) {
        out.ir.reserve(std::size_t(capacity_hint));
        out.pr.reserve(std::size_t(capacity_hint));
    }
    out.ir.resize(std::size_t(nnz));
    out.pr.resize(std::size_t(nnz));

    const index_t* row_end = counter(plan.counters, p - 1);
    const index_t* rank = plan.rank.rank.data();
    const index_t* irankP = plan.irankP.data();
    const index_t* ii = t.ii.data();
    const bool broadcast = t.sr.size() != std::size_t(t.size());
    const double* sr = t.sr.data();
    index_t* ir = out.ir.data();
    double* pr = out.pr.data();

    parallel_region(p, [&](int k, Sync& sync) {
        const Range slots = block_range(nnz, k, p);
        std::fill(pr + slots.begin, pr + slots.end, 0.0);
        sync.wait();

        const Range rows = part.row_range(k);
        if (rows.empty()) return;
        const index_t istart = rows.begin > 1 ? row_end[rows.begin - 2] : 0;
        const index_t iend = row_end[rows.end - 2];
        for (index_t i = istart; i < iend; ++i) ir[irankP[i]] = ii[rank[i]] - 1;
        if (broadcast) {
            const double s = t.sr.empty() ? 0.0 : sr[0];
            for (index_t i = istart; i < iend; ++i) pr[irankP[i]] += s;
        } else {
            for (index_t i = istart; i < iend; ++i) pr[irankP[i]] += sr[rank[i]];
        }
    });

    out.jc = std::move(plan.jc);
    Buffer<index_t>().swap(plan.irankP);
    Buffer<index_t>().swap(plan.rank.rank);
    Buffer<index_t>().swap(plan.counters.data);
    return out;
}

/// Parallel counterpart of resolve_dimensions for integer triplets.
Dimensions resolve_dimensions_parallel(const TripletList& t, const std::optional<Dimensions>& dims,
                                       int p);

template <class Probe>
CscMatrix assemble_parallel(const AssemblyRequest& req, int p, PhaseTimings* timings,
                            std::span<Probe> probes) {
    if (p < 1) throw Error(ErrorCode::invalid_argument, "worker count must be >= 1");
    using clock = std::chrono::steady_clock;
    auto mark = clock::now();
    auto lap = [&](double PhaseTimings::*field, clock::time_point now) {
        if (!timings) return;
        timings->*field += std::chrono::duration<double>(now - mark).count();
        mark = now;
    };

    const TripletList& t = req.triplets;
    const Dimensions dims = resolve_dimensions_parallel(t, req.dims, p);
    lap(&PhaseTimings::pre, clock::now());

    RowCounters rc = count_rows_parallel(t, dims, p, probes);
    lap(&PhaseTimings::part1, clock::now());
    RankArray rank = build_rank_parallel(t, rc, p, probes);
    lap(&PhaseTimings::part2, clock::now());
    clock::time_point part3_done{};
    ParallelPlan plan = compress_and_accumulate_parallel(t, std::move(rank), std::move(rc), dims,
                                                         p, probes, timings ? &part3_done : nullptr);
    if (timings) {
        lap(&PhaseTimings::part3, part3_done);
        lap(&PhaseTimings::part4, clock::now());
    }
    CscMatrix out = scatter_rows(std::move(plan), t, req.capacity_hint.value_or(0));
    lap(&PhaseTimings::post, clock::now());
    return out;
}

}  // namespace sparse_asm::detail
