#pragma once

#include <algorithm>
#include <chrono>
#include <utility>

#include "probe.hpp"
#include "sparse_asm/core.hpp"
#include "sparse_asm/serial.hpp"

namespace sparse_asm::detail {

// Input indices are unit-offset. Arrays the original routine addressed
// through decremented base pointers (jr after Part 2, hcol, jc in Part 4)
// are addressed here with an explicit -1.

template <class Probe>
RowCounter count_rows(const TripletList& t, Dimensions dims, Probe& probe) {
    probe.phase(0);
    const index_t len = t.size();
    const index_t M = dims.M;
    const index_t* ii = t.ii.data();

    RowCounter rc;
    rc.jr.assign(std::size_t(M) + 1, 0);
    index_t* jr = rc.jr.data();

    for (index_t i = 0; i < len; ++i) {
        ++jr[ii[i]];
        probe.direct();
        probe.indirect();
    }
    for (index_t r = 2; r <= M; ++r) {
        jr[r] += jr[r - 1];
        probe.direct(2);
    }
    return rc;
}

template <class Probe>
RankArray build_rank(const TripletList& t, RowCounter& rc, Probe& probe) {
    probe.phase(1);
    const index_t len = t.size();
    const index_t* ii = t.ii.data();

    RankArray ra;
    ra.rank.resize(std::size_t(len));
    index_t* rank = ra.rank.data();
    index_t* jr = rc.jr.data();

    for (index_t i = 0; i < len; ++i) {
        rank[jr[ii[i] - 1]++] = i;
        probe.direct();
        probe.indirect();
        probe.indirect_l();
    }
    return ra;
}

template <class Probe>
SerialPlan compress_columns(const TripletList& t, RowCounter&& rc, RankArray&& ra,
                            Dimensions dims, Probe& probe) {
    probe.phase(2);
    const index_t len = t.size();
    const index_t M = dims.M, N = dims.N;
    const index_t* jj = t.jj.data();

    SerialPlan plan;
    plan.jc.assign(std::size_t(N) + 1, 0);
    Buffer<index_t> hcol(std::size_t(N), 0);  // last row seen per column; 0 = none
    plan.irank.resize(std::size_t(len));

    index_t* jc = plan.jc.data();
    index_t* irank = plan.irank.data();
    const index_t* rank = ra.rank.data();
    const index_t* jr = rc.jr.data();

    index_t i = 0;
    for (index_t row = 1; row <= M; ++row) {
        const index_t row_end = jr[row - 1];
        probe.direct();
        for (; i < row_end; ++i) {
            const index_t ixijs = rank[i];
            const index_t col = jj[ixijs];
            if (hcol[col - 1] < row) {
                hcol[col - 1] = row;
                ++jc[col];
            }
            irank[ixijs] = jc[col] - 1;
            probe.direct();        // rank[i]
            probe.indirect_l();    // jj[ixijs]
            probe.indirect(2);     // hcol[col], jc[col]
            probe.indirect_l();    // irank[ixijs]
        }
    }

    Buffer<index_t>().swap(hcol);
    Buffer<index_t>().swap(ra.rank);
    Buffer<index_t>().swap(rc.jr);
    return plan;
}

template <class Probe>
SerialPlan accumulate_columns(SerialPlan&& plan, const TripletList& t, Probe& probe) {
    probe.phase(3);
    const index_t len = t.size();
    const auto N = static_cast<index_t>(plan.jc.size()) - 1;
    const index_t* jj = t.jj.data();
    index_t* jc = plan.jc.data();
    index_t* irank = plan.irank.data();

    for (index_t c = 2; c <= N; ++c) {
        jc[c] += jc[c - 1];
        probe.direct(2);
    }
    for (index_t i = 0; i < len; ++i) {
        irank[i] += jc[jj[i] - 1];
        probe.direct(2);
        probe.indirect();
    }
    plan.nnz = jc[N];
    return std::move(plan);
}

inline CscMatrix scatter(SerialPlan&& plan, const TripletList& t, Dimensions dims,
                         index_t capacity_hint) {
    const index_t len = t.size();
    const index_t nnz = plan.nnz;

    CscMatrix out;
    out.dims = dims;
    if (capacity_hint > nnz) {
        out.ir.reserve(std::size_t(capacity_hint));
        out.pr.reserve(std::size_t(capacity_hint));
    }
    out.ir.resize(std::size_t(nnz));
    out.pr.assign(std::size_t(nnz), 0.0);
    out.jc = std::move(plan.jc);

    const index_t* irank = plan.irank.data();
    const index_t* ii = t.ii.data();
    index_t* ir = out.ir.data();
    double* pr = out.pr.data();

    if (t.sr.size() == std::size_t(len)) {
        const double* sr = t.sr.data();
        for (index_t i = 0; i < len; ++i) {
            ir[irank[i]] = ii[i] - 1;
            pr[irank[i]] += sr[i];
        }
    } else {
        const double s = t.sr.empty() ? 0.0 : t.sr[0];
        for (index_t i = 0; i < len; ++i) {
            ir[irank[i]] = ii[i] - 1;
            pr[irank[i]] += s;
        }
    }
    Buffer<index_t>().swap(plan.irank);
    return out;
}

template <class Probe>
CscMatrix assemble_serial(const AssemblyRequest& req, PhaseTimings* timings, Probe& probe) {
    using clock = std::chrono::steady_clock;
    auto mark = clock::now();
    auto lap = [&](double PhaseTimings::*field) {
        if (!timings) return;
        const auto now = clock::now();
        timings->*field += std::chrono::duration<double>(now - mark).count();
        mark = now;
    };

    const TripletList& t = req.triplets;
    const Dimensions dims = resolve_dimensions(t, req.dims);
    lap(&PhaseTimings::pre);

    RowCounter rc = count_rows(t, dims, probe);
    lap(&PhaseTimings::part1);
    RankArray rank = build_rank(t, rc, probe);
    lap(&PhaseTimings::part2);
    SerialPlan plan = compress_columns(t, std::move(rc), std::move(rank), dims, probe);
    lap(&PhaseTimings::part3);
    plan = accumulate_columns(std::move(plan), t, probe);
    lap(&PhaseTimings::part4);
    CscMatrix out = scatter(std::move(plan), t, dims, req.capacity_hint.value_or(0));
    lap(&PhaseTimings::post);
    return out;
}

}  // namespace sparse_asm::detail
