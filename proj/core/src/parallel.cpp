#include "sparse_asm/parallel.hpp"

#include <algorithm>
#include <limits>

#include "parallel_kernels.hpp"

namespace sparse_asm {

Range block_range(index_t n, int k, int p) noexcept {
    const auto lo = std::int64_t(n) * k / p;
    const auto hi = std::int64_t(n) * (k + 1) / p;
    return {static_cast<index_t>(lo), static_cast<index_t>(hi)};
}

Range WorkerPartition::elements(int k) const noexcept { return block_range(len, k, workers); }

Range WorkerPartition::row_range(int k) const noexcept {
    const Range r = block_range(rows, k, workers);
    return {r.begin + 1, r.end + 1};
}

namespace {

constexpr std::int64_t no_error = std::numeric_limits<std::int64_t>::max();

void check_workers(int p) {
    if (p < 1) throw Error(ErrorCode::invalid_argument, "worker count must be >= 1");
}

// Minimum over workers of the first offending position, merged like the
// maximum: each worker keeps a local value and only publishes improvements.
struct Reduction {
    std::atomic<index_t> max{0};
    std::atomic<std::int64_t> first_bad{no_error};
    std::mutex mutex;

    void merge(index_t local_max, std::int64_t local_bad) {
        if (max.load(std::memory_order_relaxed) < local_max ||
            first_bad.load(std::memory_order_relaxed) > local_bad) {
            std::lock_guard lock(mutex);
            if (max.load(std::memory_order_relaxed) < local_max)
                max.store(local_max, std::memory_order_relaxed);
            if (first_bad.load(std::memory_order_relaxed) > local_bad)
                first_bad.store(local_bad, std::memory_order_relaxed);
        }
    }
};

}  // namespace

IndexConversion find_max_parallel(std::span<const double> raw, int p) {
    check_workers(p);
    if (raw.size() > std::size_t(max_index))
        throw Error(ErrorCode::length_mismatch, "more than 2^31-1 triplets");
    const auto len = static_cast<index_t>(raw.size());

    IndexConversion out;
    out.indices.resize(raw.size());
    Reduction red;

    detail::parallel_region(p, [&](int k, detail::Sync&) {
        const Range elems = block_range(len, k, p);
        index_t local_max = 0;
        std::int64_t local_bad = no_error;
        for (index_t i = elems.begin; i < elems.end; ++i) {
            const double v = raw[std::size_t(i)];
            if (v < 1.0 || v != std::ceil(v) || v > double(max_index)) {
                if (local_bad == no_error) local_bad = i;  // keep scanning
                continue;
            }
            const auto idx = static_cast<index_t>(v);
            out.indices[std::size_t(i)] = idx;
            if (idx > local_max) local_max = idx;
        }
        red.merge(local_max, local_bad);
    });

    if (const auto bad = red.first_bad.load(); bad != no_error) {
        std::ostringstream os;
        os << "index " << raw[std::size_t(bad)] << " at position " << bad;
        throw Error(ErrorCode::bad_index, os.str());
    }
    out.max = red.max.load();
    return out;
}

namespace detail {

Dimensions resolve_dimensions_parallel(const TripletList& t, const std::optional<Dimensions>& dims,
                                       int p) {
    const std::size_t len = t.ii.size();
    if (t.jj.size() != len)
        throw Error(ErrorCode::length_mismatch, "ii and jj differ in length");
    if (t.sr.size() != len && t.sr.size() != 1)
        throw Error(ErrorCode::length_mismatch, "sr length must equal L or 1");
    if (len > std::size_t(max_index))
        throw Error(ErrorCode::length_mismatch, "more than 2^31-1 triplets");
    if (dims && (dims->M < 0 || dims->N < 0))
        throw Error(ErrorCode::invalid_argument, "negative dimensions");

    Reduction rows, cols;
    detail::parallel_region(p, [&](int k, detail::Sync&) {
        const Range elems = block_range(static_cast<index_t>(len), k, p);
        index_t max_i = 0, max_j = 0;
        std::int64_t bad = no_error;
        for (index_t i = elems.begin; i < elems.end; ++i) {
            const index_t r = t.ii[std::size_t(i)], c = t.jj[std::size_t(i)];
            if ((r < 1 || c < 1) && bad == no_error) bad = i;
            max_i = std::max(max_i, r);
            max_j = std::max(max_j, c);
        }
        rows.merge(max_i, bad);
        cols.merge(max_j, no_error);
    });

    if (const auto bad = rows.first_bad.load(); bad != no_error) {
        const auto i = t.ii[std::size_t(bad)];
        std::ostringstream os;
        os << "index " << (i < 1 ? i : t.jj[std::size_t(bad)]) << " at position " << bad;
        throw Error(ErrorCode::bad_index, os.str());
    }
    const index_t max_i = rows.max.load(), max_j = cols.max.load();
    if (!dims) return Dimensions{max_i, max_j};
    if (max_i > dims->M || max_j > dims->N) {
        std::ostringstream os;
        os << "indices reach (" << max_i << ", " << max_j << ") but dimensions are " << dims->M
           << "x" << dims->N;
        throw Error(ErrorCode::dimension_too_small, os.str());
    }
    return *dims;
}

}  // namespace detail

RowCounters count_rows_parallel(const TripletList& t, Dimensions dims, int p) {
    check_workers(p);
    std::vector<detail::NullProbe> probes(static_cast<std::size_t>(p));
    return detail::count_rows_parallel(t, dims, p, std::span(probes));
}

RankArray build_rank_parallel(const TripletList& t, RowCounters& counters, int p) {
    check_workers(p);
    std::vector<detail::NullProbe> probes(static_cast<std::size_t>(p));
    return detail::build_rank_parallel(t, counters, p, std::span(probes));
}

ParallelPlan compress_and_accumulate_parallel(const TripletList& t, RankArray&& rank,
                                              RowCounters&& counters, Dimensions dims, int p) {
    check_workers(p);
    std::vector<detail::NullProbe> probes(static_cast<std::size_t>(p));
    return detail::compress_and_accumulate_parallel(t, std::move(rank), std::move(counters), dims,
                                                    p, std::span(probes), nullptr);
}

CscMatrix scatter_parallel(ParallelPlan&& plan, const TripletList& t, index_t capacity_hint) {
    return detail::scatter_rows(std::move(plan), t, capacity_hint);
}

CscMatrix assemble_parallel(const AssemblyRequest& req, int p, PhaseTimings* timings) {
    check_workers(p);
    std::vector<detail::NullProbe> probes(static_cast<std::size_t>(p));
    return detail::assemble_parallel(req, p, timings, std::span(probes));
}

int resolve_thread_count(int requested) noexcept {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

CscMatrix assemble(const AssemblyRequest& req, const AssembleOptions& options,
                   PhaseTimings* timings) {
    const int p = resolve_thread_count(options.threads);
    if (options.force_serial || p == 1 || req.triplets.size() < options.serial_threshold)
        return assemble_serial(req, timings);
    return assemble_parallel(req, p, timings);
}

}  // namespace sparse_asm
