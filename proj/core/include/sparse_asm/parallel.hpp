#pragma once

#include <span>

#include "sparse_asm/core.hpp"
#include "sparse_asm/serial.hpp"
#include "sparse_asm/types.hpp"

namespace sparse_asm {

/// Half-open index range owned by one worker.
struct Range {
    index_t begin = 0;
    index_t end = 0;

    index_t size() const noexcept { return end - begin; }
    bool empty() const noexcept { return end <= begin; }
};

/// Static work split for p workers. Elements of worker k are
/// [L*k/p, L*(k+1)/p); its rows are [1 + M*k/p, M*(k+1)/p] (returned here
/// half-open as [1 + M*k/p, M*(k+1)/p + 1)). Products are formed in 64 bits.
struct WorkerPartition {
    index_t len = 0;
    index_t rows = 0;
    int workers = 1;

    Range elements(int k) const noexcept;
    Range row_range(int k) const noexcept;
};

/// Block of [0, n) assigned to worker k of p.
Range block_range(index_t n, int k, int p) noexcept;

/// Per-worker row counters: p+1 arrays of length M+1, entry r-1 belonging
/// to unit-offset row r.
///
/// After count_rows_parallel, worker(k)[r-1] is the first slot worker k may
/// fill in row r (k < p), and worker(p) holds the per-row totals. After
/// build_rank_parallel, worker(p-1)[r-1] is the end slot of row r, the
/// same value as the serial RowCounter after Part 2.
struct RowCounters {
    index_t M = 0;
    int p = 1;
    Buffer<index_t> data;

    std::span<index_t> worker(int k) {
        return {data.data() + std::size_t(k) * (std::size_t(M) + 1), std::size_t(M) + 1};
    }
    std::span<const index_t> worker(int k) const {
        return {data.data() + std::size_t(k) * (std::size_t(M) + 1), std::size_t(M) + 1};
    }
    /// Valid after build_rank_parallel.
    index_t row_end(index_t row) const { return worker(p - 1)[std::size_t(row) - 1]; }
};

/// Intermediate result of the parallel algorithm. irankP is indexed by rank
/// position: irankP[k] is the output slot of input element rank[k], so
/// irankP[k] == irank[rank[k]] for the serial irank. jc is final.
struct ParallelPlan {
    int p = 1;
    Dimensions dims;
    RankArray rank;
    Buffer<index_t> irankP;
    RowCounters counters;
    Buffer<index_t> jc;

    index_t nnz() const { return jc.empty() ? 0 : jc.back(); }
};

/// Parallel index conversion with a max-reduction. Same result and the same
/// error class as convert_indices for every p.
IndexConversion find_max_parallel(std::span<const double> raw, int p);

/// Part 1, in three barrier-separated phases: per-worker histograms, sum
/// over workers, then a serial prefix over rows that seeds each worker's
/// private starting offsets.
RowCounters count_rows_parallel(const TripletList& t, Dimensions dims, int p);

/// Part 2: each worker ranks its element range through its own counter. The
/// result equals the serial rank. Advances counters.
RankArray build_rank_parallel(const TripletList& t, RowCounters& counters, int p);

/// Parts 3 and 4 over row-partitioned workers. Private column counters are
/// merged with the same scheme as the rows and released before returning.
ParallelPlan compress_and_accumulate_parallel(const TripletList& t, RankArray&& rank,
                                              RowCounters&& counters, Dimensions dims, int p);

/// ir[irankP[k]] = ii[rank[k]]-1 and pr[irankP[k]] += sr[rank[k]], each
/// worker over its own rows. Bit-identical to scatter_serial.
CscMatrix scatter_parallel(ParallelPlan&& plan, const TripletList& t, index_t capacity_hint = 0);

/// Full parallel assembly with exactly p workers (p >= 1). Output is
/// bit-identical to assemble_serial for every p.
CscMatrix assemble_parallel(const AssemblyRequest& req, int p, PhaseTimings* timings = nullptr);

struct AssembleOptions {
    /// 0 selects std::thread::hardware_concurrency().
    int threads = 0;
    bool force_serial = false;
    /// Inputs shorter than this take the serial path.
    index_t serial_threshold = 10'000;
};

int resolve_thread_count(int requested) noexcept;

/// Dispatches to assemble_parallel or assemble_serial per options.
CscMatrix assemble(const AssemblyRequest& req, const AssembleOptions& options = {},
                   PhaseTimings* timings = nullptr);

}  // namespace sparse_asm
