#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sparse_asm/io.hpp"
#include "sparse_asm/types.hpp"

namespace sparse_asm {

/// Parameters of the random benchmark generator.
struct DatasetSpec {
    index_t siz = 0;      // matrix dimension (square)
    index_t nnz_row = 0;  // column draws per row
    index_t nrep = 1;     // times the whole pattern is repeated
    std::uint64_t seed = 1;

    std::int64_t length() const noexcept { return std::int64_t(siz) * nnz_row * nrep; }
};

/// Rows 1..siz laid out nnz_row times, each slot paired with a uniform
/// column in [1, siz]; that block repeated nrep times, then the combined
/// arrays shuffled by one random permutation. All values are 1.0.
/// Deterministic per seed. Throws InvalidArgument for non-positive
/// parameters or L beyond the index range.
TripletList gen_ransparse(const DatasetSpec& spec);

/// The three standard data sets, each with L = 2,500,000 at scale 1:
///   1: siz 10,000, nnz_row 50, nrep 5
///   2: siz 50,000, nnz_row 50, nrep 1
///   3: siz 50,000, nnz_row 10, nrep 5
/// scale in (0, 1] multiplies siz (rounded). Throws UnknownDataset.
DatasetSpec dataset_config(int id, double scale = 1.0, std::uint64_t seed = 1);

/// Expected distinct entries siz^2 (1 - (1 - 1/siz)^nnz_row).
double expected_nnz(index_t siz, index_t nnz_row);

enum class ImplKind { serial, parallel, oracle };

struct Impl {
    ImplKind kind = ImplKind::serial;
    int threads = 1;

    std::string name() const;
};

struct BenchOutcome {
    BenchRecord record;
    PhaseTimings mean_phases;  // zero for the oracle
};

/// Times each implementation: one untimed warm-up run whose output is
/// cross-checked bit-for-bit against the first implementation's (throws
/// ResultMismatch on disagreement, before any timing), then `reps` timed
/// runs. speedup_vs_serial is the serial mean over this mean when a serial
/// implementation is in the set, else 0.
std::vector<BenchOutcome> run_bench(const DatasetSpec& spec, std::span<const Impl> impls,
                                    int reps, int dataset_id = 0);

/// Same, on an already generated triplet list.
std::vector<BenchOutcome> run_bench(const TripletList& triplets, std::span<const Impl> impls,
                                    int reps, int dataset_id = 0);

struct StreamCopyResult {
    double serial_seconds = 0;
    double parallel_seconds = 0;
    double speedup = 0;
    bool verified = false;  // destination equals source after the runs
};

/// Best-of-reps time of a[j] = b[j] over n doubles on one worker and on p
/// workers.
StreamCopyResult stream_copy_bandwidth(std::size_t n, int p, int reps = 5);

}  // namespace sparse_asm
