#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sparse_asm/types.hpp"

namespace sparse_asm {

struct PhaseCost {
    std::string name;
    std::int64_t total_accesses = 0;
    std::int64_t indirect_accesses = 0;
    std::int64_t indirect_L_accesses = 0;
};

/// A point in the algorithm where live memory may peak, in 32-bit words
/// (one double counts as two words).
struct AllocationCandidate {
    std::string name;
    std::int64_t words = 0;
};

/// Memory-access and allocation figures for one assembly, either predicted
/// in closed form or measured on an instrumented run.
///
/// Access totals cover Parts 1-4 and equal the sums over `phases`. For
/// measured reports peak_aux_words is the tracked high-water mark of all
/// working and output buffers; for predicted ones it is the largest
/// allocation candidate.
struct CostReport {
    std::int64_t total_accesses = 0;
    std::int64_t indirect_accesses = 0;
    std::int64_t indirect_L_accesses = 0;
    std::int64_t peak_aux_words = 0;
    std::vector<PhaseCost> phases;
    std::vector<AllocationCandidate> allocation_candidates;

    const AllocationCandidate* candidate(const std::string& name) const;
};

/// Serial access table (13L + 2M + N in total, 8L indirect, 3L indirect
/// into length-L arrays) and the two allocation peaks
///   S1 = 2N + 1 + M + 1 + 2L   (Part 3 working set)
///   S2 = N + 1 + 3 nnz + L     (output plus irank).
CostReport predict_serial_cost(std::int64_t L, std::int64_t M, std::int64_t N, std::int64_t nnz);

/// Parallel access table (14L + 3(M+N)p + M, 8L indirect, 4L into length-L
/// arrays) and allocation peaks
///   S3 = N + 1 + (M+1)(p+1) + 3 nnz + 2L             (output allocated)
///   compress = 2L + (M+1)(p+1) + (N+1)(p+1) + pN     (Part 3 working set).
CostReport predict_parallel_cost(std::int64_t L, std::int64_t M, std::int64_t N,
                                 std::int64_t nnz, std::int64_t p);

/// True when the library was built with the counting kernels.
bool instrumentation_available() noexcept;

/// Runs the serial algorithm with access counting and allocation tracking.
/// Throws InstrumentationUnavailable in builds without instrumentation.
CostReport measure_serial_cost(const AssemblyRequest& req);

/// Same for the parallel algorithm with p workers; per-worker counters are
/// merged after each parallel region.
CostReport measure_parallel_cost(const AssemblyRequest& req, int p);

}  // namespace sparse_asm
