#include "sparse_asm/cost.hpp"

#include <algorithm>

#ifdef SPARSE_ASM_INSTRUMENTATION
#include "parallel_kernels.hpp"
#include "serial_kernels.hpp"
#endif

namespace sparse_asm {

namespace {

void sum_phases(CostReport& r) {
    r.total_accesses = r.indirect_accesses = r.indirect_L_accesses = 0;
    for (const auto& ph : r.phases) {
        r.total_accesses += ph.total_accesses;
        r.indirect_accesses += ph.indirect_accesses;
        r.indirect_L_accesses += ph.indirect_L_accesses;
    }
}

void finish_prediction(CostReport& r) {
    sum_phases(r);
    for (const auto& c : r.allocation_candidates)
        r.peak_aux_words = std::max(r.peak_aux_words, c.words);
}

}  // namespace

const AllocationCandidate* CostReport::candidate(const std::string& name) const {
    for (const auto& c : allocation_candidates)
        if (c.name == name) return &c;
    return nullptr;
}

CostReport predict_serial_cost(std::int64_t L, std::int64_t M, std::int64_t N, std::int64_t nnz) {
    CostReport r;
    r.phases = {
        {"part1", 2 * L + M, L, 0},
        {"part2", 3 * L, 2 * L, L},
        {"part3", 5 * L + M, 4 * L, 2 * L},
        {"part4", 3 * L + N, L, 0},
    };
    r.allocation_candidates = {
        {"S1", 2 * N + 1 + M + 1 + 2 * L},
        {"S2", N + 1 + 3 * nnz + L},
    };
    finish_prediction(r);
    return r;
}

CostReport predict_parallel_cost(std::int64_t L, std::int64_t M, std::int64_t N,
                                 std::int64_t nnz, std::int64_t p) {
    CostReport r;
    r.phases = {
        {"part1", 2 * L + 3 * M * p, L, 0},
        {"part2", 3 * L, 2 * L, L},
        {"part3", 5 * L + M, 3 * L, 2 * L},
        {"part4", 4 * L + 3 * N * p, 2 * L, L},
    };
    r.allocation_candidates = {
        {"S3", N + 1 + (M + 1) * (p + 1) + 3 * nnz + 2 * L},
        {"compress", 2 * L + (M + 1) * (p + 1) + (N + 1) * (p + 1) + p * N},
    };
    finish_prediction(r);
    return r;
}

#ifdef SPARSE_ASM_INSTRUMENTATION

bool instrumentation_available() noexcept { return true; }

namespace {

constexpr const char* part_names[4] = {"part1", "part2", "part3", "part4"};

CostReport from_probe(const detail::CountingProbe& probe, std::int64_t peak_bytes) {
    CostReport r;
    for (std::size_t k = 0; k < probe.parts.size(); ++k) {
        const auto& c = probe.parts[k];
        r.phases.push_back({part_names[k], c.total, c.indirect, c.indirect_l});
    }
    sum_phases(r);
    r.peak_aux_words = peak_bytes / std::int64_t(sizeof(index_t));
    return r;
}

}  // namespace

CostReport measure_serial_cost(const AssemblyRequest& req) {
    detail::CountingProbe probe;
    std::int64_t peak = 0;
    {
        MemoryScope scope;
        CscMatrix m = detail::assemble_serial(req, nullptr, probe);
        peak = scope.peak_bytes();
    }
    return from_probe(probe, peak);
}

CostReport measure_parallel_cost(const AssemblyRequest& req, int p) {
    if (p < 1) throw Error(ErrorCode::invalid_argument, "worker count must be >= 1");
    std::vector<detail::CountingProbe> probes(static_cast<std::size_t>(p));
    std::int64_t peak = 0;
    {
        MemoryScope scope;
        CscMatrix m = detail::assemble_parallel(req, p, nullptr, std::span(probes));
        peak = scope.peak_bytes();
    }
    detail::CountingProbe merged;
    for (const auto& pr : probes) merged += pr;
    return from_probe(merged, peak);
}

#else

bool instrumentation_available() noexcept { return false; }

CostReport measure_serial_cost(const AssemblyRequest&) {
    throw Error(ErrorCode::instrumentation_unavailable,
                "library built with SPARSE_ASM_INSTRUMENTATION=OFF");
}

CostReport measure_parallel_cost(const AssemblyRequest&, int) {
    throw Error(ErrorCode::instrumentation_unavailable,
                "library built with SPARSE_ASM_INSTRUMENTATION=OFF");
}

#endif

}  // namespace sparse_asm
