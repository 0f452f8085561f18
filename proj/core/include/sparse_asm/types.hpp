#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparse_asm/memory.hpp"

namespace sparse_asm {

/// Index and counter type. Element count L, nnz and the dimensions are all
/// limited to the non-negative range of a signed 32-bit integer.
using index_t = std::int32_t;
inline constexpr index_t max_index = std::numeric_limits<index_t>::max();

enum class ErrorCode {
    bad_index,
    length_mismatch,
    dimension_too_small,
    parse_error,
    io_error,
    unknown_dataset,
    result_mismatch,
    instrumentation_unavailable,
    invalid_argument,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct Dimensions {
    index_t M = 0;  // rows
    index_t N = 0;  // columns

    friend bool operator==(const Dimensions&, const Dimensions&) = default;
};

/// Raw coordinate input. Indices are unit-offset and unordered; repeated
/// (row, column) pairs are summed on assembly.
struct TripletList {
    std::vector<index_t> ii;
    std::vector<index_t> jj;
    std::vector<double> sr;

    index_t size() const noexcept { return static_cast<index_t>(ii.size()); }
    bool empty() const noexcept { return ii.empty(); }
};

/// Column-compressed matrix with 0-based jc/ir.
struct CscMatrix {
    Dimensions dims;
    Buffer<index_t> jc;  // length N+1
    Buffer<index_t> ir;  // length nnz
    Buffer<double> pr;   // length nnz

    index_t rows() const noexcept { return dims.M; }
    index_t cols() const noexcept { return dims.N; }
    index_t nnz() const noexcept { return static_cast<index_t>(ir.size()); }
};

struct AssemblyRequest {
    TripletList triplets;
    std::optional<Dimensions> dims;
    /// nzmax; reserves capacity in ir/pr and never changes the result.
    std::optional<index_t> capacity_hint;

    /// A single value applied to every (i, j) pair.
    bool broadcast_value() const noexcept {
        return triplets.sr.size() == 1 && triplets.ii.size() != 1;
    }
};

/// Wall-clock seconds per stage: index pre-processing, Parts 1-4 of the
/// counting algorithm, and the final scatter.
struct PhaseTimings {
    double pre = 0, part1 = 0, part2 = 0, part3 = 0, part4 = 0, post = 0;

    double total() const noexcept { return pre + part1 + part2 + part3 + part4 + post; }
    PhaseTimings& operator+=(const PhaseTimings& o) noexcept {
        pre += o.pre; part1 += o.part1; part2 += o.part2;
        part3 += o.part3; part4 += o.part4; post += o.post;
        return *this;
    }
};

/// Bitwise comparison of two matrices; NaN payloads and signed zeros must
/// match too.
bool bit_identical(const CscMatrix& a, const CscMatrix& b) noexcept;

/// Human-readable location of the first difference, or nullopt when
/// bit_identical(a, b).
std::optional<std::string> first_difference(const CscMatrix& a, const CscMatrix& b);

}  // namespace sparse_asm
