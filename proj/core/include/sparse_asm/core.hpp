#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sparse_asm/types.hpp"

namespace sparse_asm {

/// Integer indices converted from a real-valued array, plus their maximum.
struct IndexConversion {
    std::vector<index_t> indices;
    index_t max = 0;
};

/// Converts one real index array to unit-offset integers. Throws BadIndex for
/// values below 1, non-integral values, NaN, and values beyond max_index.
IndexConversion convert_indices(std::span<const double> raw);

/// Converts the user-facing real arrays into a TripletList with inferred
/// dimensions M = max(i), N = max(j). A length-1 value array is broadcast.
std::pair<TripletList, Dimensions> validate_and_convert(std::span<const double> raw_i,
                                                        std::span<const double> raw_j,
                                                        std::span<const double> raw_s);

/// Checks the TripletList invariants and resolves the matrix dimensions: the
/// explicit ones when given (DimensionTooSmall if an index exceeds them),
/// otherwise the index maxima. A length-1 value array is accepted.
Dimensions resolve_dimensions(const TripletList& t, const std::optional<Dimensions>& dims);

/// Copy of t with a length-1 value array expanded to length L.
TripletList expand_broadcast(const TripletList& t);

struct Violation {
    std::string invariant;
    std::string location;
};

/// Every violated CscMatrix invariant; empty iff the matrix is well formed.
std::vector<Violation> csc_validate(const CscMatrix& m);

/// Removes stored entries equal to 0.0 (either sign) and recompacts jc.
CscMatrix prune_explicit_zeros(const CscMatrix& m);

}  // namespace sparse_asm
