#pragma once

#include "sparse_asm/types.hpp"

namespace sparse_asm {

/// Row histogram turned into a row pointer.
///
/// After count_rows, jr has length M+1 with jr[0] = 0 and jr[r] the number
/// of elements whose row is <= r. build_rank advances it in place so that
/// jr[r-1] becomes the end slot of row r; row_end() reads that form.
struct RowCounter {
    Buffer<index_t> jr;

    index_t row_end(index_t row) const { return jr[row - 1]; }
};

/// Stable row-sort permutation: rank[k] is the input position of the k-th
/// element in row order.
struct RankArray {
    Buffer<index_t> rank;
};

/// Intermediate result of the serial algorithm. After accumulate_columns,
/// irank[i] is the output slot of input element i and jc is the final
/// column pointer; before it, irank holds within-column slots and jc[c]
/// the unique-row count of (1-based) column c.
struct SerialPlan {
    Buffer<index_t> irank;
    Buffer<index_t> jc;
    index_t nnz = 0;
};

/// Part 1. Collisions are not detected here, so row counts are upper bounds.
RowCounter count_rows(const TripletList& t, Dimensions dims);

/// Part 2. Advances rc (see RowCounter).
RankArray build_rank(const TripletList& t, RowCounter& rc);

/// Part 3: row-ordered sweep that detects unique (row, column) pairs with a
/// per-column cache of the last row seen. Releases rc and rank.
SerialPlan compress_columns(const TripletList& t, RowCounter&& rc, RankArray&& rank,
                            Dimensions dims);

/// Part 4: prefix-sums jc and shifts irank by its column start.
SerialPlan accumulate_columns(SerialPlan&& plan, const TripletList& t);

/// ir[irank[i]] = ii[i]-1 and pr[irank[i]] += sr[i] for ascending i; this
/// order is the summation order for duplicates. sr may have length 1.
CscMatrix scatter_serial(SerialPlan&& plan, const TripletList& t, Dimensions dims,
                         index_t capacity_hint = 0);

/// Full serial assembly. Throws BadIndex, LengthMismatch or DimensionTooSmall.
CscMatrix assemble_serial(const AssemblyRequest& req, PhaseTimings* timings = nullptr);

}  // namespace sparse_asm
