#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sparse_asm/cost.hpp"
#include "sparse_asm/types.hpp"

namespace sparse_asm {

inline constexpr std::string_view matrix_market_banner =
    "%%MatrixMarket matrix coordinate real general";

struct TripletFile {
    TripletList triplets;
    Dimensions dims;
};

/// Parses a MatrixMarket "coordinate real general" body. Indices stay
/// unit-offset, duplicates are kept, and the size line becomes the
/// dimensions. "integer" and "pattern" fields are accepted (pattern entries
/// get value 1). Throws ParseError (with line number), BadIndex, or
/// DimensionTooSmall for an entry outside the size line.
TripletFile parse_triplets_matrixmarket(std::string_view text);
TripletFile read_triplets_matrixmarket(const std::filesystem::path& path);

/// Triplets in input order, values with 17 significant digits.
void write_triplets_matrixmarket(std::ostream& os, const TripletList& t, Dimensions dims);
void write_triplets_matrixmarket(const std::filesystem::path& path, const TripletList& t,
                                 Dimensions dims);

/// Entries in column-major, row-ascending order, 1-based.
void write_csc_matrixmarket(std::ostream& os, const CscMatrix& m);
void write_csc_matrixmarket(const std::filesystem::path& path, const CscMatrix& m);

/// One row of the benchmark CSV.
struct BenchRecord {
    int dataset_id = 0;
    std::string impl;
    int threads = 1;
    double mean_seconds = 0;
    double min_seconds = 0;
    int reps = 0;
    index_t L = 0, M = 0, N = 0, nnz = 0;
    double speedup_vs_serial = 0;
};

inline constexpr std::string_view bench_csv_header =
    "dataset_id,impl,threads,mean_seconds,min_seconds,reps,L,M,N,nnz,speedup_vs_serial";

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> rows);
void write_bench_csv(const std::filesystem::path& path, std::span<const BenchRecord> rows);

/// A measured or predicted CostReport tagged with its run.
struct CostRecord {
    int dataset_id = 0;
    std::string impl;
    int threads = 1;
    std::string source;  // "measured" or "predicted"
    CostReport report;
};

inline constexpr std::string_view cost_csv_header =
    "dataset_id,impl,threads,source,phase,total_accesses,indirect_accesses,indirect_L_accesses,"
    "words";

/// One row per phase, one "total" row (words = peak_aux_words), and one
/// "alloc:<name>" row per allocation candidate.
void write_cost_csv(std::ostream& os, std::span<const CostRecord> rows);
void write_cost_csv(const std::filesystem::path& path, std::span<const CostRecord> rows);

}  // namespace sparse_asm
