#include "sparse_asm/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <sstream>

namespace sparse_asm {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::bad_index: return "BadIndex";
        case ErrorCode::length_mismatch: return "LengthMismatch";
        case ErrorCode::dimension_too_small: return "DimensionTooSmall";
        case ErrorCode::parse_error: return "ParseError";
        case ErrorCode::io_error: return "IoError";
        case ErrorCode::unknown_dataset: return "UnknownDataset";
        case ErrorCode::result_mismatch: return "ResultMismatch";
        case ErrorCode::instrumentation_unavailable: return "InstrumentationUnavailable";
        case ErrorCode::invalid_argument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

bool same_bits(double a, double b) noexcept {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

template <class A, class B>
bool equal_ints(const A& a, const B& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

std::string describe_index(std::size_t k, double v) {
    std::ostringstream os;
    os << "index " << v << " at position " << k;
    return os.str();
}

}  // namespace

bool bit_identical(const CscMatrix& a, const CscMatrix& b) noexcept {
    if (!(a.dims == b.dims) || !equal_ints(a.jc, b.jc) || !equal_ints(a.ir, b.ir) ||
        a.pr.size() != b.pr.size())
        return false;
    for (std::size_t k = 0; k < a.pr.size(); ++k)
        if (!same_bits(a.pr[k], b.pr[k])) return false;
    return true;
}

std::optional<std::string> first_difference(const CscMatrix& a, const CscMatrix& b) {
    std::ostringstream os;
    if (!(a.dims == b.dims)) {
        os << "dims " << a.dims.M << "x" << a.dims.N << " vs " << b.dims.M << "x" << b.dims.N;
        return os.str();
    }
    if (a.jc.size() != b.jc.size()) {
        os << "jc length " << a.jc.size() << " vs " << b.jc.size();
        return os.str();
    }
    for (std::size_t c = 0; c < a.jc.size(); ++c) {
        if (a.jc[c] != b.jc[c]) {
            os << "jc[" << c << "] " << a.jc[c] << " vs " << b.jc[c];
            return os.str();
        }
    }
    if (a.ir.size() != b.ir.size() || a.pr.size() != b.pr.size()) {
        os << "nnz " << a.ir.size() << " vs " << b.ir.size();
        return os.str();
    }
    for (std::size_t k = 0; k < a.ir.size(); ++k) {
        if (a.ir[k] != b.ir[k]) {
            os << "ir[" << k << "] " << a.ir[k] << " vs " << b.ir[k];
            return os.str();
        }
        if (!same_bits(a.pr[k], b.pr[k])) {
            os.precision(17);
            os << "pr[" << k << "] " << a.pr[k] << " vs " << b.pr[k];
            return os.str();
        }
    }
    return std::nullopt;
}

IndexConversion convert_indices(std::span<const double> raw) {
    IndexConversion out;
    out.indices.resize(raw.size());
    index_t max = 0;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        const double v = raw[k];
        // NaN fails the ceil comparison
        if (v < 1.0 || v != std::ceil(v) || v > double(max_index))
            throw Error(ErrorCode::bad_index, describe_index(k, v));
        const auto idx = static_cast<index_t>(v);
        out.indices[k] = idx;
        if (idx > max) max = idx;
    }
    out.max = max;
    return out;
}

std::pair<TripletList, Dimensions> validate_and_convert(std::span<const double> raw_i,
                                                        std::span<const double> raw_j,
                                                        std::span<const double> raw_s) {
    if (raw_i.size() != raw_j.size()) {
        throw Error(ErrorCode::length_mismatch, "row and column index arrays differ in length (" +
                                                    std::to_string(raw_i.size()) + " vs " +
                                                    std::to_string(raw_j.size()) + ")");
    }
    const std::size_t len = raw_i.size();
    if (raw_s.size() != len && raw_s.size() != 1) {
        throw Error(ErrorCode::length_mismatch, "value array has length " +
                                                    std::to_string(raw_s.size()) + ", expected " +
                                                    std::to_string(len) + " or 1");
    }
    if (len > std::size_t(max_index))
        throw Error(ErrorCode::length_mismatch, "more than 2^31-1 triplets");

    auto rows = convert_indices(raw_i);
    auto cols = convert_indices(raw_j);

    TripletList t;
    t.ii = std::move(rows.indices);
    t.jj = std::move(cols.indices);
    if (raw_s.size() == len)
        t.sr.assign(raw_s.begin(), raw_s.end());
    else
        t.sr.assign(len, raw_s[0]);
    return {std::move(t), Dimensions{rows.max, cols.max}};
}

Dimensions resolve_dimensions(const TripletList& t, const std::optional<Dimensions>& dims) {
    const std::size_t len = t.ii.size();
    if (t.jj.size() != len)
        throw Error(ErrorCode::length_mismatch, "ii and jj differ in length");
    if (t.sr.size() != len && t.sr.size() != 1)
        throw Error(ErrorCode::length_mismatch, "sr length must equal L or 1");
    if (len > std::size_t(max_index))
        throw Error(ErrorCode::length_mismatch, "more than 2^31-1 triplets");
    if (dims && (dims->M < 0 || dims->N < 0))
        throw Error(ErrorCode::invalid_argument, "negative dimensions");

    index_t max_i = 0, max_j = 0;
    for (std::size_t k = 0; k < len; ++k) {
        const index_t i = t.ii[k], j = t.jj[k];
        if (i < 1 || j < 1)
            throw Error(ErrorCode::bad_index, describe_index(k, i < 1 ? i : j));
        if (i > max_i) max_i = i;
        if (j > max_j) max_j = j;
    }
    if (!dims) return Dimensions{max_i, max_j};
    if (max_i > dims->M || max_j > dims->N) {
        std::ostringstream os;
        os << "indices reach (" << max_i << ", " << max_j << ") but dimensions are " << dims->M
           << "x" << dims->N;
        throw Error(ErrorCode::dimension_too_small, os.str());
    }
    return *dims;
}

TripletList expand_broadcast(const TripletList& t) {
    TripletList out{t.ii, t.jj, {}};
    out.sr.assign(t.ii.size(), t.sr.empty() ? 0.0 : t.sr[0]);
    return out;
}

std::vector<Violation> csc_validate(const CscMatrix& m) {
    std::vector<Violation> out;
    auto add = [&](const char* what, std::string where) {
        out.push_back({what, std::move(where)});
    };

    const index_t M = m.dims.M, N = m.dims.N;
    if (M < 0 || N < 0) add("non-negative dimensions", "dims");
    if (m.ir.size() != m.pr.size())
        add("ir and pr have equal length",
            "ir " + std::to_string(m.ir.size()) + ", pr " + std::to_string(m.pr.size()));
    if (N < 0 || m.jc.size() != std::size_t(N) + 1) {
        add("jc has length N+1", "jc length " + std::to_string(m.jc.size()));
        return out;
    }
    const auto nnz = static_cast<index_t>(m.ir.size());
    if (m.jc[0] != 0) add("jc[0] = 0", "jc[0] = " + std::to_string(m.jc[0]));
    if (m.jc[N] != nnz)
        add("jc[N] = nnz", "jc[N] = " + std::to_string(m.jc[N]) + ", nnz = " + std::to_string(nnz));

    bool monotone = true;
    for (index_t c = 0; c < N; ++c) {
        if (m.jc[c + 1] < m.jc[c]) {
            add("non-decreasing jc", "jc[" + std::to_string(c) + "] > jc[" + std::to_string(c + 1) + "]");
            monotone = false;
        }
    }
    for (index_t k = 0; k < nnz; ++k) {
        if (m.ir[k] < 0 || m.ir[k] >= M)
            add("row index in [0, M)", "ir[" + std::to_string(k) + "] = " + std::to_string(m.ir[k]));
    }
    if (!monotone) return out;
    for (index_t c = 0; c < N; ++c) {
        const index_t lo = std::max<index_t>(m.jc[c], 0), hi = std::min(m.jc[c + 1], nnz);
        for (index_t k = lo + 1; k < hi; ++k) {
            if (m.ir[k] <= m.ir[k - 1]) {
                add("strictly increasing rows",
                    "column " + std::to_string(c) + ", slot " + std::to_string(k));
            }
        }
    }
    return out;
}

CscMatrix prune_explicit_zeros(const CscMatrix& m) {
    CscMatrix out;
    out.dims = m.dims;
    out.jc.assign(m.jc.size(), 0);
    index_t kept = 0;
    for (index_t c = 0; c < m.dims.N; ++c) {
        for (index_t k = m.jc[c]; k < m.jc[c + 1]; ++k)
            if (m.pr[k] != 0.0) ++kept;
        out.jc[c + 1] = kept;
    }
    out.ir.reserve(kept);
    out.pr.reserve(kept);
    for (std::size_t k = 0; k < m.pr.size(); ++k) {
        if (m.pr[k] != 0.0) {
            out.ir.push_back(m.ir[k]);
            out.pr.push_back(m.pr[k]);
        }
    }
    return out;
}

}  // namespace sparse_asm
