#include "sparse_asm/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace sparse_asm {

namespace {

struct Entry {
    index_t col;
    index_t row;
    index_t pos;
};

// Deliberately separate from core validation.
Dimensions oracle_dims(const AssemblyRequest& req) {
    const auto& t = req.triplets;
    const std::size_t len = t.ii.size();
    if (t.jj.size() != len || (t.sr.size() != len && t.sr.size() != 1))
        throw Error(ErrorCode::length_mismatch, "oracle: triplet arrays differ in length");
    if (len > std::size_t(max_index))
        throw Error(ErrorCode::length_mismatch, "oracle: too many triplets");
    index_t m = 0, n = 0;
    for (std::size_t k = 0; k < len; ++k) {
        if (t.ii[k] < 1 || t.jj[k] < 1)
            throw Error(ErrorCode::bad_index, "oracle: index below 1 at position " + std::to_string(k));
        m = std::max(m, t.ii[k]);
        n = std::max(n, t.jj[k]);
    }
    if (!req.dims) return {m, n};
    if (req.dims->M < 0 || req.dims->N < 0)
        throw Error(ErrorCode::invalid_argument, "oracle: negative dimensions");
    if (m > req.dims->M || n > req.dims->N)
        throw Error(ErrorCode::dimension_too_small, "oracle: index outside explicit dimensions");
    return *req.dims;
}

}  // namespace

CscMatrix assemble_oracle(const AssemblyRequest& req) {
    const Dimensions dims = oracle_dims(req);
    const auto& t = req.triplets;
    const std::size_t len = t.ii.size();

    std::vector<Entry> entries(len);
    for (std::size_t k = 0; k < len; ++k)
        entries[k] = {t.jj[k], t.ii[k], static_cast<index_t>(k)};
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        if (a.col != b.col) return a.col < b.col;
        return a.row < b.row;
    });

    auto value = [&](index_t pos) { return t.sr.size() == 1 ? t.sr[0] : t.sr[std::size_t(pos)]; };

    CscMatrix out;
    out.dims = dims;
    out.jc.assign(std::size_t(dims.N) + 1, 0);
    for (std::size_t k = 0; k < len;) {
        std::size_t run = k;
        double sum = 0.0;
        while (run < len && entries[run].col == entries[k].col && entries[run].row == entries[k].row) {
            sum += value(entries[run].pos);
            ++run;
        }
        out.ir.push_back(entries[k].row - 1);
        out.pr.push_back(sum);
        ++out.jc[std::size_t(entries[k].col)];
        k = run;
    }
    std::partial_sum(out.jc.begin(), out.jc.end(), out.jc.begin());
    return out;
}

}  // namespace sparse_asm
