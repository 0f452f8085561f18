#include "sparse_asm/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sparse_asm {

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
    throw Error(ErrorCode::parse_error, "line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return char(std::tolower(c)); });
    return out;
}

class LineReader {
public:
    explicit LineReader(std::string_view text) : text_(text) {}

    bool next(std::string_view& line) {
        if (pos_ >= text_.size()) return false;
        auto end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        line = text_.substr(pos_, end - pos_);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos_ = end + 1;
        ++number_;
        return true;
    }
    std::size_t number() const { return number_; }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t number_ = 0;
};

bool is_space(char c) { return c == ' ' || c == '\t'; }

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t k = 0;
    while (k < line.size()) {
        while (k < line.size() && is_space(line[k])) ++k;
        const std::size_t start = k;
        while (k < line.size() && !is_space(line[k])) ++k;
        if (k > start) out.push_back(line.substr(start, k - start));
    }
    return out;
}

bool blank(std::string_view line) {
    return std::all_of(line.begin(), line.end(), [](char c) { return is_space(c); });
}

template <class T>
bool parse_number(std::string_view tok, T& out) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc() && res.ptr == last;
}

void put_int(std::string& buf, std::int64_t v) {
    char tmp[24];
    const auto res = std::to_chars(tmp, tmp + sizeof tmp, v);
    buf.append(tmp, res.ptr);
}

void put_real(std::string& buf, double v) {
    char tmp[40];
    const auto res = std::to_chars(tmp, tmp + sizeof tmp, v, std::chars_format::general, 17);
    buf.append(tmp, res.ptr);
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorCode::io_error, "cannot open " + path.string() + " for writing");
    return os;
}

void check_stream(std::ostream& os, const std::string& what) {
    if (!os) throw Error(ErrorCode::io_error, "write failed: " + what);
}

}  // namespace

TripletFile parse_triplets_matrixmarket(std::string_view text) {
    LineReader reader(text);
    std::string_view line;

    if (!reader.next(line)) parse_fail(1, "empty file");
    const auto banner = split(line);
    if (banner.size() != 5 || banner[0] != "%%MatrixMarket")
        parse_fail(reader.number(), "missing %%MatrixMarket banner");
    const std::string object = lower(banner[1]), format = lower(banner[2]),
                      field = lower(banner[3]), symmetry = lower(banner[4]);
    if (object != "matrix" || format != "coordinate")
        parse_fail(reader.number(), "only 'matrix coordinate' is supported");
    const bool pattern = field == "pattern";
    if (field != "real" && field != "integer" && field != "double" && !pattern)
        parse_fail(reader.number(), "unsupported field '" + field + "'");
    if (symmetry != "general")
        parse_fail(reader.number(), "unsupported symmetry '" + symmetry + "'");

    // size line, after comments
    bool have_size = false;
    std::int64_t M = 0, N = 0, L = 0;
    while (reader.next(line)) {
        if (blank(line) || line.front() == '%') continue;
        const auto tok = split(line);
        if (tok.size() != 3 || !parse_number(tok[0], M) || !parse_number(tok[1], N) ||
            !parse_number(tok[2], L))
            parse_fail(reader.number(), "expected size line 'M N L'");
        if (M < 0 || N < 0 || L < 0 || M > max_index || N > max_index || L > max_index)
            parse_fail(reader.number(), "size out of range");
        have_size = true;
        break;
    }
    if (!have_size) parse_fail(reader.number() + 1, "missing size line");

    TripletFile out;
    out.dims = {index_t(M), index_t(N)};
    out.triplets.ii.reserve(std::size_t(L));
    out.triplets.jj.reserve(std::size_t(L));
    out.triplets.sr.reserve(std::size_t(L));

    auto to_index = [&](std::string_view tok, std::int64_t limit, const char* what) -> index_t {
        double v = 0;
        if (!parse_number(tok, v))
            parse_fail(reader.number(), std::string("bad ") + what + " '" + std::string(tok) + "'");
        if (v < 1.0 || v != std::ceil(v) || v > double(max_index))
            throw Error(ErrorCode::bad_index, "line " + std::to_string(reader.number()) + ": " +
                                                  what + " " + std::string(tok));
        if (v > double(limit))
            throw Error(ErrorCode::dimension_too_small,
                        "line " + std::to_string(reader.number()) + ": " + what + " " +
                            std::string(tok) + " exceeds size line");
        return index_t(v);
    };

    std::int64_t count = 0;
    while (reader.next(line)) {
        if (blank(line) || line.front() == '%') continue;
        const auto tok = split(line);
        const std::size_t expected = pattern ? 2 : 3;
        if (tok.size() != expected)
            parse_fail(reader.number(), "expected " + std::to_string(expected) + " fields");
        if (count == L) parse_fail(reader.number(), "more entries than the size line declares");
        const index_t i = to_index(tok[0], M, "row index");
        const index_t j = to_index(tok[1], N, "column index");
        double v = 1.0;
        if (!pattern && !parse_number(tok[2], v))
            parse_fail(reader.number(), "bad value '" + std::string(tok[2]) + "'");
        out.triplets.ii.push_back(i);
        out.triplets.jj.push_back(j);
        out.triplets.sr.push_back(v);
        ++count;
    }
    if (count != L)
        parse_fail(reader.number(), "expected " + std::to_string(L) + " entries, found " +
                                        std::to_string(count));
    return out;
}

TripletFile read_triplets_matrixmarket(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_triplets_matrixmarket(ss.str());
}

void write_triplets_matrixmarket(std::ostream& os, const TripletList& t, Dimensions dims) {
    if (t.jj.size() != t.ii.size() || t.sr.size() != t.ii.size())
        throw Error(ErrorCode::length_mismatch, "triplet arrays differ in length");
    std::string buf;
    buf.reserve(64 + t.ii.size() * 16);
    buf.append(matrix_market_banner).push_back('\n');
    put_int(buf, dims.M);
    buf.push_back(' ');
    put_int(buf, dims.N);
    buf.push_back(' ');
    put_int(buf, std::int64_t(t.ii.size()));
    buf.push_back('\n');
    for (std::size_t k = 0; k < t.ii.size(); ++k) {
        put_int(buf, t.ii[k]);
        buf.push_back(' ');
        put_int(buf, t.jj[k]);
        buf.push_back(' ');
        put_real(buf, t.sr[k]);
        buf.push_back('\n');
    }
    os.write(buf.data(), std::streamsize(buf.size()));
    check_stream(os, "triplets");
}

void write_triplets_matrixmarket(const std::filesystem::path& path, const TripletList& t,
                                 Dimensions dims) {
    auto os = open_out(path);
    write_triplets_matrixmarket(os, t, dims);
}

void write_csc_matrixmarket(std::ostream& os, const CscMatrix& m) {
    std::string buf;
    buf.reserve(64 + m.ir.size() * 24);
    buf.append(matrix_market_banner).push_back('\n');
    put_int(buf, m.dims.M);
    buf.push_back(' ');
    put_int(buf, m.dims.N);
    buf.push_back(' ');
    put_int(buf, m.nnz());
    buf.push_back('\n');
    for (index_t c = 0; c < m.dims.N; ++c) {
        for (index_t k = m.jc[c]; k < m.jc[c + 1]; ++k) {
            put_int(buf, std::int64_t(m.ir[k]) + 1);
            buf.push_back(' ');
            put_int(buf, std::int64_t(c) + 1);
            buf.push_back(' ');
            put_real(buf, m.pr[k]);
            buf.push_back('\n');
        }
    }
    os.write(buf.data(), std::streamsize(buf.size()));
    check_stream(os, "matrix");
}

void write_csc_matrixmarket(const std::filesystem::path& path, const CscMatrix& m) {
    auto os = open_out(path);
    write_csc_matrixmarket(os, m);
}

void write_bench_csv(std::ostream& os, std::span<const BenchRecord> rows) {
    os << bench_csv_header << '\n';
    std::string buf;
    for (const auto& r : rows) {
        buf.clear();
        put_int(buf, r.dataset_id);
        buf += ',' + r.impl + ',';
        put_int(buf, r.threads);
        buf.push_back(',');
        put_real(buf, r.mean_seconds);
        buf.push_back(',');
        put_real(buf, r.min_seconds);
        buf.push_back(',');
        put_int(buf, r.reps);
        for (const index_t v : {r.L, r.M, r.N, r.nnz}) {
            buf.push_back(',');
            put_int(buf, v);
        }
        buf.push_back(',');
        put_real(buf, r.speedup_vs_serial);
        os << buf << '\n';
    }
    check_stream(os, "bench csv");
}

void write_bench_csv(const std::filesystem::path& path, std::span<const BenchRecord> rows) {
    auto os = open_out(path);
    write_bench_csv(os, rows);
}

void write_cost_csv(std::ostream& os, std::span<const CostRecord> rows) {
    os << cost_csv_header << '\n';
    for (const auto& r : rows) {
        const std::string prefix = std::to_string(r.dataset_id) + ',' + r.impl + ',' +
                                   std::to_string(r.threads) + ',' + r.source + ',';
        for (const auto& ph : r.report.phases) {
            os << prefix << ph.name << ',' << ph.total_accesses << ',' << ph.indirect_accesses
               << ',' << ph.indirect_L_accesses << ",\n";
        }
        os << prefix << "total," << r.report.total_accesses << ',' << r.report.indirect_accesses
           << ',' << r.report.indirect_L_accesses << ',' << r.report.peak_aux_words << '\n';
        for (const auto& c : r.report.allocation_candidates)
            os << prefix << "alloc:" << c.name << ",,,," << c.words << '\n';
    }
    check_stream(os, "cost csv");
}

void write_cost_csv(const std::filesystem::path& path, std::span<const CostRecord> rows) {
    auto os = open_out(path);
    write_cost_csv(os, rows);
}

}  // namespace sparse_asm
