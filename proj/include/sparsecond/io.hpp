#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sparsecond/csv.hpp"
#include "sparsecond/errors.hpp"
#include "sparsecond/matrix.hpp"

namespace sparsecond {

// Text formats, 1-based indices, '#' starts a comment anywhere on a line.
//   pattern file:  "pattern n"  then one "i j" per line
//   matrix file:   "matrix n"   then one "i j value" per line; the listed
//                  pairs define the pattern, values may be zero
//   vector file:   "vector n"   then one "i value" per line; unlisted
//                  components are zero

namespace detail {

inline std::string strip_comment(const std::string& line) {
    const std::size_t pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline bool blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

struct LineReader {
    std::istream& is;
    long line_no = 0;

    // Next non-blank payload line, comments stripped.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(is, raw)) {
            ++line_no;
            out = strip_comment(raw);
            if (!blank(out)) return true;
        }
        return false;
    }
};

inline int parse_header(LineReader& r, const std::string& keyword) {
    std::string line;
    if (!r.next(line))
        throw file_parse_error("missing '" + keyword + " n' header line", r.line_no);
    std::istringstream ss(line);
    std::string word;
    int n = 0;
    if (!(ss >> word >> n) || word != keyword || n < 1)
        throw file_parse_error("expected header '" + keyword + " n' with n >= 1", r.line_no);
    std::string rest;
    if (ss >> rest) throw file_parse_error("trailing tokens after header", r.line_no);
    return n;
}

}  // namespace detail

inline PatternPtr read_pattern(std::istream& is) {
    detail::LineReader r{is};
    const int n = detail::parse_header(r, "pattern");
    std::vector<char> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    std::vector<IndexPair> support;
    std::string line;
    while (r.next(line)) {
        std::istringstream ss(line);
        int i = 0, j = 0;
        if (!(ss >> i >> j))
            throw file_parse_error("expected 'i j' pair", r.line_no);
        std::string rest;
        if (ss >> rest) throw file_parse_error("trailing tokens after pair", r.line_no);
        if (i < 1 || i > n || j < 1 || j > n)
            throw file_parse_error("index pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") out of range [1," +
                                       std::to_string(n) + "]",
                                   r.line_no);
        auto& cell = seen[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) +
                          static_cast<std::size_t>(j - 1)];
        if (cell)
            throw file_parse_error("duplicate pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")",
                                   r.line_no);
        cell = 1;
        support.emplace_back(i - 1, j - 1);
    }
    return share_pattern(Pattern(n, std::move(support)));
}

inline Matrix read_matrix(std::istream& is) {
    detail::LineReader r{is};
    const int n = detail::parse_header(r, "matrix");
    std::vector<char> seen(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    std::vector<IndexPair> support;
    std::vector<double> entries(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    std::string line;
    while (r.next(line)) {
        std::istringstream ss(line);
        int i = 0, j = 0;
        double v = 0.0;
        if (!(ss >> i >> j >> v))
            throw file_parse_error("expected 'i j value' triple", r.line_no);
        std::string rest;
        if (ss >> rest) throw file_parse_error("trailing tokens after triple", r.line_no);
        if (i < 1 || i > n || j < 1 || j > n)
            throw file_parse_error("index pair (" + std::to_string(i) + "," +
                                       std::to_string(j) + ") out of range [1," +
                                       std::to_string(n) + "]",
                                   r.line_no);
        auto& cell = seen[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) +
                          static_cast<std::size_t>(j - 1)];
        if (cell)
            throw file_parse_error("duplicate entry (" + std::to_string(i) + "," +
                                       std::to_string(j) + ")",
                                   r.line_no);
        cell = 1;
        support.emplace_back(i - 1, j - 1);
        entries[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(j - 1)] = v;
    }
    return Matrix(share_pattern(Pattern(n, std::move(support))), std::move(entries));
}

inline std::vector<double> read_vector(std::istream& is) {
    detail::LineReader r{is};
    const int n = detail::parse_header(r, "vector");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<double> v(static_cast<std::size_t>(n), 0.0);
    std::string line;
    while (r.next(line)) {
        std::istringstream ss(line);
        int i = 0;
        double x = 0.0;
        if (!(ss >> i >> x))
            throw file_parse_error("expected 'i value' pair", r.line_no);
        std::string rest;
        if (ss >> rest) throw file_parse_error("trailing tokens after pair", r.line_no);
        if (i < 1 || i > n)
            throw file_parse_error("index " + std::to_string(i) + " out of range [1," +
                                       std::to_string(n) + "]",
                                   r.line_no);
        if (seen[static_cast<std::size_t>(i - 1)])
            throw file_parse_error("duplicate component " + std::to_string(i), r.line_no);
        seen[static_cast<std::size_t>(i - 1)] = 1;
        v[static_cast<std::size_t>(i - 1)] = x;
    }
    return v;
}

/// Writes the matrix file format; every support position is listed (values
/// may be zero) so the pattern round-trips exactly.
inline void write_matrix(std::ostream& os, const Matrix& m) {
    os << "matrix " << m.n() << '\n';
    for (const auto& [i, j] : m.pattern().support())
        os << i + 1 << ' ' << j + 1 << ' ' << fmt_g17(m(i, j)) << '\n';
}

inline void write_vector(std::ostream& os, const std::vector<double>& v) {
    os << "vector " << v.size() << '\n';
    for (std::size_t i = 0; i < v.size(); ++i)
        os << i + 1 << ' ' << fmt_g17(v[i]) << '\n';
}

inline PatternPtr pattern_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw file_parse_error("cannot open pattern file '" + path + "'", 0);
    return read_pattern(f);
}

inline Matrix matrix_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw file_parse_error("cannot open matrix file '" + path + "'", 0);
    return read_matrix(f);
}

inline std::vector<double> vector_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw file_parse_error("cannot open vector file '" + path + "'", 0);
    return read_vector(f);
}

/// Parses the CLI pattern spec: dense | lower | upper | tridiag | band:K |
/// file:PATH. `n` is required for every kind except file.
inline PatternPtr parse_pattern_spec(const std::string& spec, int n) {
    if (spec.rfind("file:", 0) == 0) return pattern_from_file(spec.substr(5));
    if (n < 1) throw std::invalid_argument("pattern spec '" + spec + "' needs --n >= 1");
    if (spec == "dense") return make_pattern(PatternKind::dense, n);
    if (spec == "lower") return make_pattern(PatternKind::lower_triangular, n);
    if (spec == "upper") return make_pattern(PatternKind::upper_triangular, n);
    if (spec == "tridiag") return make_pattern(PatternKind::tridiagonal, n);
    if (spec.rfind("band:", 0) == 0) {
        std::size_t used = 0;
        int k = 0;
        const std::string arg = spec.substr(5);
        try {
            k = std::stoi(arg, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad band width in pattern spec '" + spec + "'");
        }
        if (used != arg.size())
            throw std::invalid_argument("bad band width in pattern spec '" + spec + "'");
        return make_pattern(PatternKind::band, n, k);
    }
    throw std::invalid_argument(
        "unknown pattern spec '" + spec +
        "' (expected dense|lower|upper|tridiag|band:K|file:PATH)");
}

}  // namespace sparsecond
