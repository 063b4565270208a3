// Copyright 2026 The pqcgeo Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"

/// @file matrix_io.hpp
/// Plain-text complex matrix format:
///
///     # optional comment lines
///     complex <rows> <cols>
///     <rows lines of cols tokens>
///
/// Tokens are `a+bi`, `a-bi`, `a`, `bi` with `.` as decimal separator.
/// Parsing and formatting never consult the C locale.

namespace pqcgeo {

namespace detail {

[[nodiscard]] inline std::optional<double> parseReal(std::string_view s) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return std::nullopt;
    }
    double value = 0.0;
    const auto *end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

[[nodiscard]] inline std::string formatReal(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

/// Splits `text` into whitespace separated tokens with 1-based columns.
struct Token {
    std::string_view text;
    std::size_t column;
};

[[nodiscard]] inline std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                                   line[i] == '\r')) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
               line[i] != '\r') {
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

/// Strips a trailing `#` comment.
[[nodiscard]] inline std::string_view stripComment(std::string_view line) {
    const auto pos = line.find('#');
    return pos == std::string_view::npos ? line : line.substr(0, pos);
}

} // namespace detail

/// Parses one complex token; nullopt on malformed input.
[[nodiscard]] inline std::optional<Complex>
parseComplexToken(std::string_view tok) {
    if (tok.empty()) {
        return std::nullopt;
    }
    if (tok.back() != 'i') {
        const auto re = detail::parseReal(tok);
        if (!re) {
            return std::nullopt;
        }
        return Complex(*re, 0.0);
    }
    const std::string_view body = tok.substr(0, tok.size() - 1);
    // Split at the last sign that is neither leading nor an exponent sign.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' &&
            body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    const auto parseImag = [](std::string_view s) -> std::optional<double> {
        if (s.empty() || s == "+") {
            return 1.0;
        }
        if (s == "-") {
            return -1.0;
        }
        return detail::parseReal(s);
    };
    if (split == std::string_view::npos) {
        const auto im = parseImag(body);
        if (!im) {
            return std::nullopt;
        }
        return Complex(0.0, *im);
    }
    const auto re = detail::parseReal(body.substr(0, split));
    const auto im = parseImag(body.substr(split));
    if (!re || !im) {
        return std::nullopt;
    }
    return Complex(*re, *im);
}

[[nodiscard]] inline std::string formatComplex(Complex z) {
    std::string s = detail::formatReal(z.real());
    const std::string im = detail::formatReal(z.imag());
    if (im.front() != '-') {
        s += '+';
    }
    s += im;
    s += 'i';
    return s;
}

/// Parses matrix-file contents. Line/column in errors are 1-based and count
/// from the start of `text`.
[[nodiscard]] inline ComplexMatrix parseMatrix(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    Eigen::Index rows = -1;
    Eigen::Index cols = -1;
    Eigen::Index row = 0;
    ComplexMatrix m;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto toks = detail::tokenize(detail::stripComment(raw));
        if (toks.empty()) {
            continue;
        }
        if (rows < 0) {
            if (toks.size() != 3 || toks[0].text != "complex") {
                throw ParseError("expected header 'complex <rows> <cols>'",
                                 line_no, toks[0].column);
            }
            const auto r = detail::parseReal(toks[1].text);
            const auto c = detail::parseReal(toks[2].text);
            if (!r || *r < 0 || *r != std::floor(*r)) {
                throw ParseError("bad row count", line_no, toks[1].column);
            }
            if (!c || *c < 0 || *c != std::floor(*c)) {
                throw ParseError("bad column count", line_no, toks[2].column);
            }
            rows = static_cast<Eigen::Index>(*r);
            cols = static_cast<Eigen::Index>(*c);
            m.resize(rows, cols);
            continue;
        }
        if (row >= rows) {
            throw ParseError("more rows than declared", line_no,
                             toks[0].column);
        }
        if (static_cast<Eigen::Index>(toks.size()) != cols) {
            throw ParseError("expected " + std::to_string(cols) +
                                 " entries, got " +
                                 std::to_string(toks.size()),
                             line_no, toks[0].column);
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
            const auto &t = toks[static_cast<std::size_t>(j)];
            const auto z = parseComplexToken(t.text);
            if (!z || !std::isfinite(z->real()) || !std::isfinite(z->imag())) {
                throw ParseError("bad complex token '" + std::string(t.text) +
                                     "'",
                                 line_no, t.column);
            }
            m(row, j) = *z;
        }
        ++row;
    }
    if (rows < 0) {
        throw ParseError("missing 'complex <rows> <cols>' header", line_no + 1,
                         1);
    }
    if (row != rows) {
        throw ParseError("expected " + std::to_string(rows) + " rows, got " +
                             std::to_string(row),
                         line_no + 1, 1);
    }
    return m;
}

[[nodiscard]] inline std::string formatMatrix(const ComplexMatrix &m) {
    std::string out = "complex " + std::to_string(m.rows()) + " " +
                      std::to_string(m.cols()) + "\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out += ' ';
            }
            out += formatComplex(m(i, j));
        }
        out += '\n';
    }
    return out;
}

[[nodiscard]] inline std::string readTextFile(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + p.string() + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void writeTextFile(const std::filesystem::path &p,
                          std::string_view contents) {
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + p.string() + "' for writing");
    }
    out << contents;
    if (!out) {
        throw IoError("write failed for '" + p.string() + "'");
    }
}

[[nodiscard]] inline ComplexMatrix
loadMatrixFile(const std::filesystem::path &p) {
    const std::string text = readTextFile(p);
    try {
        return parseMatrix(text);
    } catch (const ParseError &e) {
        throw ValidationError(p.string() + ": " + e.what());
    }
}

} // namespace pqcgeo
