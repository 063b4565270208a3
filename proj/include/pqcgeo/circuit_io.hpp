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

#include <filesystem>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "circuit.hpp"
#include "error.hpp"
#include "matrix_io.hpp"

/// @file circuit_io.hpp
/// Line-oriented circuit files (`#` starts a comment):
///
///     qubits <n_q>
///     param <name> line
///     param <name> circle [<period>]
///     param <name> interval (|[ <lo> <hi> )|]   (also `[lo,hi)`)
///     init ket <bitstring>
///     init vec <2^n_q complex tokens>
///     gate rx|ry|rz <wire> <param> [scale <s>]
///     gate expgen <matrix-file> <param> [sign +|-]
///     gate sq <matrix-file> <wire> <param> [sign +|-]
///     gate fixed <matrix-file>
///     gate cx <control> <target>
///
/// Parameters are numbered in declaration order. `rx/ry/rz` use the generator
/// s·σ/2 with sign −1, i.e. e^{−i p s σ/2}. Without an `init` line the
/// register starts in |0…0⟩.

namespace pqcgeo {

/// Resolves a matrix-file reference to its contents.
using MatrixLoader = std::function<ComplexMatrix(const std::string &)>;

[[nodiscard]] inline MatrixLoader
fileMatrixLoader(std::filesystem::path base_dir) {
    return [dir = std::move(base_dir)](const std::string &ref) {
        std::filesystem::path p(ref);
        if (p.is_relative()) {
            p = dir / p;
        }
        return loadMatrixFile(p);
    };
}

[[nodiscard]] inline MatrixLoader
mapMatrixLoader(std::map<std::string, ComplexMatrix> files) {
    return [files = std::move(files)](const std::string &ref) {
        const auto it = files.find(ref);
        if (it == files.end()) {
            throw IoError("cannot open '" + ref + "'");
        }
        return it->second;
    };
}

struct ParsedCircuit {
    Circuit circuit;
    ParameterSpace space;
    std::vector<std::string> warnings;
};

namespace detail {

class CircuitParser {
  public:
    CircuitParser(MatrixLoader loader, BoundaryMode mode)
        : loader_(std::move(loader)), mode_(mode) {}

    ParsedCircuit parse(std::string_view text) {
        std::istringstream in{std::string(text)};
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_;
            const auto toks = tokenize(stripComment(raw));
            if (toks.empty()) {
                continue;
            }
            statement(toks);
        }
        if (!num_qubits_) {
            throw ParseError("missing 'qubits' declaration", line_ + 1, 1);
        }
        if (initial_.size() == 0) {
            initial_ = ComplexVector::Zero(
                static_cast<Eigen::Index>(std::size_t{1} << *num_qubits_));
            initial_(0) = 1.0;
        }
        ParsedCircuit out;
        out.space = ParameterSpace(factors_, mode_, &out.warnings);
        out.circuit = Circuit(*num_qubits_, names_.size(), std::move(gates_),
                              std::move(initial_), names_);
        if (out.circuit.hasSharedParameters()) {
            out.warnings.push_back(
                "some parameters drive several gates; slice constructions "
                "assume independent coordinates");
        }
        return out;
    }

  private:
    [[noreturn]] void fail(const std::string &msg, const Token &at) const {
        throw ParseError(msg, line_, at.column);
    }

    void expectCount(const std::vector<Token> &t, std::size_t lo,
                     std::size_t hi) const {
        if (t.size() < lo) {
            fail("too few fields for '" + std::string(t[0].text) + "'",
                 t.back());
        }
        if (t.size() > hi) {
            fail("unexpected token '" + std::string(t[hi].text) + "'", t[hi]);
        }
    }

    double number(const Token &t) const {
        const auto v = parseReal(t.text);
        if (!v || !std::isfinite(*v)) {
            fail("expected a number, got '" + std::string(t.text) + "'", t);
        }
        return *v;
    }

    std::size_t count(const Token &t) const {
        const double v = number(t);
        if (v < 0 || v != std::floor(v) || v > 1e9) {
            fail("expected a non-negative integer, got '" +
                     std::string(t.text) + "'",
                 t);
        }
        return static_cast<std::size_t>(v);
    }

    std::size_t wire(const Token &t) const {
        const std::size_t w = count(t);
        if (w >= *num_qubits_) {
            fail("wire out of range: " + std::to_string(w) + " >= " +
                     std::to_string(*num_qubits_),
                 t);
        }
        return w;
    }

    std::size_t param(const Token &t) const {
        for (std::size_t j = 0; j < names_.size(); ++j) {
            if (names_[j] == t.text) {
                return j;
            }
        }
        fail("unknown parameter '" + std::string(t.text) + "'", t);
    }

    void requireQubits(const Token &t) const {
        if (!num_qubits_) {
            fail("'qubits' must be declared first", t);
        }
    }

    ComplexMatrix load(const Token &t) const {
        try {
            return loader_(std::string(t.text));
        } catch (const IoError &) {
            throw;
        } catch (const Error &e) {
            fail(std::string("matrix '") + std::string(t.text) +
                     "': " + e.what(),
                 t);
        }
    }

    HermitianMatrix hermitian(const ComplexMatrix &m, const Token &t) const {
        try {
            return HermitianMatrix(m);
        } catch (const ValidationError &e) {
            fail(std::string("generator '") + std::string(t.text) +
                     "': " + e.what(),
                 t);
        }
    }

    int sign(const std::vector<Token> &t, std::size_t at) const {
        if (t.size() <= at) {
            return -1;
        }
        if (t[at].text != "sign" || t.size() != at + 2) {
            fail("expected 'sign +|-'", t[at]);
        }
        if (t[at + 1].text == "+") {
            return 1;
        }
        if (t[at + 1].text == "-") {
            return -1;
        }
        fail("sign must be '+' or '-'", t[at + 1]);
    }

    void statement(const std::vector<Token> &t) {
        const std::string_view kw = t[0].text;
        if (kw == "qubits") {
            expectCount(t, 2, 2);
            if (num_qubits_) {
                fail("duplicate 'qubits' declaration", t[0]);
            }
            const std::size_t n = count(t[1]);
            if (n == 0 || n > 20) {
                fail("qubit count must be in [1, 20]", t[1]);
            }
            num_qubits_ = n;
        } else if (kw == "param") {
            paramDecl(t);
        } else if (kw == "init") {
            initDecl(t);
        } else if (kw == "gate") {
            gateDecl(t);
        } else {
            fail("unknown statement '" + std::string(kw) + "'", t[0]);
        }
    }

    /// Splits `[0,1)`-style spellings into bracket and number tokens.
    static std::vector<Token> splitInterval(const std::vector<Token> &t,
                                            std::size_t from) {
        std::vector<Token> out;
        for (std::size_t k = from; k < t.size(); ++k) {
            const std::string_view s = t[k].text;
            std::size_t start = 0;
            for (std::size_t i = 0; i <= s.size(); ++i) {
                const bool sep = i == s.size() || s[i] == '(' ||
                                 s[i] == ')' || s[i] == '[' || s[i] == ']' ||
                                 s[i] == ',';
                if (!sep) {
                    continue;
                }
                if (i > start) {
                    out.push_back({s.substr(start, i - start),
                                   t[k].column + start});
                }
                if (i < s.size() && s[i] != ',') {
                    out.push_back({s.substr(i, 1), t[k].column + i});
                }
                start = i + 1;
            }
        }
        return out;
    }

    void paramDecl(const std::vector<Token> &t) {
        expectCount(t, 3, 7);
        const std::string name(t[1].text);
        for (const auto &n : names_) {
            if (n == name) {
                fail("duplicate parameter '" + name + "'", t[1]);
            }
        }
        const std::string_view kind = t[2].text;
        if (kind == "line") {
            expectCount(t, 3, 3);
            factors_.emplace_back(FullLine{});
        } else if (kind == "circle") {
            expectCount(t, 3, 4);
            Circle c;
            if (t.size() == 4) {
                c.period = number(t[3]);
                if (!(c.period > 0)) {
                    fail("circle period must be > 0", t[3]);
                }
            }
            factors_.emplace_back(c);
        } else if (kind == "interval") {
            expectCount(t, 4, 7);
        } else {
            fail("parameter kind must be line, circle or interval", t[2]);
        }
        if (kind == "interval") {
            const std::vector<Token> b = splitInterval(t, 3);
            if (b.size() != 4) {
                fail("interval must read '(|[ lo hi )|]'", t[3]);
            }
            Interval iv;
            if (b[0].text == "[") {
                iv.lo_closed = true;
            } else if (b[0].text != "(") {
                fail("expected '(' or '['", b[0]);
            }
            iv.lo = number(b[1]);
            iv.hi = number(b[2]);
            if (b[3].text == "]") {
                iv.hi_closed = true;
            } else if (b[3].text != ")") {
                fail("expected ')' or ']'", b[3]);
            }
            if (!(iv.lo < iv.hi)) {
                fail("interval requires lo < hi", b[1]);
            }
            factors_.emplace_back(iv);
        }
        names_.push_back(name);
    }

    void initDecl(const std::vector<Token> &t) {
        requireQubits(t[0]);
        expectCount(t, 3, 2 + (std::size_t{1} << *num_qubits_));
        if (initial_.size() != 0) {
            fail("duplicate 'init'", t[0]);
        }
        if (t[1].text == "ket") {
            expectCount(t, 3, 3);
            if (t[2].text.size() != *num_qubits_) {
                fail("bitstring length must equal the qubit count", t[2]);
            }
            try {
                initial_ = basisState(t[2].text);
            } catch (const ValidationError &e) {
                fail(e.what(), t[2]);
            }
        } else if (t[1].text == "vec") {
            const std::size_t dim = std::size_t{1} << *num_qubits_;
            expectCount(t, 2 + dim, 2 + dim);
            ComplexVector v(static_cast<Eigen::Index>(dim));
            for (std::size_t i = 0; i < dim; ++i) {
                const auto z = parseComplexToken(t[2 + i].text);
                if (!z) {
                    fail("bad complex token '" + std::string(t[2 + i].text) +
                             "'",
                         t[2 + i]);
                }
                v(static_cast<Eigen::Index>(i)) = *z;
            }
            if (std::abs(v.norm() - 1.0) > Circuit::kStateNormTol) {
                fail("initial state is not a unit vector", t[2]);
            }
            initial_ = v;
        } else {
            fail("expected 'ket' or 'vec'", t[1]);
        }
    }

    void gateDecl(const std::vector<Token> &t) {
        requireQubits(t[0]);
        expectCount(t, 2, 8);
        const std::string_view kind = t[1].text;
        if (kind == "rx" || kind == "ry" || kind == "rz") {
            expectCount(t, 4, 6);
            double scale = 1.0;
            if (t.size() > 4) {
                if (t[4].text != "scale" || t.size() != 6) {
                    fail("expected 'scale <s>'", t[4]);
                }
                scale = number(t[5]);
            }
            const ComplexMatrix pauli =
                kind == "rx" ? pauliX() : (kind == "ry" ? pauliY() : pauliZ());
            gates_.emplace_back(ParamSingleQubit{
                HermitianMatrix(ComplexMatrix(scale * 0.5 * pauli)),
                wire(t[2]), param(t[3]), -1});
        } else if (kind == "expgen") {
            expectCount(t, 4, 6);
            const auto m = load(t[2]);
            const auto dim =
                static_cast<Eigen::Index>(std::size_t{1} << *num_qubits_);
            if (m.rows() != dim || m.cols() != dim) {
                fail("generator must be " + std::to_string(dim) + "x" +
                         std::to_string(dim),
                     t[2]);
            }
            gates_.emplace_back(
                ParamExp{hermitian(m, t[2]), param(t[3]), sign(t, 4)});
        } else if (kind == "sq") {
            expectCount(t, 5, 7);
            const auto m = load(t[2]);
            if (m.rows() != 2 || m.cols() != 2) {
                fail("single-qubit generator must be 2x2", t[2]);
            }
            gates_.emplace_back(ParamSingleQubit{
                hermitian(m, t[2]), wire(t[3]), param(t[4]), sign(t, 5)});
        } else if (kind == "fixed") {
            expectCount(t, 3, 3);
            const auto m = load(t[2]);
            const auto dim =
                static_cast<Eigen::Index>(std::size_t{1} << *num_qubits_);
            if (m.rows() != dim || m.cols() != dim) {
                fail("fixed matrix must be " + std::to_string(dim) + "x" +
                         std::to_string(dim),
                     t[2]);
            }
            if (!isUnitary(m, Circuit::kFixedUnitaryTol)) {
                fail("fixed matrix is not unitary", t[2]);
            }
            gates_.emplace_back(FixedUnitary{m});
        } else if (kind == "cx") {
            expectCount(t, 4, 4);
            const std::size_t c = wire(t[2]);
            const std::size_t tg = wire(t[3]);
            if (c == tg) {
                fail("control and target must differ", t[3]);
            }
            gates_.emplace_back(Cnot{c, tg});
        } else {
            fail("unknown gate '" + std::string(kind) + "'", t[1]);
        }
    }

    MatrixLoader loader_;
    BoundaryMode mode_;
    std::size_t line_ = 0;
    std::optional<std::size_t> num_qubits_;
    std::vector<std::string> names_;
    std::vector<Factor> factors_;
    std::vector<Gate> gates_;
    ComplexVector initial_;
};

} // namespace detail

[[nodiscard]] inline ParsedCircuit
parseCircuit(std::string_view text, const MatrixLoader &loader,
             BoundaryMode mode = BoundaryMode::Warn) {
    return detail::CircuitParser(loader, mode).parse(text);
}

/// Reads a circuit file; matrix references resolve relative to its directory.
[[nodiscard]] inline ParsedCircuit
loadCircuitFile(const std::filesystem::path &path,
                BoundaryMode mode = BoundaryMode::Warn) {
    const std::string text = readTextFile(path);
    return parseCircuit(text, fileMatrixLoader(path.parent_path()), mode);
}

struct SerializedCircuit {
    std::string text;
    std::map<std::string, ComplexMatrix> matrices;
};

/// Emits a circuit file plus the matrix files it references. Matrix-valued
/// gates are written as `expgen`/`sq`/`fixed` with generated file names, so
/// parseCircuit(text, mapMatrixLoader(matrices)) rebuilds an identical
/// circuit.
[[nodiscard]] inline SerializedCircuit
serializeCircuit(const Circuit &c, const ParameterSpace &space) {
    SerializedCircuit out;
    std::ostringstream os;
    os << "qubits " << c.numQubits() << "\n";
    const auto &names = c.paramNames();
    for (std::size_t j = 0; j < c.numParams(); ++j) {
        os << "param " << names[j] << " ";
        std::visit(
            [&](const auto &f) {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, FullLine>) {
                    os << "line";
                } else if constexpr (std::is_same_v<T, Circle>) {
                    os << "circle " << detail::formatReal(f.period);
                } else {
                    os << "interval " << (f.lo_closed ? "[ " : "( ")
                       << detail::formatReal(f.lo) << " "
                       << detail::formatReal(f.hi)
                       << (f.hi_closed ? " ]" : " )");
                }
            },
            space.factor(j));
        os << "\n";
    }
    os << "init vec";
    for (Eigen::Index i = 0; i < c.initialState().size(); ++i) {
        os << " " << formatComplex(c.initialState()(i));
    }
    os << "\n";
    const auto signTok = [](int s) { return s > 0 ? "+" : "-"; };
    for (std::size_t g = 0; g < c.gates().size(); ++g) {
        const std::string file = "g" + std::to_string(g) + ".mat";
        std::visit(
            [&](const auto &gate) {
                using T = std::decay_t<decltype(gate)>;
                if constexpr (std::is_same_v<T, FixedUnitary>) {
                    out.matrices[file] = gate.matrix;
                    os << "gate fixed " << file;
                } else if constexpr (std::is_same_v<T, ParamExp>) {
                    out.matrices[file] = gate.generator.matrix();
                    os << "gate expgen " << file << " " << names[gate.param]
                       << " sign " << signTok(gate.sign);
                } else if constexpr (std::is_same_v<T, ParamSingleQubit>) {
                    out.matrices[file] = gate.generator.matrix();
                    os << "gate sq " << file << " " << gate.wire << " "
                       << names[gate.param] << " sign " << signTok(gate.sign);
                } else {
                    os << "gate cx " << gate.control << " " << gate.target;
                }
            },
            c.gates()[g]);
        os << "\n";
    }
    out.text = os.str();
    return out;
}

} // namespace pqcgeo
