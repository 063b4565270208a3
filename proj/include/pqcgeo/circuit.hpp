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

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "linalg.hpp"

/// @file circuit.hpp
/// Circuit model: gates, parameter spaces and compilation of a parameter
/// point to a unitary.
///
/// Gate order convention: the gate list is in temporal order. The compiled
/// unitary is G_m ··· G_2 G_1, i.e. later gates multiply from the left.
///
/// Qubit order convention: wire 0 is the leftmost tensor factor, which is the
/// most significant bit of a basis-state index.

namespace pqcgeo {

//===----------------------------------------------------------------------===//
// Parameter space
//===----------------------------------------------------------------------===//

struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool lo_closed = false;
    bool hi_closed = false;
};

struct FullLine {};

struct Circle {
    double period = 2.0 * std::numbers::pi;
};

using Factor = std::variant<Interval, FullLine, Circle>;

/// What to do when two or more factors carry closed endpoints, so that the
/// product has corners.
enum class BoundaryMode { Warn, Strict };

struct ParameterPoint {
    RealVector coords;
};

class ParameterSpace {
  public:
    ParameterSpace() = default;

    explicit ParameterSpace(std::vector<Factor> factors,
                            BoundaryMode mode = BoundaryMode::Warn,
                            std::vector<std::string> *warnings = nullptr)
        : factors_(std::move(factors)) {
        std::size_t closed = 0;
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            if (const auto *iv = std::get_if<Interval>(&factors_[j])) {
                if (!(std::isfinite(iv->lo) && std::isfinite(iv->hi)) ||
                    !(iv->lo < iv->hi)) {
                    throw ValidationError("parameter " + std::to_string(j) +
                                          ": interval requires lo < hi");
                }
                if (iv->lo_closed || iv->hi_closed) {
                    ++closed;
                }
            } else if (const auto *c = std::get_if<Circle>(&factors_[j])) {
                if (!(std::isfinite(c->period) && c->period > 0.0)) {
                    throw ValidationError("parameter " + std::to_string(j) +
                                          ": circle period must be > 0");
                }
            }
        }
        if (closed >= 2) {
            const std::string msg =
                std::to_string(closed) +
                " parameter factors include closed endpoints; the parameter "
                "space has corners";
            if (mode == BoundaryMode::Strict) {
                throw ValidationError(msg);
            }
            if (warnings != nullptr) {
                warnings->push_back(msg);
            }
        }
    }

    /// Unbounded product of k lines.
    [[nodiscard]] static ParameterSpace lines(std::size_t k) {
        return ParameterSpace(std::vector<Factor>(k, FullLine{}));
    }

    [[nodiscard]] std::size_t size() const noexcept { return factors_.size(); }
    [[nodiscard]] const std::vector<Factor> &factors() const noexcept {
        return factors_;
    }
    [[nodiscard]] const Factor &factor(std::size_t j) const {
        return factors_.at(j);
    }

    [[nodiscard]] bool bounded() const {
        for (const auto &f : factors_) {
            if (std::holds_alternative<FullLine>(f)) {
                return false;
            }
        }
        return true;
    }

    /// Closure bounds of factor j; a circle reports [0, period].
    [[nodiscard]] std::pair<double, double> bounds(std::size_t j) const {
        return std::visit(
            [](const auto &f) -> std::pair<double, double> {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, Interval>) {
                    return {f.lo, f.hi};
                } else if constexpr (std::is_same_v<T, Circle>) {
                    return {0.0, f.period};
                } else {
                    constexpr double inf =
                        std::numeric_limits<double>::infinity();
                    return {-inf, inf};
                }
            },
            factors_.at(j));
    }

    /// Whether coordinate x lies in factor j (circle coordinates always do).
    [[nodiscard]] bool containsCoord(std::size_t j, double x) const {
        if (!std::isfinite(x)) {
            return false;
        }
        if (const auto *iv = std::get_if<Interval>(&factors_.at(j))) {
            if (x > iv->lo && x < iv->hi) {
                return true;
            }
            return (iv->lo_closed && x == iv->lo) ||
                   (iv->hi_closed && x == iv->hi);
        }
        return true;
    }

    [[nodiscard]] bool contains(const RealVector &x) const {
        if (static_cast<std::size_t>(x.size()) != factors_.size()) {
            return false;
        }
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            if (!containsCoord(j, x(static_cast<Eigen::Index>(j)))) {
                return false;
            }
        }
        return true;
    }

    /// Validates coordinates and reduces circle coordinates to [0, period).
    [[nodiscard]] ParameterPoint point(const RealVector &x) const {
        if (static_cast<std::size_t>(x.size()) != factors_.size()) {
            throw ValidationError("point not in parameter space: expected " +
                                  std::to_string(factors_.size()) +
                                  " coordinates, got " +
                                  std::to_string(x.size()));
        }
        ParameterPoint p{x};
        for (std::size_t j = 0; j < factors_.size(); ++j) {
            const auto jj = static_cast<Eigen::Index>(j);
            if (!containsCoord(j, x(jj))) {
                throw ValidationError(
                    "point not in parameter space: coordinate " +
                    std::to_string(j) + " = " + std::to_string(x(jj)));
            }
            if (const auto *c = std::get_if<Circle>(&factors_[j])) {
                p.coords(jj) = canonicalAngle(x(jj), c->period);
            }
        }
        return p;
    }

    [[nodiscard]] ParameterPoint point(std::initializer_list<double> x) const {
        RealVector v(static_cast<Eigen::Index>(x.size()));
        Eigen::Index i = 0;
        for (double xi : x) {
            v(i++) = xi;
        }
        return point(v);
    }

    /// Distance along factor j; circle factors use the wrap-around distance.
    [[nodiscard]] double coordDistance(std::size_t j, double a,
                                       double b) const {
        const double d = std::abs(a - b);
        if (const auto *c = std::get_if<Circle>(&factors_.at(j))) {
            const double r = std::fmod(d, c->period);
            return std::min(r, c->period - r);
        }
        return d;
    }

    [[nodiscard]] static double canonicalAngle(double x, double period) {
        double r = x - period * std::floor(x / period);
        if (r >= period || r < 0.0) {
            r = 0.0;
        }
        return r;
    }

  private:
    std::vector<Factor> factors_;
};

//===----------------------------------------------------------------------===//
// Gates
//===----------------------------------------------------------------------===//

/// W_j: a fixed unitary on the full register.
struct FixedUnitary {
    ComplexMatrix matrix;
};

/// e^{i·sign·p_j·H} with H on the full register.
struct ParamExp {
    HermitianMatrix generator;
    std::size_t param = 0;
    int sign = -1;
};

/// e^{i·sign·p_j·H} with a 2x2 generator H acting on one wire.
struct ParamSingleQubit {
    HermitianMatrix generator;
    std::size_t wire = 0;
    std::size_t param = 0;
    int sign = -1;
};

struct Cnot {
    std::size_t control = 0;
    std::size_t target = 1;
};

using Gate = std::variant<FixedUnitary, ParamExp, ParamSingleQubit, Cnot>;

/// I ⊗ … ⊗ g ⊗ … ⊗ I with g at tensor position `wire` (0 = leftmost).
[[nodiscard]] inline ComplexMatrix embedSingleQubit(const ComplexMatrix &g,
                                                    std::size_t wire,
                                                    std::size_t num_qubits) {
    if (g.rows() != 2 || g.cols() != 2) {
        throw ValidationError("single-qubit matrix must be 2x2");
    }
    if (wire >= num_qubits) {
        throw ValidationError("wire out of range: " + std::to_string(wire) +
                              " >= " + std::to_string(num_qubits));
    }
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    const Eigen::Index bit = Eigen::Index{1} << (num_qubits - 1 - wire);
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Eigen::Index b = (col & bit) != 0 ? 1 : 0;
        const Eigen::Index base = col & ~bit;
        out(base, col) = g(0, b);
        out(base | bit, col) = g(1, b);
    }
    return out;
}

[[nodiscard]] inline ComplexMatrix cnotMatrix(std::size_t control,
                                              std::size_t target,
                                              std::size_t num_qubits) {
    if (control >= num_qubits || target >= num_qubits) {
        throw ValidationError("wire out of range: CNOT(" +
                              std::to_string(control) + ", " +
                              std::to_string(target) + ") on " +
                              std::to_string(num_qubits) + " qubits");
    }
    if (control == target) {
        throw ValidationError("CNOT control and target coincide");
    }
    const Eigen::Index dim = Eigen::Index{1} << num_qubits;
    const Eigen::Index cbit = Eigen::Index{1} << (num_qubits - 1 - control);
    const Eigen::Index tbit = Eigen::Index{1} << (num_qubits - 1 - target);
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Eigen::Index row = (col & cbit) != 0 ? (col ^ tbit) : col;
        out(row, col) = 1.0;
    }
    return out;
}

[[nodiscard]] inline ComplexMatrix pauliX() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
[[nodiscard]] inline ComplexMatrix pauliY() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}
[[nodiscard]] inline ComplexMatrix pauliZ() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

//===----------------------------------------------------------------------===//
// Circuit
//===----------------------------------------------------------------------===//

/// A gate lowered to the full register. Parameterized kernels keep the
/// spectrum of their generator so evaluation at a point is one diagonal
/// scaling and two products.
struct GateKernel {
    std::optional<std::size_t> param;
    int sign = -1;
    ComplexMatrix fixed;       // non-parameterized gates
    ComplexMatrix generator;   // parameterized gates, full register
    Spectrum spectrum;         // of `generator`

    [[nodiscard]] ComplexMatrix matrixAt(double x) const {
        if (!param) {
            return fixed;
        }
        return expmIHermitian(spectrum, static_cast<double>(sign) * x);
    }
};

class Circuit {
  public:
    static constexpr double kStateNormTol = 1e-12;
    static constexpr double kFixedUnitaryTol = 1e-10;

    Circuit() = default;

    Circuit(std::size_t num_qubits, std::size_t num_params,
            std::vector<Gate> gates, ComplexVector initial_state,
            std::vector<std::string> param_names = {})
        : num_qubits_(num_qubits), num_params_(num_params),
          gates_(std::move(gates)), initial_(std::move(initial_state)),
          names_(std::move(param_names)) {
        if (num_qubits_ == 0 || num_qubits_ > 20) {
            throw ValidationError("qubit count must be in [1, 20]");
        }
        const auto dim = static_cast<Eigen::Index>(std::size_t{1}
                                                   << num_qubits_);
        if (initial_.size() != dim) {
            throw ValidationError("initial state has dimension " +
                                  std::to_string(initial_.size()) +
                                  ", expected " + std::to_string(dim));
        }
        if (!allFinite(initial_) ||
            std::abs(initial_.norm() - 1.0) > kStateNormTol) {
            throw ValidationError("initial state is not a unit vector");
        }
        if (names_.empty()) {
            for (std::size_t j = 0; j < num_params_; ++j) {
                names_.push_back("p" + std::to_string(j));
            }
        }
        if (names_.size() != num_params_) {
            throw ValidationError("parameter name count does not match k");
        }
        std::vector<std::size_t> uses(num_params_, 0);
        kernels_.reserve(gates_.size());
        for (std::size_t g = 0; g < gates_.size(); ++g) {
            kernels_.push_back(lower(g, uses));
        }
        for (std::size_t j = 0; j < num_params_; ++j) {
            if (uses[j] == 0) {
                throw ValidationError("parameter '" + names_[j] +
                                      "' drives no gate");
            }
            if (uses[j] > 1) {
                shared_ = true;
            }
        }
    }

    [[nodiscard]] std::size_t numQubits() const noexcept { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const noexcept {
        return std::size_t{1} << num_qubits_;
    }
    [[nodiscard]] std::size_t numParams() const noexcept { return num_params_; }
    [[nodiscard]] const std::vector<Gate> &gates() const noexcept {
        return gates_;
    }
    [[nodiscard]] const std::vector<GateKernel> &kernels() const noexcept {
        return kernels_;
    }
    [[nodiscard]] const ComplexVector &initialState() const noexcept {
        return initial_;
    }
    [[nodiscard]] const std::vector<std::string> &paramNames() const noexcept {
        return names_;
    }
    /// True when some parameter drives more than one gate.
    [[nodiscard]] bool hasSharedParameters() const noexcept { return shared_; }

    /// Indices of the gates driven by parameter j.
    [[nodiscard]] std::vector<std::size_t> gatesOf(std::size_t j) const {
        std::vector<std::size_t> out;
        for (std::size_t g = 0; g < kernels_.size(); ++g) {
            if (kernels_[g].param == j) {
                out.push_back(g);
            }
        }
        return out;
    }

  private:
    GateKernel lower(std::size_t index, std::vector<std::size_t> &uses) const {
        const auto dim = static_cast<Eigen::Index>(dim_());
        const std::string where = "gate " + std::to_string(index) + ": ";
        auto checkParam = [&](std::size_t p) {
            if (p >= num_params_) {
                throw ValidationError(where + "parameter index " +
                                      std::to_string(p) + " >= k = " +
                                      std::to_string(num_params_));
            }
            ++uses[p];
        };
        auto checkSign = [&](int s) {
            if (s != 1 && s != -1) {
                throw ValidationError(where + "sign must be +1 or -1");
            }
        };
        GateKernel k;
        std::visit(
            [&](const auto &g) {
                using T = std::decay_t<decltype(g)>;
                if constexpr (std::is_same_v<T, FixedUnitary>) {
                    if (g.matrix.rows() != dim || g.matrix.cols() != dim) {
                        throw ValidationError(where +
                                              "fixed matrix has wrong size");
                    }
                    if (!isUnitary(g.matrix, kFixedUnitaryTol)) {
                        throw ValidationError(where +
                                              "fixed matrix is not unitary");
                    }
                    k.fixed = g.matrix;
                } else if constexpr (std::is_same_v<T, Cnot>) {
                    k.fixed = cnotMatrix(g.control, g.target, num_qubits_);
                } else {
                    checkParam(g.param);
                    checkSign(g.sign);
                    k.param = g.param;
                    k.sign = g.sign;
                    if constexpr (std::is_same_v<T, ParamExp>) {
                        if (static_cast<Eigen::Index>(g.generator.dim()) !=
                            dim) {
                            throw ValidationError(
                                where + "generator has wrong size");
                        }
                        k.generator = g.generator.matrix();
                    } else {
                        if (g.generator.dim() != 2) {
                            throw ValidationError(
                                where + "single-qubit generator must be 2x2");
                        }
                        k.generator = embedSingleQubit(g.generator.matrix(),
                                                       g.wire, num_qubits_);
                    }
                    k.spectrum = eigHermitian(HermitianMatrix(k.generator));
                }
            },
            gates_[index]);
        return k;
    }

    [[nodiscard]] std::size_t dim_() const noexcept {
        return std::size_t{1} << num_qubits_;
    }

    std::size_t num_qubits_ = 1;
    std::size_t num_params_ = 0;
    std::vector<Gate> gates_;
    std::vector<GateKernel> kernels_;
    ComplexVector initial_;
    std::vector<std::string> names_;
    bool shared_ = false;
};

/// G_m ··· G_1 at parameter values x.
[[nodiscard]] inline ComplexMatrix compileUnitary(const Circuit &c,
                                                  const RealVector &x) {
    if (static_cast<std::size_t>(x.size()) != c.numParams()) {
        throw ValidationError("expected " + std::to_string(c.numParams()) +
                              " parameters, got " + std::to_string(x.size()));
    }
    const auto dim = static_cast<Eigen::Index>(c.dim());
    ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
    for (const auto &k : c.kernels()) {
        const double xv =
            k.param ? x(static_cast<Eigen::Index>(*k.param)) : 0.0;
        u = k.matrixAt(xv) * u;
    }
    return u;
}

[[nodiscard]] inline ComplexMatrix compileUnitary(const Circuit &c,
                                                  const ParameterPoint &p) {
    return compileUnitary(c, p.coords);
}

[[nodiscard]] inline ComplexVector applyToState(const ComplexMatrix &u,
                                                const ComplexVector &s) {
    if (u.cols() != s.size()) {
        throw ValidationError("applyToState: dimension mismatch");
    }
    return u * s;
}

/// |b_0 b_1 … ⟩ with b_0 on wire 0.
[[nodiscard]] inline ComplexVector basisState(std::string_view bits) {
    if (bits.empty() || bits.size() > 20) {
        throw ValidationError("bitstring must have 1..20 bits");
    }
    std::size_t index = 0;
    for (char b : bits) {
        if (b != '0' && b != '1') {
            throw ValidationError("bitstring must contain only 0 and 1");
        }
        index = (index << 1) | static_cast<std::size_t>(b - '0');
    }
    ComplexVector v =
        ComplexVector::Zero(static_cast<Eigen::Index>(1) << bits.size());
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

} // namespace pqcgeo
