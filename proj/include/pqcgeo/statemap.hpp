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
#include <sstream>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "linalg.hpp"
#include "matrix_io.hpp"

/// @file statemap.hpp
/// The state map p ↦ C(p)|ι⟩ and the unitary map p ↦ C(p), realified, with
/// their Jacobians.
///
/// Realification interleaves (Re, Im) per complex coordinate:
/// c ↦ [Re c_1, Im c_1, …, Re c_n, Im c_n]. Matrices are vectorized row-major
/// before realification. States therefore live on the real unit sphere
/// S^{2n−1} ⊂ R^{2n}; the global phase is not quotiented out.

namespace pqcgeo {

template <class Derived>
[[nodiscard]] RealVector realify(const Eigen::MatrixBase<Derived> &v) {
    const Eigen::Index n = v.size();
    RealVector out(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
        out(2 * i) = v(i).real();
        out(2 * i + 1) = v(i).imag();
    }
    return out;
}

/// Row-major vectorization followed by realification.
[[nodiscard]] inline RealVector realifyMatrix(const ComplexMatrix &m) {
    RealVector out(2 * m.size());
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            out(k++) = m(i, j).real();
            out(k++) = m(i, j).imag();
        }
    }
    return out;
}

[[nodiscard]] inline ComplexVector complexify(const RealVector &r) {
    ComplexVector out(r.size() / 2);
    for (Eigen::Index i = 0; i < out.size(); ++i) {
        out(i) = Complex(r(2 * i), r(2 * i + 1));
    }
    return out;
}

struct RealJacobian {
    RealMatrix matrix;
    ParameterPoint base_point;
    /// Per column: true when a one-sided difference was used.
    std::vector<bool> one_sided;
};

[[nodiscard]] inline ComplexVector stateVector(const Circuit &c,
                                               const RealVector &x) {
    ComplexVector psi = c.initialState();
    for (const auto &k : c.kernels()) {
        const double xv =
            k.param ? x(static_cast<Eigen::Index>(*k.param)) : 0.0;
        psi = k.matrixAt(xv) * psi;
    }
    return psi;
}

/// Realified C(p)|ι⟩ (a unit vector in R^{2n}).
[[nodiscard]] inline RealVector stateMap(const Circuit &c,
                                         const RealVector &x) {
    return realify(stateVector(c, x));
}

[[nodiscard]] inline RealVector stateMap(const Circuit &c,
                                         const ParameterPoint &p) {
    return stateMap(c, p.coords);
}

/// Realified row-major vec(C(p)).
[[nodiscard]] inline RealVector unitaryMap(const Circuit &c,
                                           const RealVector &x) {
    return realifyMatrix(compileUnitary(c, x));
}

enum class JacobianPath {
    /// Forward tangent propagation; each gate is applied once per parameter.
    Prefix,
    /// Rebuilds prefix and suffix products for every parameterized gate.
    /// Quadratic in the gate count; kept for differential testing.
    Naive
};

namespace detail {

inline void checkArity(const Circuit &c, const RealVector &x) {
    if (static_cast<std::size_t>(x.size()) != c.numParams()) {
        throw ValidationError("expected " + std::to_string(c.numParams()) +
                              " parameters, got " + std::to_string(x.size()));
    }
}

/// Derivative of G_t ··· G_1 X with respect to every parameter, where X is
/// the n×w seed (the initial state for the state map, I for the unitary
/// map). Column block j of the result is the derivative for parameter j.
inline std::vector<ComplexMatrix> tangents(const Circuit &c,
                                           const RealVector &x,
                                           const ComplexMatrix &seed,
                                           JacobianPath path) {
    const std::size_t k = c.numParams();
    const auto &kernels = c.kernels();
    std::vector<ComplexMatrix> d(
        k, ComplexMatrix::Zero(seed.rows(), seed.cols()));
    const Complex i1(0.0, 1.0);

    std::vector<ComplexMatrix> mats;
    mats.reserve(kernels.size());
    for (const auto &kr : kernels) {
        mats.push_back(kr.matrixAt(
            kr.param ? x(static_cast<Eigen::Index>(*kr.param)) : 0.0));
    }

    if (path == JacobianPath::Prefix) {
        ComplexMatrix state = seed;
        for (std::size_t t = 0; t < kernels.size(); ++t) {
            for (std::size_t j = 0; j < k; ++j) {
                d[j] = mats[t] * d[j];
            }
            state = mats[t] * state;
            if (kernels[t].param) {
                d[*kernels[t].param] +=
                    (i1 * static_cast<double>(kernels[t].sign)) *
                    (kernels[t].generator * state);
            }
        }
        return d;
    }

    const auto dim = static_cast<Eigen::Index>(c.dim());
    for (std::size_t t = 0; t < kernels.size(); ++t) {
        if (!kernels[t].param) {
            continue;
        }
        ComplexMatrix prefix = seed;
        for (std::size_t s = 0; s <= t; ++s) {
            prefix = mats[s] * prefix;
        }
        ComplexMatrix suffix = ComplexMatrix::Identity(dim, dim);
        for (std::size_t s = t + 1; s < kernels.size(); ++s) {
            suffix = mats[s] * suffix;
        }
        d[*kernels[t].param] +=
            suffix * ((i1 * static_cast<double>(kernels[t].sign)) *
                      (kernels[t].generator * prefix));
    }
    return d;
}

} // namespace detail

/// Analytic Jacobian of the realified state map; column j sums the
/// product-rule terms of every gate driven by parameter j.
[[nodiscard]] inline RealJacobian
jacobianAnalytic(const Circuit &c, const ParameterPoint &p,
                 JacobianPath path = JacobianPath::Prefix) {
    detail::checkArity(c, p.coords);
    const auto d = detail::tangents(c, p.coords, c.initialState(), path);
    RealJacobian out;
    out.base_point = p;
    out.matrix.resize(static_cast<Eigen::Index>(2 * c.dim()),
                      static_cast<Eigen::Index>(c.numParams()));
    for (std::size_t j = 0; j < d.size(); ++j) {
        out.matrix.col(static_cast<Eigen::Index>(j)) = realify(d[j].col(0));
    }
    out.one_sided.assign(c.numParams(), false);
    return out;
}

/// Analytic Jacobian of the realified unitary map (2n² rows).
[[nodiscard]] inline RealJacobian
unitaryJacobian(const Circuit &c, const ParameterPoint &p,
                JacobianPath path = JacobianPath::Prefix) {
    detail::checkArity(c, p.coords);
    const auto dim = static_cast<Eigen::Index>(c.dim());
    const auto d = detail::tangents(c, p.coords,
                                    ComplexMatrix::Identity(dim, dim), path);
    RealJacobian out;
    out.base_point = p;
    out.matrix.resize(2 * dim * dim,
                      static_cast<Eigen::Index>(c.numParams()));
    for (std::size_t j = 0; j < d.size(); ++j) {
        out.matrix.col(static_cast<Eigen::Index>(j)) = realifyMatrix(d[j]);
    }
    out.one_sided.assign(c.numParams(), false);
    return out;
}

/// Finite-difference Jacobian of any map R^k → R^m. Column j uses the step
/// h_j = h·max(1, |x_j|) and a central difference, or a one-sided difference
/// when x_j ± h_j leaves `space`.
template <class F>
[[nodiscard]] RealJacobian finiteDifferenceJacobian(F &&f,
                                                    const ParameterSpace &space,
                                                    const ParameterPoint &p,
                                                    double h) {
    const RealVector &x = p.coords;
    const RealVector f0 = f(x);
    RealJacobian out;
    out.base_point = p;
    out.matrix.resize(f0.size(), x.size());
    out.one_sided.assign(static_cast<std::size_t>(x.size()), false);
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        const auto ju = static_cast<std::size_t>(j);
        const double step = h * std::max(1.0, std::abs(x(j)));
        RealVector xp = x;
        RealVector xm = x;
        xp(j) += step;
        xm(j) -= step;
        const bool plus_ok = space.containsCoord(ju, xp(j));
        const bool minus_ok = space.containsCoord(ju, xm(j));
        if (plus_ok && minus_ok) {
            out.matrix.col(j) = (f(xp) - f(xm)) / (2.0 * step);
        } else if (plus_ok) {
            out.matrix.col(j) = (f(xp) - f0) / step;
            out.one_sided[ju] = true;
        } else if (minus_ok) {
            out.matrix.col(j) = (f0 - f(xm)) / step;
            out.one_sided[ju] = true;
        } else {
            throw ValidationError("finite difference step " +
                                  std::to_string(step) +
                                  " leaves the parameter space on both sides "
                                  "of coordinate " +
                                  std::to_string(j));
        }
    }
    return out;
}

[[nodiscard]] inline RealJacobian jacobianFd(const Circuit &c,
                                             const ParameterSpace &space,
                                             const ParameterPoint &p,
                                             double h = 1e-5) {
    detail::checkArity(c, p.coords);
    return finiteDifferenceJacobian(
        [&c](const RealVector &x) { return stateMap(c, x); }, space, p, h);
}

[[nodiscard]] inline RealJacobian unitaryJacobianFd(const Circuit &c,
                                                    const ParameterSpace &space,
                                                    const ParameterPoint &p,
                                                    double h = 1e-5) {
    detail::checkArity(c, p.coords);
    return finiteDifferenceJacobian(
        [&c](const RealVector &x) { return unitaryMap(c, x); }, space, p, h);
}

/// Distance from v to the span of the columns of J whose singular values
/// exceed `threshold`, relative to ‖v‖.
[[nodiscard]] inline double spanResidual(const RealMatrix &jac,
                                         const RealVector &v,
                                         double threshold) {
    const double vn = v.norm();
    if (vn == 0.0) {
        return 0.0;
    }
    if (jac.cols() == 0) {
        return 1.0;
    }
    Eigen::JacobiSVD<RealMatrix> svd(jac, Eigen::ComputeThinU);
    const RealVector &sv = svd.singularValues();
    RealVector proj = RealVector::Zero(v.size());
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        if (sv(i) > threshold) {
            const RealVector u = svd.matrixU().col(i);
            proj += u.dot(v) * u;
        }
    }
    return (v - proj).norm() / vn;
}

/// Realified i·ψ, the global-phase direction at the state ψ.
[[nodiscard]] inline RealVector phaseDirection(const RealVector &state) {
    RealVector out(state.size());
    for (Eigen::Index i = 0; i + 1 < state.size(); i += 2) {
        out(i) = -state(i + 1);
        out(i + 1) = state(i);
    }
    return out;
}

/// `row,col,value` in row-major order.
[[nodiscard]] inline std::string jacobianCsv(const RealMatrix &m) {
    std::ostringstream os;
    os << "row,col,value\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            os << i << "," << j << "," << detail::formatReal(m(i, j)) << "\n";
        }
    }
    return os.str();
}

} // namespace pqcgeo
