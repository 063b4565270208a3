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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "error.hpp"

/// @file linalg.hpp
/// Dense complex-matrix kernel: Hermitian eigendecomposition, the matrix
/// exponential e^{i s H} computed from that decomposition, the principal
/// Hermitian logarithm of a unitary, SVD rank with an auditable threshold,
/// Gram-determinant volumes and a central-difference derivative checker.

namespace pqcgeo {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kDefaultRelTol = 1e-9;

template <class Derived>
[[nodiscard]] bool allFinite(const Eigen::MatrixBase<Derived> &m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const auto v = m(i, j);
            if constexpr (Eigen::NumTraits<
                              typename Derived::Scalar>::IsComplex) {
                if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                    return false;
                }
            } else {
                if (!std::isfinite(v)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// ‖U*U − I‖_F.
[[nodiscard]] inline double unitarityDefect(const ComplexMatrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return (u.adjoint() * u -
            ComplexMatrix::Identity(u.rows(), u.cols()))
        .norm();
}

[[nodiscard]] inline bool isUnitary(const ComplexMatrix &u, double tol) {
    return u.rows() == u.cols() && allFinite(u) && unitarityDefect(u) < tol;
}

/// A square complex matrix validated to be Hermitian at construction:
/// ‖H − H*‖_F ≤ 1e-12 · max(1, ‖H‖_F). The stored matrix is the exact
/// Hermitian part (H + H*)/2 of the input.
class HermitianMatrix {
  public:
    static constexpr double kHermitianTol = 1e-12;

    HermitianMatrix() = default;

    explicit HermitianMatrix(const ComplexMatrix &m) {
        if (m.rows() != m.cols()) {
            throw ValidationError("Hermitian matrix must be square, got " +
                                  std::to_string(m.rows()) + "x" +
                                  std::to_string(m.cols()));
        }
        if (!allFinite(m)) {
            throw ValidationError("matrix has non-finite entries");
        }
        const double defect = (m - m.adjoint()).norm();
        if (defect > kHermitianTol * std::max(1.0, m.norm())) {
            std::ostringstream os;
            os << "matrix is not Hermitian (||H - H*||_F = " << defect << ")";
            throw ValidationError(os.str());
        }
        m_ = (m + m.adjoint()) / 2.0;
    }

    [[nodiscard]] std::size_t dim() const noexcept {
        return static_cast<std::size_t>(m_.rows());
    }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return m_; }

    friend HermitianMatrix operator*(double s, const HermitianMatrix &h) {
        HermitianMatrix r;
        r.m_ = s * h.m_;
        return r;
    }

  private:
    ComplexMatrix m_;
};

/// Eigenvalues in ascending order and the unitary matrix of eigenvectors
/// (as columns): H = T diag(λ) T*.
struct Spectrum {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;
};

[[nodiscard]] inline Spectrum eigHermitian(const HermitianMatrix &h) {
    const auto n = static_cast<Eigen::Index>(h.dim());
    if (n == 0) {
        return {RealVector(0), ComplexMatrix(0, 0)};
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        const RealVector sv =
            h.matrix().jacobiSvd().singularValues();
        std::ostringstream os;
        os << "Hermitian eigensolver did not converge (dim " << n
           << ", ||H||_F = " << h.matrix().norm() << ", cond_2 = "
           << (sv(n - 1) > 0 ? sv(0) / sv(n - 1)
                             : std::numeric_limits<double>::infinity())
           << ")";
        throw NumericalError(os.str());
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

/// e^{i·scale·H} = T diag(e^{i·scale·λ_j}) T* from a precomputed spectrum.
[[nodiscard]] inline ComplexMatrix expmIHermitian(const Spectrum &spec,
                                                  double scale) {
    const Eigen::Index n = spec.eigenvalues.size();
    ComplexVector phases(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const double angle = scale * spec.eigenvalues(j);
        phases(j) = Complex(std::cos(angle), std::sin(angle));
    }
    return spec.eigenvectors * phases.asDiagonal() *
           spec.eigenvectors.adjoint();
}

[[nodiscard]] inline ComplexMatrix expmIHermitian(const HermitianMatrix &h,
                                                  double scale) {
    return expmIHermitian(eigHermitian(h), scale);
}

/// Principal Hermitian logarithm: returns H with e^{iH} = A and the
/// eigenphases of A taken in (−π, π].
[[nodiscard]] inline HermitianMatrix hermitianLog(const ComplexMatrix &a,
                                                  double unitary_tol = 1e-8) {
    if (!isUnitary(a, unitary_tol)) {
        throw ValidationError("hermitianLog: input is not unitary "
                              "(||A*A - I||_F >= " +
                              std::to_string(unitary_tol) + ")");
    }
    const auto n = a.rows();
    if (n == 0) {
        return HermitianMatrix(ComplexMatrix(0, 0));
    }
    // A normal matrix has a diagonal Schur form, and the Schur vectors stay
    // orthonormal under degenerate eigenvalues.
    Eigen::ComplexSchur<ComplexMatrix> schur(a);
    if (schur.info() != Eigen::Success) {
        throw NumericalError("hermitianLog: Schur decomposition did not "
                             "converge (dim " +
                             std::to_string(n) + ")");
    }
    const ComplexMatrix &q = schur.matrixU();
    const ComplexMatrix &t = schur.matrixT();
    RealVector theta(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double phase = std::arg(t(j, j));
        if (phase <= -std::numbers::pi) {
            phase = std::numbers::pi;
        }
        theta(j) = phase;
    }
    ComplexMatrix h = q * theta.cast<Complex>().asDiagonal() * q.adjoint();
    h = (h + h.adjoint()) / 2.0;
    return HermitianMatrix(h);
}

/// Numerical rank of a real matrix, with every singular value and the
/// threshold that was applied.
struct SvdRank {
    std::size_t rank = 0;
    std::vector<double> singular_values;
    double rel_tol = kDefaultRelTol;
    double threshold = 0.0;
};

/// rank = #{σ_i > rel_tol · σ_1 · max(rows, cols)}.
[[nodiscard]] inline SvdRank svdRank(const RealMatrix &m,
                                     double rel_tol = kDefaultRelTol) {
    SvdRank out;
    out.rel_tol = rel_tol;
    if (m.size() == 0) {
        return out;
    }
    if (!allFinite(m)) {
        throw ValidationError("svdRank: matrix has non-finite entries");
    }
    Eigen::JacobiSVD<RealMatrix> svd(m);
    const RealVector &sv = svd.singularValues();
    out.singular_values.assign(sv.data(), sv.data() + sv.size());
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    out.threshold = rel_tol * sigma_max *
                    static_cast<double>(std::max(m.rows(), m.cols()));
    out.rank = static_cast<std::size_t>(
        std::count_if(out.singular_values.begin(), out.singular_values.end(),
                      [&](double s) { return s > out.threshold; }));
    return out;
}

/// Volume of the parallelepiped spanned by the columns of `vectors`:
/// sqrt(det(G)), G_ij = ⟨v_i, v_j⟩.
[[nodiscard]] inline double gramVolume(const RealMatrix &vectors) {
    if (vectors.cols() == 0) {
        return 1.0;
    }
    if (vectors.rows() < vectors.cols()) {
        throw ValidationError("gramVolume: " + std::to_string(vectors.cols()) +
                              " vectors in dimension " +
                              std::to_string(vectors.rows()));
    }
    const RealMatrix gram = vectors.transpose() * vectors;
    const double det = gram.partialPivLu().determinant();
    return std::sqrt(std::max(0.0, det));
}

[[nodiscard]] inline double gramVolume(std::span<const RealVector> vectors) {
    if (vectors.empty()) {
        return 1.0;
    }
    const auto d = vectors.front().size();
    RealMatrix m(d, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != d) {
            throw ValidationError("gramVolume: vector " + std::to_string(j) +
                                  " has dimension " +
                                  std::to_string(vectors[j].size()) +
                                  ", expected " + std::to_string(d));
        }
        m.col(static_cast<Eigen::Index>(j)) = vectors[j];
    }
    return gramVolume(m);
}

/// Central difference (f(A + hV) − f(A − hV)) / 2h.
template <class F>
[[nodiscard]] ComplexMatrix directionalDerivativeFd(F &&f,
                                                    const ComplexMatrix &a,
                                                    const ComplexMatrix &v,
                                                    double h) {
    if (a.rows() != v.rows() || a.cols() != v.cols()) {
        throw ValidationError("directionalDerivativeFd: A and V differ in "
                              "shape");
    }
    const ComplexMatrix plus = f(ComplexMatrix(a + h * v));
    const ComplexMatrix minus = f(ComplexMatrix(a - h * v));
    return (plus - minus) / (2.0 * h);
}

} // namespace pqcgeo
