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

#include <cstdint>
#include <random>
#include <vector>

#include <pqcgeo/pqcgeo.hpp>

namespace pqcgeo::testing {

inline ComplexMatrix randomComplex(std::mt19937_64 &rng, Eigen::Index rows,
                                   Eigen::Index cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = {n(rng), n(rng)};
        }
    }
    return m;
}

inline ComplexMatrix randomHermitian(std::mt19937_64 &rng, Eigen::Index n) {
    const ComplexMatrix a = randomComplex(rng, n, n);
    return (a + a.adjoint()) / 2.0;
}

inline ComplexVector randomState(std::mt19937_64 &rng, Eigen::Index n) {
    ComplexVector v = randomComplex(rng, n, 1);
    return v / v.norm();
}

/// Random circuit with every gate kind. Each parameter drives at least one
/// gate; some drive two.
inline Circuit randomCircuit(std::mt19937_64 &rng, std::size_t max_qubits,
                             std::size_t max_params) {
    std::uniform_int_distribution<std::size_t> nq_d(1, max_qubits);
    std::uniform_int_distribution<std::size_t> k_d(1, max_params);
    const std::size_t nq = nq_d(rng);
    const std::size_t k = k_d(rng);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << nq);
    std::uniform_int_distribution<std::size_t> wire_d(0, nq - 1);
    std::uniform_int_distribution<int> kind_d(0, 4);
    std::uniform_int_distribution<int> sign_d(0, 1);

    auto paramGate = [&](std::size_t j) -> Gate {
        const int sign = sign_d(rng) ? 1 : -1;
        if (kind_d(rng) % 2 == 0) {
            return ParamExp{HermitianMatrix(randomHermitian(rng, dim)), j,
                            sign};
        }
        return ParamSingleQubit{HermitianMatrix(randomHermitian(rng, 2)),
                                wire_d(rng), j, sign};
    };

    std::vector<Gate> gates;
    std::vector<std::size_t> order(k);
    for (std::size_t j = 0; j < k; ++j) {
        order[j] = j;
    }
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t j : order) {
        gates.push_back(paramGate(j));
        const int extra = kind_d(rng);
        if (extra == 0) {
            gates.push_back(paramGate(j)); // shared parameter
        } else if (extra == 1) {
            const ComplexMatrix h = randomHermitian(rng, dim);
            gates.push_back(FixedUnitary{
                expmIHermitian(HermitianMatrix(h), 1.0)});
        } else if (extra == 2 && nq >= 2) {
            std::size_t c = wire_d(rng);
            std::size_t t = wire_d(rng);
            while (t == c) {
                t = wire_d(rng);
            }
            gates.push_back(Cnot{c, t});
        }
    }
    return Circuit(nq, k, std::move(gates), randomState(rng, dim));
}

inline RealVector randomPoint(std::mt19937_64 &rng, std::size_t k,
                              double lo = -3.0, double hi = 3.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    RealVector x(static_cast<Eigen::Index>(k));
    for (auto &v : x) {
        v = u(rng);
    }
    return x;
}

/// Pauli basis of su(2) ⊗ … plus identity: the n² Hermitian matrices
/// E_jj, (E_jk + E_kj)/√2, i(E_jk − E_kj)/√2.
inline std::vector<ComplexMatrix> hermitianBasis(Eigen::Index n) {
    std::vector<ComplexMatrix> out;
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index j = 0; j < n; ++j) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(j, j) = 1.0;
        out.push_back(e);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index k = j + 1; k < n; ++k) {
            ComplexMatrix e = ComplexMatrix::Zero(n, n);
            e(j, k) = s;
            e(k, j) = s;
            out.push_back(e);
            ComplexMatrix f = ComplexMatrix::Zero(n, n);
            f(j, k) = Complex(0.0, -s);
            f(k, j) = Complex(0.0, s);
            out.push_back(f);
        }
    }
    return out;
}

/// One layer e^{-i p_1 B_1} ⋯ e^{-i p_{n²} B_{n²}} over a Hermitian basis of
/// dimension n (n must be a power of two for a qubit register; other n use
/// the smallest register and a generator padded by zeros).
inline Circuit fullBasisLayer(std::size_t nq, Eigen::Index n) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << nq);
    std::vector<Gate> gates;
    const auto basis = hermitianBasis(n);
    for (std::size_t j = 0; j < basis.size(); ++j) {
        ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
        g.topLeftCorner(n, n) = basis[j];
        gates.push_back(ParamExp{HermitianMatrix(g), j, -1});
    }
    return Circuit(nq, basis.size(), std::move(gates),
                   basisState(std::string(nq, '0')));
}

} // namespace pqcgeo::testing
