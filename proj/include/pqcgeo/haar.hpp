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
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/QR>

#include "circuit.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "parallel.hpp"
#include "statemap.hpp"

/// @file haar.hpp
/// Haar-random unitaries and the projector-average expressivity metric
///   η = ‖ E_Haar |ψ⟩⟨ψ| − E_p |φ_p⟩⟨φ_p| ‖.
/// Every draw is addressed by (seed, stream, dim, index), so samples do not
/// depend on how work is split across threads.

namespace pqcgeo {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t &state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Engine for one draw.
inline std::mt19937_64 drawEngine(std::uint64_t seed, std::uint64_t stream,
                                  std::uint64_t dim, std::uint64_t index) {
    std::uint64_t s = seed;
    std::uint64_t key = splitmix64(s);
    s ^= stream * 0xD1B54A32D192ED03ULL;
    key ^= splitmix64(s);
    s ^= dim * 0x8CB92BA72F3D8DD7ULL;
    key ^= splitmix64(s);
    s ^= index * 0xABC98388FB8FAC03ULL;
    key ^= splitmix64(s);
    return std::mt19937_64(key);
}

/// Uniform in (0, 1), 53 bits.
inline double uniformOpen(std::mt19937_64 &eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

/// Standard complex Gaussian, E|z|² = 1 (Box–Muller; std::normal_distribution
/// is implementation-defined).
inline Complex complexGaussian(std::mt19937_64 &eng) {
    const double u1 = uniformOpen(eng);
    const double u2 = uniformOpen(eng);
    const double r = std::sqrt(-std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(t), r * std::sin(t)};
}

} // namespace detail

/// Haar unitary number `index` of the given stream: Ginibre matrix, QR, and
/// Q·diag(R_ii/|R_ii|) so the triangular factor has a positive diagonal.
[[nodiscard]] inline ComplexMatrix haarUnitary(std::uint64_t seed,
                                               std::size_t dim,
                                               std::uint64_t index,
                                               std::uint64_t stream = 0) {
    if (dim == 0) {
        throw ValidationError("Haar sampling needs dim >= 1");
    }
    auto eng = detail::drawEngine(seed, stream, dim, index);
    const auto n = static_cast<Eigen::Index>(dim);
    ComplexMatrix g(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        for (Eigen::Index r = 0; r < n; ++r) {
            g(r, c) = detail::complexGaussian(eng);
        }
    }
    const Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    const ComplexMatrix &rr = qr.matrixQR();
    for (Eigen::Index j = 0; j < n; ++j) {
        const double a = std::abs(rr(j, j));
        if (a > 0.0) {
            q.col(j) *= rr(j, j) / a;
        }
    }
    return q;
}

/// Stateful view of a draw stream: each call to next() advances the counter.
struct SeededSampler {
    std::uint64_t seed = 0;
    std::size_t dim = 1;
    std::uint64_t counter = 0;
    std::uint64_t stream = 0;

    ComplexMatrix next() { return haarUnitary(seed, dim, counter++, stream); }
};

[[nodiscard]] inline ComplexMatrix haarUnitary(SeededSampler &sampler) {
    return sampler.next();
}

/// Uniform draw from a bounded parameter space. Open endpoints are never
/// hit since the unit draw lies in (0, 1).
[[nodiscard]] inline RealVector uniformParameters(const ParameterSpace &space,
                                                  std::mt19937_64 &eng) {
    RealVector x(static_cast<Eigen::Index>(space.size()));
    for (std::size_t j = 0; j < space.size(); ++j) {
        const double u = detail::uniformOpen(eng);
        const auto &f = space.factor(j);
        double v = 0.0;
        if (const auto *iv = std::get_if<Interval>(&f)) {
            v = iv->lo + u * (iv->hi - iv->lo);
        } else if (const auto *c = std::get_if<Circle>(&f)) {
            v = u * c->period;
        } else {
            throw ValidationError(
                "uniform measure on ℙ undefined; bound the parameter space");
        }
        x(static_cast<Eigen::Index>(j)) = v;
    }
    return x;
}

enum class MatrixNorm { Frobenius, Trace };

[[nodiscard]] inline std::string normName(MatrixNorm n) {
    return n == MatrixNorm::Frobenius ? "frobenius" : "trace";
}

[[nodiscard]] inline MatrixNorm parseNorm(const std::string &s) {
    if (s == "frobenius") {
        return MatrixNorm::Frobenius;
    }
    if (s == "trace") {
        return MatrixNorm::Trace;
    }
    throw ValidationError("unknown norm '" + s +
                          "' (expected frobenius or trace)");
}

/// Norm of a Hermitian matrix. The trace norm is the sum of |eigenvalues|.
[[nodiscard]] inline double hermitianNorm(const ComplexMatrix &d,
                                          MatrixNorm norm) {
    if (norm == MatrixNorm::Frobenius) {
        return d.norm();
    }
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(
        d, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
        throw NumericalError("trace norm: eigensolver failed");
    }
    return es.eigenvalues().cwiseAbs().sum();
}

struct ExpressivityOptions {
    std::size_t param_samples = 20000;
    std::size_t haar_samples = 20000;
    MatrixNorm norm = MatrixNorm::Frobenius;
    std::uint64_t seed = 0;
    std::size_t bootstrap_replicates = 200;
    std::size_t threads = 1;
    /// Replace the ansatz draws by an independent set of Haar draws.
    bool self_test = false;
};

struct ExpressivityReport {
    double eta = 0.0;
    std::string norm_name;
    std::size_t haar_samples = 0;
    std::size_t param_samples = 0;
    std::uint64_t seed = 0;
    ComplexMatrix haar_mean;
    ComplexMatrix ansatz_mean;
    /// Bootstrap standard error: RMS of ‖D* − D‖ over replicates, where D is
    /// the mean difference and D* its resampled counterpart.
    double std_error = 0.0;
    std::size_t bootstrap_replicates = 0;
    bool self_test = false;
    std::vector<std::string> notes;
};

namespace detail {

inline constexpr std::size_t kReduceBlock = 64;

/// Σ_i w_i |ψ_i⟩⟨ψ_i| over fixed blocks, combined by a pairwise tree. The
/// block layout depends only on the sample count.
inline ComplexMatrix projectorSum(const std::vector<ComplexVector> &states,
                                  const std::vector<double> *weights,
                                  std::size_t threads) {
    const auto n = states.front().size();
    const std::size_t blocks =
        (states.size() + kReduceBlock - 1) / kReduceBlock;
    std::vector<ComplexMatrix> partial(blocks);
    parallelFor(blocks, threads, [&](std::size_t b) {
        ComplexMatrix acc = ComplexMatrix::Zero(n, n);
        const std::size_t hi = std::min(states.size(), (b + 1) * kReduceBlock);
        for (std::size_t i = b * kReduceBlock; i < hi; ++i) {
            const double w = weights ? (*weights)[i] : 1.0;
            if (w != 0.0) {
                acc.noalias() += w * states[i] * states[i].adjoint();
            }
        }
        partial[b] = std::move(acc);
    });
    for (std::size_t stride = 1; stride < blocks; stride *= 2) {
        for (std::size_t i = 0; i + stride < blocks; i += 2 * stride) {
            partial[i] += partial[i + stride];
        }
    }
    return partial.front();
}

inline std::vector<double> bootstrapWeights(std::size_t count,
                                            std::uint64_t seed,
                                            std::uint64_t stream,
                                            std::uint64_t replicate) {
    auto eng = drawEngine(seed, stream, count, replicate);
    std::vector<double> w(count, 0.0);
    for (std::size_t i = 0; i < count; ++i) {
        const auto pick = static_cast<std::size_t>(
            uniformOpen(eng) * static_cast<double>(count));
        w[std::min(pick, count - 1)] += 1.0;
    }
    return w;
}

} // namespace detail

/// Stream ids; distinct so Haar, parameter and bootstrap draws never share
/// an engine.
inline constexpr std::uint64_t kStreamHaar = 0;
inline constexpr std::uint64_t kStreamParams = 1;
inline constexpr std::uint64_t kStreamSelfTest = 2;
inline constexpr std::uint64_t kStreamBootHaar = 3;
inline constexpr std::uint64_t kStreamBootAnsatz = 4;

[[nodiscard]] inline ExpressivityReport
expressivityEta(const Circuit &c, const ParameterSpace &space,
                const ExpressivityOptions &opt) {
    if (opt.param_samples == 0 || opt.haar_samples == 0) {
        throw ValidationError("sample counts must be > 0");
    }
    if (space.size() != c.numParams()) {
        throw ValidationError("parameter space does not match the circuit");
    }
    if (!opt.self_test && !space.bounded()) {
        throw ValidationError(
            "uniform measure on ℙ undefined; bound the parameter space");
    }
    const std::size_t dim = c.dim();
    const ComplexVector &iota = c.initialState();

    std::vector<ComplexVector> haar(opt.haar_samples);
    parallelFor(haar.size(), opt.threads, [&](std::size_t i) {
        haar[i] = haarUnitary(opt.seed, dim, i, kStreamHaar) * iota;
    });
    std::vector<ComplexVector> ansatz(opt.param_samples);
    parallelFor(ansatz.size(), opt.threads, [&](std::size_t i) {
        if (opt.self_test) {
            ansatz[i] = haarUnitary(opt.seed, dim, i, kStreamSelfTest) * iota;
        } else {
            auto eng = detail::drawEngine(opt.seed, kStreamParams,
                                          space.size(), i);
            ansatz[i] = stateVector(c, uniformParameters(space, eng));
        }
    });

    ExpressivityReport out;
    out.norm_name = normName(opt.norm);
    out.haar_samples = opt.haar_samples;
    out.param_samples = opt.param_samples;
    out.seed = opt.seed;
    out.self_test = opt.self_test;
    out.haar_mean = detail::projectorSum(haar, nullptr, opt.threads) /
                    static_cast<double>(haar.size());
    out.ansatz_mean = detail::projectorSum(ansatz, nullptr, opt.threads) /
                      static_cast<double>(ansatz.size());
    const ComplexMatrix diff = out.haar_mean - out.ansatz_mean;
    out.eta = hermitianNorm(diff, opt.norm);

    out.bootstrap_replicates = opt.bootstrap_replicates;
    if (opt.bootstrap_replicates > 0) {
        std::vector<double> sq(opt.bootstrap_replicates, 0.0);
        for (std::size_t r = 0; r < opt.bootstrap_replicates; ++r) {
            const auto wh = detail::bootstrapWeights(haar.size(), opt.seed,
                                                     kStreamBootHaar, r);
            const auto wa = detail::bootstrapWeights(
                ansatz.size(), opt.seed, kStreamBootAnsatz, r);
            const ComplexMatrix hm =
                detail::projectorSum(haar, &wh, opt.threads) /
                static_cast<double>(haar.size());
            const ComplexMatrix am =
                detail::projectorSum(ansatz, &wa, opt.threads) /
                static_cast<double>(ansatz.size());
            const double e = hermitianNorm(hm - am - diff, opt.norm);
            sq[r] = e * e;
        }
        double acc = 0.0;
        for (double v : sq) {
            acc += v;
        }
        out.std_error =
            std::sqrt(acc / static_cast<double>(opt.bootstrap_replicates));
    }

    out.notes.push_back("Haar states are U|iota> with the circuit's initial "
                        "state |iota>, not |0>");
    out.notes.push_back("parameters drawn from the uniform product measure on "
                        "the parameter space");
    if (opt.self_test) {
        out.notes.push_back("self-test: ansatz draws replaced by independent "
                            "Haar draws");
    }
    return out;
}

} // namespace pqcgeo
