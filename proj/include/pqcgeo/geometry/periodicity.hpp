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
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>
#include <vector>

#include "../error.hpp"
#include "../linalg.hpp"

/// @file periodicity.hpp
/// Decides whether x ↦ e^{ixH} is periodic. It is periodic with period T iff
/// every eigenvalue λ_j satisfies λ_j·T ∈ 2πZ, which requires all ratios
/// λ_j / λ_ref to be rational. Ratios are recognized by continued fractions
/// up to a denominator bound; an aperiodic answer means "no period with a
/// common denominator within the bound".

namespace pqcgeo {

struct PeriodicityOptions {
    std::uint64_t denominator_bound = 1000000;
    /// Eigenvalues with |λ| below this count as zero.
    double zero_tol = 1e-10;
    /// Allowed |λ_j·T/2π − m_j| for a candidate period.
    double phase_tol = 1e-9;
    /// Required ‖e^{iTH} − I‖_F of a returned period.
    double verify_tol = 1e-9;
};

struct PeriodicityResult {
    enum class Kind { Periodic, Aperiodic, Constant };

    Kind kind = Kind::Aperiodic;
    std::optional<double> period;
    RealVector eigenvalues;
    /// ‖e^{iTH} − I‖_F at the returned period.
    std::optional<double> residual;

    [[nodiscard]] bool periodic() const { return kind == Kind::Periodic; }
};

namespace detail {

/// Convergents p/q of the continued fraction of x with q ≤ bound.
inline std::vector<std::pair<std::int64_t, std::int64_t>>
convergents(double x, std::uint64_t bound) {
    std::vector<std::pair<std::int64_t, std::int64_t>> out;
    // h_{-1}/k_{-1} = 1/0, h_{-2}/k_{-2} = 0/1
    std::int64_t h1 = 1;
    std::int64_t k1 = 0;
    std::int64_t h2 = 0;
    std::int64_t k2 = 1;
    double r = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(r);
        if (std::abs(fl) > 9e15) {
            break;
        }
        const auto a = static_cast<std::int64_t>(fl);
        const std::int64_t h = a * h1 + h2;
        const std::int64_t k = a * k1 + k2;
        if (k > static_cast<std::int64_t>(bound)) {
            break;
        }
        out.emplace_back(h, k);
        const double frac = r - fl;
        if (frac < 1e-15) {
            break;
        }
        r = 1.0 / frac;
        h2 = h1;
        k2 = k1;
        h1 = h;
        k1 = k;
    }
    return out;
}

} // namespace detail

[[nodiscard]] inline PeriodicityResult
periodicity(const HermitianMatrix &h, const PeriodicityOptions &opt = {}) {
    PeriodicityResult out;
    const Spectrum spec = eigHermitian(h);
    out.eigenvalues = spec.eigenvalues;

    std::vector<double> nonzero;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
        if (std::abs(spec.eigenvalues(i)) >= opt.zero_tol) {
            nonzero.push_back(spec.eigenvalues(i));
        }
    }
    if (nonzero.empty()) {
        out.kind = PeriodicityResult::Kind::Constant;
        return out;
    }
    // Reference: the eigenvalue of largest magnitude, so |ratios| <= 1.
    double ref = nonzero.front();
    for (double l : nonzero) {
        if (std::abs(l) > std::abs(ref)) {
            ref = l;
        }
    }

    std::int64_t common = 1; // lcm of denominators
    std::vector<std::pair<std::int64_t, std::int64_t>> fracs;
    for (double l : nonzero) {
        const double ratio = l / ref;
        std::optional<std::pair<std::int64_t, std::int64_t>> hit;
        for (const auto &[p, q] :
             detail::convergents(ratio, opt.denominator_bound)) {
            if (std::abs(ratio * static_cast<double>(q) -
                         static_cast<double>(p)) <= opt.phase_tol) {
                hit = std::make_pair(p, q);
                break;
            }
        }
        if (!hit) {
            return out; // irrational at this bound
        }
        common = std::lcm(common, hit->second);
        if (common > static_cast<std::int64_t>(opt.denominator_bound)) {
            return out;
        }
        fracs.push_back(*hit);
    }
    std::int64_t g = 0;
    for (const auto &[p, q] : fracs) {
        g = std::gcd(g, std::abs(p * (common / q)));
    }
    // λ_ref·T/2π = common/g makes every λ_j·T/2π = p_j·(common/q_j)/g.
    const double period = 2.0 * std::numbers::pi * static_cast<double>(common) /
                          (static_cast<double>(g) * std::abs(ref));
    // Approximants that are close per ratio can still drift apart once
    // scaled by the common denominator; such a T is not a period.
    const double turn_tol =
        opt.verify_tol /
        (4.0 * std::numbers::pi *
         std::sqrt(static_cast<double>(spec.eigenvalues.size())));
    for (double l : nonzero) {
        const double turns = l * period / (2.0 * std::numbers::pi);
        if (std::abs(turns - std::round(turns)) > turn_tol) {
            return out;
        }
    }
    const ComplexMatrix u = expmIHermitian(spec, period);
    const double residual =
        (u - ComplexMatrix::Identity(u.rows(), u.cols())).norm();
    if (!(residual < opt.verify_tol)) {
        std::ostringstream os;
        os << "periodicity: candidate period " << period
           << " fails verification (||e^{iTH} - I||_F = " << residual << ")";
        throw NumericalError(os.str());
    }
    out.kind = PeriodicityResult::Kind::Periodic;
    out.period = period;
    out.residual = residual;
    return out;
}

} // namespace pqcgeo
