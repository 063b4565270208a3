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
#include <functional>
#include <numbers>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "../circuit.hpp"
#include "../error.hpp"
#include "../linalg.hpp"

/// @file fixtures.hpp
/// Closed-form maps with exact Jacobians, used to exercise the geometry
/// routines without circuit noise.

namespace pqcgeo {

class FixtureMap {
  public:
    using ValueFn = std::function<RealVector(const RealVector &)>;
    using JacobianFn = std::function<RealMatrix(const RealVector &)>;

    FixtureMap(std::string name, ParameterSpace space, std::size_t codim,
               ValueFn value, JacobianFn jacobian)
        : name_(std::move(name)), space_(std::move(space)), codim_(codim),
          value_(std::move(value)), jacobian_(std::move(jacobian)) {}

    [[nodiscard]] const std::string &name() const { return name_; }
    [[nodiscard]] const ParameterSpace &domain() const { return space_; }
    [[nodiscard]] RealVector value(const RealVector &x) const {
        return value_(x);
    }
    [[nodiscard]] RealMatrix jacobian(const RealVector &x) const {
        return jacobian_(x);
    }
    [[nodiscard]] std::size_t maxRank() const {
        return std::min(space_.size(), codim_);
    }

  private:
    std::string name_;
    ParameterSpace space_;
    std::size_t codim_;
    ValueFn value_;
    JacobianFn jacobian_;
};

namespace fixtures {

/// (x, y) ↦ (x², y²): rank 0 at the origin, 1 on the axes, 2 elsewhere.
[[nodiscard]] inline FixtureMap squares() {
    return FixtureMap(
        "squares", ParameterSpace::lines(2), 2,
        [](const RealVector &x) {
            RealVector v(2);
            v << x(0) * x(0), x(1) * x(1);
            return v;
        },
        [](const RealVector &x) {
            RealMatrix j(2, 2);
            j << 2 * x(0), 0, 0, 2 * x(1);
            return j;
        });
}

/// (x, y) ↦ (y, x² + y): rank 1 on x = 0, 2 elsewhere.
[[nodiscard]] inline FixtureMap rankJump() {
    return FixtureMap(
        "rank_jump", ParameterSpace::lines(2), 2,
        [](const RealVector &x) {
            RealVector v(2);
            v << x(1), x(0) * x(0) + x(1);
            return v;
        },
        [](const RealVector &x) {
            RealMatrix j(2, 2);
            j << 0, 1, 2 * x(0), 1;
            return j;
        });
}

/// x ↦ (sin 2x, sin x) on ]−π, π[: an injective immersion that is not an
/// embedding.
[[nodiscard]] inline FixtureMap figureEight() {
    return FixtureMap(
        "figure_eight",
        ParameterSpace({Interval{-std::numbers::pi, std::numbers::pi}}), 2,
        [](const RealVector &x) {
            RealVector v(2);
            v << std::sin(2 * x(0)), std::sin(x(0));
            return v;
        },
        [](const RealVector &x) {
            RealMatrix j(2, 1);
            j << 2 * std::cos(2 * x(0)), std::cos(x(0));
            return j;
        });
}

/// (ϑ, φ) ↦ (sin ϑ cos φ, sin ϑ sin φ, cos ϑ) on ]0, π[ × ]0, 2π[.
[[nodiscard]] inline FixtureMap sphereChart() {
    return FixtureMap(
        "sphere_chart",
        ParameterSpace({Interval{0.0, std::numbers::pi},
                        Interval{0.0, 2 * std::numbers::pi}}),
        3,
        [](const RealVector &x) {
            RealVector v(3);
            v << std::sin(x(0)) * std::cos(x(1)),
                std::sin(x(0)) * std::sin(x(1)), std::cos(x(0));
            return v;
        },
        [](const RealVector &x) {
            const double st = std::sin(x(0));
            const double ct = std::cos(x(0));
            const double sp = std::sin(x(1));
            const double cp = std::cos(x(1));
            RealMatrix j(3, 2);
            j << ct * cp, -st * sp, ct * sp, st * cp, -st, 0;
            return j;
        });
}

/// A linear isometry R² → R³ (orthonormal columns).
[[nodiscard]] inline FixtureMap isometry() {
    static const RealMatrix a = [] {
        RealMatrix m(3, 2);
        const double s = 1.0 / std::sqrt(2.0);
        m << s, 0, s, 0, 0, 1;
        return m;
    }();
    return FixtureMap(
        "isometry", ParameterSpace::lines(2), 3,
        [](const RealVector &x) { return RealVector(a * x); },
        [](const RealVector &) { return a; });
}

/// R² → R², constant.
[[nodiscard]] inline FixtureMap constant() {
    return FixtureMap(
        "constant", ParameterSpace::lines(2), 2,
        [](const RealVector &) {
            RealVector v(2);
            v << 1.0, -1.0;
            return v;
        },
        [](const RealVector &) { return RealMatrix(RealMatrix::Zero(2, 2)); });
}

[[nodiscard]] inline std::vector<std::string> names() {
    return {"constant", "figure_eight", "isometry",
            "rank_jump", "sphere_chart", "squares"};
}

[[nodiscard]] inline FixtureMap byName(std::string_view name) {
    if (name == "squares") {
        return squares();
    }
    if (name == "rank_jump") {
        return rankJump();
    }
    if (name == "figure_eight") {
        return figureEight();
    }
    if (name == "sphere_chart") {
        return sphereChart();
    }
    if (name == "isometry") {
        return isometry();
    }
    if (name == "constant") {
        return constant();
    }
    throw ValidationError("unknown fixture '" + std::string(name) + "'");
}

} // namespace fixtures

} // namespace pqcgeo
