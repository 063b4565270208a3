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
#include <concepts>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "../circuit.hpp"
#include "../linalg.hpp"
#include "../statemap.hpp"

/// @file map.hpp
/// Differentiable maps from a parameter space into R^m, the common currency
/// of the geometry routines: circuit state maps, circuit unitary maps,
/// closed-form fixtures and slices of any of these.

namespace pqcgeo {

template <class M>
concept DifferentiableMap = requires(const M &m, const RealVector &x) {
    { m.domain() } -> std::convertible_to<const ParameterSpace &>;
    { m.value(x) } -> std::convertible_to<RealVector>;
    { m.jacobian(x) } -> std::convertible_to<RealMatrix>;
    { m.maxRank() } -> std::convertible_to<std::size_t>;
};

/// Maps whose image lies on a sphere of states and whose global phase
/// direction is meaningful.
template <class M>
concept PhasedMap = DifferentiableMap<M> && requires(const M &m,
                                                     const RealVector &x) {
    { m.phaseDirection(x) } -> std::convertible_to<RealVector>;
};

/// p ↦ realified C(p)|ι⟩.
class CircuitStateMap {
  public:
    CircuitStateMap(std::shared_ptr<const Circuit> c, ParameterSpace space)
        : c_(std::move(c)), space_(std::move(space)) {}

    [[nodiscard]] const ParameterSpace &domain() const { return space_; }
    [[nodiscard]] const Circuit &circuit() const { return *c_; }
    [[nodiscard]] RealVector value(const RealVector &x) const {
        return stateMap(*c_, x);
    }
    [[nodiscard]] RealMatrix jacobian(const RealVector &x) const {
        return jacobianAnalytic(*c_, ParameterPoint{x}).matrix;
    }
    /// min(k, 2n − 1): the tangent space of S^{2n−1}.
    [[nodiscard]] std::size_t maxRank() const {
        return std::min(c_->numParams(), 2 * c_->dim() - 1);
    }
    [[nodiscard]] RealVector phaseDirection(const RealVector &x) const {
        return pqcgeo::phaseDirection(value(x));
    }

  private:
    std::shared_ptr<const Circuit> c_;
    ParameterSpace space_;
};

/// p ↦ realified row-major vec(C(p)).
class CircuitUnitaryMap {
  public:
    CircuitUnitaryMap(std::shared_ptr<const Circuit> c, ParameterSpace space)
        : c_(std::move(c)), space_(std::move(space)) {}

    [[nodiscard]] const ParameterSpace &domain() const { return space_; }
    [[nodiscard]] RealVector value(const RealVector &x) const {
        return unitaryMap(*c_, x);
    }
    [[nodiscard]] RealMatrix jacobian(const RealVector &x) const {
        return unitaryJacobian(*c_, ParameterPoint{x}).matrix;
    }
    /// min(k, n²) = min(k, dim U(n)).
    [[nodiscard]] std::size_t maxRank() const {
        return std::min(c_->numParams(), c_->dim() * c_->dim());
    }

  private:
    std::shared_ptr<const Circuit> c_;
    ParameterSpace space_;
};

/// Restriction of a map to the coordinates `kept`, with every other
/// coordinate frozen at `base`.
template <DifferentiableMap M> class SliceMap {
  public:
    SliceMap(const M &map, std::vector<std::size_t> kept, RealVector base)
        : map_(&map), kept_(std::move(kept)), base_(std::move(base)) {
        std::vector<Factor> factors;
        for (std::size_t j : kept_) {
            factors.push_back(map.domain().factor(j));
        }
        space_ = ParameterSpace(std::move(factors));
    }

    [[nodiscard]] const ParameterSpace &domain() const { return space_; }
    [[nodiscard]] const std::vector<std::size_t> &kept() const {
        return kept_;
    }
    [[nodiscard]] const RealVector &base() const { return base_; }

    [[nodiscard]] RealVector embed(const RealVector &y) const {
        RealVector x = base_;
        for (std::size_t i = 0; i < kept_.size(); ++i) {
            x(static_cast<Eigen::Index>(kept_[i])) =
                y(static_cast<Eigen::Index>(i));
        }
        return x;
    }
    [[nodiscard]] RealVector project(const RealVector &x) const {
        RealVector y(static_cast<Eigen::Index>(kept_.size()));
        for (std::size_t i = 0; i < kept_.size(); ++i) {
            y(static_cast<Eigen::Index>(i)) =
                x(static_cast<Eigen::Index>(kept_[i]));
        }
        return y;
    }

    [[nodiscard]] RealVector value(const RealVector &y) const {
        return map_->value(embed(y));
    }
    [[nodiscard]] RealMatrix jacobian(const RealVector &y) const {
        const RealMatrix full = map_->jacobian(embed(y));
        RealMatrix out(full.rows(), static_cast<Eigen::Index>(kept_.size()));
        for (std::size_t i = 0; i < kept_.size(); ++i) {
            out.col(static_cast<Eigen::Index>(i)) =
                full.col(static_cast<Eigen::Index>(kept_[i]));
        }
        return out;
    }
    [[nodiscard]] std::size_t maxRank() const {
        return std::min(kept_.size(), map_->maxRank());
    }
    [[nodiscard]] RealVector phaseDirection(const RealVector &y) const
        requires PhasedMap<M>
    {
        return map_->phaseDirection(embed(y));
    }

  private:
    const M *map_;
    std::vector<std::size_t> kept_;
    RealVector base_;
    ParameterSpace space_;
};

/// Type-erased map for runtime selection (CLI). Copies share the wrapped
/// map.
class AnyMap {
  public:
    template <DifferentiableMap M>
    explicit AnyMap(M map, std::string name = {})
        : name_(std::move(name)) {
        auto held = std::make_shared<const M>(std::move(map));
        domain_ = held->domain();
        max_rank_ = held->maxRank();
        value_ = [held](const RealVector &x) { return held->value(x); };
        jacobian_ = [held](const RealVector &x) { return held->jacobian(x); };
        if constexpr (PhasedMap<M>) {
            phase_ = [held](const RealVector &x) {
                return held->phaseDirection(x);
            };
        }
    }

    [[nodiscard]] const ParameterSpace &domain() const { return domain_; }
    [[nodiscard]] const std::string &name() const { return name_; }
    [[nodiscard]] RealVector value(const RealVector &x) const {
        return value_(x);
    }
    [[nodiscard]] RealMatrix jacobian(const RealVector &x) const {
        return jacobian_(x);
    }
    [[nodiscard]] std::size_t maxRank() const { return max_rank_; }
    [[nodiscard]] bool hasPhase() const { return static_cast<bool>(phase_); }
    [[nodiscard]] std::optional<RealVector>
    phaseDirectionIfAny(const RealVector &x) const {
        if (!phase_) {
            return std::nullopt;
        }
        return phase_(x);
    }

  private:
    std::string name_;
    ParameterSpace domain_;
    std::size_t max_rank_ = 0;
    std::function<RealVector(const RealVector &)> value_;
    std::function<RealMatrix(const RealVector &)> jacobian_;
    std::function<RealVector(const RealVector &)> phase_;
};

namespace detail {

/// The phase direction of a map at x, if it has one.
template <DifferentiableMap M>
std::optional<RealVector> phaseOf(const M &m, const RealVector &x) {
    if constexpr (std::is_same_v<M, AnyMap>) {
        return m.phaseDirectionIfAny(x);
    } else if constexpr (PhasedMap<M>) {
        return m.phaseDirection(x);
    } else {
        return std::nullopt;
    }
}

template <DifferentiableMap M>
void requireInDomain(const M &m, const RealVector &x) {
    if (!m.domain().contains(x)) {
        throw ValidationError("point not in parameter space");
    }
}

} // namespace detail

} // namespace pqcgeo
