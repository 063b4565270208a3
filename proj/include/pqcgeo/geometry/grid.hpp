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
#include <string>
#include <string_view>
#include <vector>

#include "../error.hpp"
#include "../linalg.hpp"
#include "../matrix_io.hpp"

namespace pqcgeo {

/// One axis of a sampling grid: `steps` half-open cells over [lo, hi],
/// sampled at their midpoints, so a node never sits on lo or hi. A
/// degenerate axis (lo == hi) has the single node lo.
struct GridAxis {
    double lo = 0.0;
    double hi = 1.0;
    std::size_t steps = 1;

    [[nodiscard]] bool degenerate() const { return lo == hi; }

    [[nodiscard]] std::size_t size() const {
        return degenerate() ? 1 : steps;
    }

    /// lo + (2i + 1)(hi − lo) / (2·steps); the center cell of an odd grid on
    /// a symmetric interval lands on 0 exactly.
    [[nodiscard]] double node(std::size_t i) const {
        if (degenerate()) {
            return lo;
        }
        return lo + static_cast<double>(2 * i + 1) * (hi - lo) /
                        static_cast<double>(2 * steps);
    }

    [[nodiscard]] double cellWidth() const {
        return degenerate() ? 0.0 : (hi - lo) / static_cast<double>(steps);
    }
};

/// Parses `lo:hi:steps`.
[[nodiscard]] inline GridAxis parseGridAxis(std::string_view spec) {
    const auto c1 = spec.find(':');
    const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
    if (c2 == std::string_view::npos) {
        throw ValidationError("grid axis must be lo:hi:steps, got '" +
                              std::string(spec) + "'");
    }
    const auto lo = detail::parseReal(spec.substr(0, c1));
    const auto hi = detail::parseReal(spec.substr(c1 + 1, c2 - c1 - 1));
    const auto steps = detail::parseReal(spec.substr(c2 + 1));
    if (!lo || !hi || !steps || !std::isfinite(*lo) || !std::isfinite(*hi) ||
        *steps < 1 || *steps != std::floor(*steps) || *hi < *lo) {
        throw ValidationError("bad grid axis '" + std::string(spec) + "'");
    }
    return {*lo, *hi, static_cast<std::size_t>(*steps)};
}

/// Axis-aligned tensor grid; node indices are row-major (first axis
/// slowest).
class Grid {
  public:
    explicit Grid(std::vector<GridAxis> axes) : axes_(std::move(axes)) {}

    [[nodiscard]] const std::vector<GridAxis> &axes() const { return axes_; }
    [[nodiscard]] std::size_t dims() const { return axes_.size(); }

    [[nodiscard]] std::size_t size() const {
        std::size_t n = 1;
        for (const auto &a : axes_) {
            n *= a.size();
        }
        return n;
    }

    [[nodiscard]] std::vector<std::size_t> multiIndex(std::size_t flat) const {
        std::vector<std::size_t> idx(axes_.size());
        for (std::size_t d = axes_.size(); d-- > 0;) {
            idx[d] = flat % axes_[d].size();
            flat /= axes_[d].size();
        }
        return idx;
    }

    [[nodiscard]] RealVector node(std::size_t flat) const {
        const auto idx = multiIndex(flat);
        RealVector x(static_cast<Eigen::Index>(axes_.size()));
        for (std::size_t d = 0; d < axes_.size(); ++d) {
            x(static_cast<Eigen::Index>(d)) = axes_[d].node(idx[d]);
        }
        return x;
    }

    [[nodiscard]] double cellVolume() const {
        double v = 1.0;
        for (const auto &a : axes_) {
            v *= a.cellWidth();
        }
        return v;
    }

  private:
    std::vector<GridAxis> axes_;
};

} // namespace pqcgeo
