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
#include <cstddef>
#include <numeric>
#include <vector>

#include "../circuit.hpp"
#include "../linalg.hpp"
#include "../parallel.hpp"
#include "grid.hpp"
#include "map.hpp"

/// @file injectivity.hpp
/// Sampled injectivity checks. A collision is a pair of sample points that
/// are at least two resolution steps apart in parameter space but whose
/// images lie within `collision_tol`. An empty result certifies injectivity
/// at the sample resolution only.

namespace pqcgeo {

struct Collision {
    std::size_t first = 0;
    std::size_t second = 0;
    double param_distance = 0.0;
    double value_distance = 0.0;

    friend bool operator==(const Collision &, const Collision &) = default;
};

struct InjectivityOptions {
    double resolution = 1e-3;
    double collision_tol = 1e-6;
    /// Scanning stops after this many collisions.
    std::size_t max_collisions = 100000;
};

struct InjectivityReport {
    std::vector<Collision> collisions;
    bool truncated = false;
    std::size_t samples = 0;
    double resolution = 0.0;
    double collision_tol = 0.0;

    [[nodiscard]] bool injectiveAtResolution() const {
        return collisions.empty();
    }
};

/// Finds collisions among precomputed samples. `points` are parameter
/// coordinates (compared with the max-norm of `space`, so circle factors
/// wrap); `values` are their images.
[[nodiscard]] inline InjectivityReport
findCollisions(const ParameterSpace &space,
               const std::vector<RealVector> &points,
               const std::vector<RealVector> &values,
               const InjectivityOptions &opt) {
    InjectivityReport out;
    out.samples = points.size();
    out.resolution = opt.resolution;
    out.collision_tol = opt.collision_tol;
    const std::size_t n = points.size();
    if (n < 2) {
        return out;
    }
    const Eigen::Index m = values.front().size();

    // Sweep along the value coordinate with the largest spread.
    Eigen::Index sweep = 0;
    double best = -1.0;
    for (Eigen::Index c = 0; c < m; ++c) {
        double lo = values[0](c);
        double hi = lo;
        for (const auto &v : values) {
            lo = std::min(lo, v(c));
            hi = std::max(hi, v(c));
        }
        if (hi - lo > best) {
            best = hi - lo;
            sweep = c;
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return values[a](sweep) < values[b](sweep);
                     });

    const double min_sep = 2.0 * opt.resolution;
    for (std::size_t ia = 0; ia < n && !out.truncated; ++ia) {
        const std::size_t a = order[ia];
        for (std::size_t ib = ia + 1; ib < n; ++ib) {
            const std::size_t b = order[ib];
            if (values[b](sweep) - values[a](sweep) >= opt.collision_tol) {
                break;
            }
            const double vd = (values[a] - values[b]).norm();
            if (vd >= opt.collision_tol) {
                continue;
            }
            double pd = 0.0;
            for (Eigen::Index j = 0; j < points[a].size(); ++j) {
                pd = std::max(pd, space.coordDistance(
                                      static_cast<std::size_t>(j),
                                      points[a](j), points[b](j)));
            }
            if (pd < min_sep) {
                continue;
            }
            out.collisions.push_back(
                {std::min(a, b), std::max(a, b), pd, vd});
            if (out.collisions.size() >= opt.max_collisions) {
                out.truncated = true;
                break;
            }
        }
    }
    std::sort(out.collisions.begin(), out.collisions.end(),
              [](const Collision &l, const Collision &r) {
                  return l.first != r.first ? l.first < r.first
                                            : l.second < r.second;
              });
    return out;
}

/// Box of per-coordinate bounds with a sampling resolution; each axis gets
/// ceil(extent / resolution) midpoint cells, so spacing ≤ resolution.
[[nodiscard]] inline Grid regionGrid(const std::vector<std::pair<double, double>> &box,
                                     double resolution) {
    if (!(resolution > 0.0)) {
        throw ValidationError("resolution must be > 0");
    }
    std::vector<GridAxis> axes;
    for (const auto &[lo, hi] : box) {
        if (!(std::isfinite(lo) && std::isfinite(hi)) || hi < lo) {
            throw ValidationError("region bounds must be finite with lo <= hi");
        }
        const double cells = std::ceil((hi - lo) / resolution);
        if (cells > 5e7) {
            throw ValidationError("region too fine for the given resolution");
        }
        axes.push_back({lo, hi, std::max<std::size_t>(
                                    1, static_cast<std::size_t>(cells))});
    }
    return Grid(std::move(axes));
}

/// Samples `map` on a grid over `box` (one bound pair per domain coordinate)
/// and reports collisions.
template <DifferentiableMap M>
[[nodiscard]] InjectivityReport
injectivityScan(const M &map,
                const std::vector<std::pair<double, double>> &box,
                const InjectivityOptions &opt, std::size_t threads = 1) {
    if (box.size() != map.domain().size()) {
        throw ValidationError("region dimension must equal the domain "
                              "dimension");
    }
    const Grid grid = regionGrid(box, opt.resolution);
    std::vector<RealVector> points(grid.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        points[i] = grid.node(i);
        if (!map.domain().contains(points[i])) {
            throw ValidationError("region leaves the parameter space");
        }
    }
    std::vector<RealVector> values(points.size());
    parallelFor(points.size(), threads,
                [&](std::size_t i) { values[i] = map.value(points[i]); });
    return findCollisions(map.domain(), points, values, opt);
}

} // namespace pqcgeo
