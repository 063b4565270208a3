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
#include <cstdint>
#include <numeric>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "../parallel.hpp"
#include "injectivity.hpp"
#include "map.hpp"
#include "rank.hpp"

/// @file goodset.hpp
/// Discrete approximations of the region around a base point q where the
/// sliced state map has constant rank r_q and is injective, and of the
/// largest ball around q with the same property.
///
/// Both work on a lattice anchored at q: nodes q + h·z for integer vectors z,
/// in the kept coordinates of the slice at q.

namespace pqcgeo {

/// Nodes q + h·z inside a box, restricted to the domain of the slice.
struct Lattice {
    RealVector origin;
    double spacing = 0.0;
    std::vector<std::int64_t> lo; // per-axis minimum z
    std::vector<std::int64_t> hi; // per-axis maximum z
    std::vector<RealVector> nodes;
    std::vector<std::vector<std::int64_t>> offsets;
    std::map<std::vector<std::int64_t>, std::size_t> index;
    std::size_t origin_index = 0;
};

inline constexpr std::size_t kMaxLatticeNodes = 4000000;

/// Builds the lattice of `space` points q + h·z within `box` (one bound
/// pair per axis, inclusive up to a relative slack of 1e-9·h).
[[nodiscard]] inline Lattice
buildLattice(const ParameterSpace &space, const RealVector &q, double h,
             const std::vector<std::pair<double, double>> &box) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ValidationError("resolution must be > 0");
    }
    const std::size_t d = static_cast<std::size_t>(q.size());
    if (box.size() != d) {
        throw ValidationError("box dimension must equal the slice dimension");
    }
    Lattice lat;
    lat.origin = q;
    lat.spacing = h;
    lat.lo.resize(d);
    lat.hi.resize(d);
    double total = 1.0;
    for (std::size_t a = 0; a < d; ++a) {
        const double qa = q(static_cast<Eigen::Index>(a));
        const auto [blo, bhi] = box[a];
        if (!(std::isfinite(blo) && std::isfinite(bhi)) || blo > qa ||
            qa > bhi) {
            throw ValidationError("box must be finite and contain the base "
                                  "point");
        }
        lat.lo[a] = -static_cast<std::int64_t>(
            std::floor((qa - blo) / h + 1e-9));
        lat.hi[a] =
            static_cast<std::int64_t>(std::floor((bhi - qa) / h + 1e-9));
        total *= static_cast<double>(lat.hi[a] - lat.lo[a] + 1);
    }
    if (total > static_cast<double>(kMaxLatticeNodes)) {
        throw ValidationError("lattice would have more than " +
                              std::to_string(kMaxLatticeNodes) + " nodes");
    }
    std::vector<std::int64_t> z = lat.lo;
    while (true) {
        RealVector x(static_cast<Eigen::Index>(d));
        for (std::size_t a = 0; a < d; ++a) {
            x(static_cast<Eigen::Index>(a)) =
                q(static_cast<Eigen::Index>(a)) + static_cast<double>(z[a]) * h;
        }
        if (space.contains(x)) {
            const bool is_origin =
                std::all_of(z.begin(), z.end(),
                            [](std::int64_t v) { return v == 0; });
            if (is_origin) {
                lat.origin_index = lat.nodes.size();
            }
            lat.index.emplace(z, lat.nodes.size());
            lat.nodes.push_back(std::move(x));
            lat.offsets.push_back(z);
        }
        std::size_t a = d;
        while (a > 0) {
            --a;
            if (z[a] < lat.hi[a]) {
                ++z[a];
                break;
            }
            z[a] = lat.lo[a];
            if (a == 0) {
                return lat;
            }
        }
        if (d == 0) {
            return lat;
        }
    }
}

struct GoodSetReport {
    Slice slice;
    std::size_t rank = 0; // r_q
    double resolution = 0.0;
    double rel_tol = kDefaultRelTol;
    double collision_tol = 0.0;
    /// Lattice nodes in kept coordinates.
    std::vector<RealVector> nodes;
    std::vector<std::size_t> ranks;
    std::vector<bool> in_good_set;
    std::size_t node_count = 0;
    std::size_t collisions_removed = 0;
    /// Bounding box of the good set in kept coordinates (empty if none).
    std::vector<std::pair<double, double>> bounding_box;
    std::vector<std::string> warnings;

    /// `<kept coordinate names…>,in_good_set,rank`.
    [[nodiscard]] std::string csv() const {
        std::ostringstream os;
        for (std::size_t a = 0; a < slice.kept.size(); ++a) {
            os << "p" << slice.kept[a] << ",";
        }
        os << "in_good_set,rank\n";
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (Eigen::Index a = 0; a < nodes[i].size(); ++a) {
                os << detail::formatReal(nodes[i](a)) << ",";
            }
            os << (in_good_set[i] ? 1 : 0) << "," << ranks[i] << "\n";
        }
        return os.str();
    }
};

struct GoodSetOptions {
    double resolution = 0.05;
    double rel_tol = kDefaultRelTol;
    double collision_tol = 1e-6;
    /// Box in kept coordinates; defaults to the domain bounds of the kept
    /// factors (required when a kept factor is unbounded).
    std::optional<std::vector<std::pair<double, double>>> box;
    std::size_t threads = 1;
};

namespace detail {

inline std::vector<std::pair<double, double>>
defaultBox(const ParameterSpace &space) {
    std::vector<std::pair<double, double>> box;
    for (std::size_t a = 0; a < space.size(); ++a) {
        const auto b = space.bounds(a);
        if (!std::isfinite(b.first) || !std::isfinite(b.second)) {
            throw ValidationError("kept parameter " + std::to_string(a) +
                                  " is unbounded; give an explicit box");
        }
        if (std::holds_alternative<Circle>(space.factor(a))) {
            // q and q + period are the same point.
            box.emplace_back(b.first, b.second * (1.0 - 1e-12));
        } else {
            box.push_back(b);
        }
    }
    return box;
}

} // namespace detail

/// Flood fill from q over lattice nodes of rank r_q (only q's connected
/// component is kept), then removal of every node in a collision pair.
template <DifferentiableMap M>
[[nodiscard]] GoodSetReport goodSetScan(const M &map, const RealVector &q,
                                        const GoodSetOptions &opt = {}) {
    GoodSetReport out;
    out.slice = sliceAt(map, q, opt.rel_tol);
    out.rank = out.slice.dim();
    out.resolution = opt.resolution;
    out.rel_tol = opt.rel_tol;
    out.collision_tol = opt.collision_tol;
    out.warnings = out.slice.warnings;
    out.warnings.push_back(
        "good set sampled on a lattice anchored at the base point; the "
        "constant-rank region is the lattice-connected component of q");
    if (out.rank == 0) {
        out.warnings.push_back("rank 0 at the base point: empty good set");
        return out;
    }
    const auto sm = sliceMap(map, out.slice);
    const RealVector q_kept = sm.project(q);
    const auto box = opt.box ? *opt.box : detail::defaultBox(sm.domain());
    const Lattice lat = buildLattice(sm.domain(), q_kept, opt.resolution, box);
    out.nodes = lat.nodes;
    out.ranks.assign(lat.nodes.size(), 0);
    parallelFor(lat.nodes.size(), opt.threads, [&](std::size_t i) {
        out.ranks[i] = svdRank(sm.jacobian(lat.nodes[i]), opt.rel_tol).rank;
    });

    std::vector<bool> component(lat.nodes.size(), false);
    std::deque<std::size_t> queue;
    if (out.ranks[lat.origin_index] == out.rank) {
        component[lat.origin_index] = true;
        queue.push_back(lat.origin_index);
    }
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t a = 0; a < lat.offsets[cur].size(); ++a) {
            for (const int step : {-1, 1}) {
                auto z = lat.offsets[cur];
                z[a] += step;
                const auto it = lat.index.find(z);
                if (it == lat.index.end()) {
                    continue;
                }
                const std::size_t nb = it->second;
                if (!component[nb] && out.ranks[nb] == out.rank) {
                    component[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
    }

    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < component.size(); ++i) {
        if (component[i]) {
            members.push_back(i);
        }
    }
    std::vector<RealVector> pts(members.size());
    std::vector<RealVector> vals(members.size());
    parallelFor(members.size(), opt.threads, [&](std::size_t i) {
        pts[i] = lat.nodes[members[i]];
        vals[i] = sm.value(pts[i]);
    });
    InjectivityOptions iopt;
    iopt.resolution = opt.resolution;
    iopt.collision_tol = opt.collision_tol;
    const auto inj = findCollisions(sm.domain(), pts, vals, iopt);
    for (const auto &c : inj.collisions) {
        for (std::size_t local : {c.first, c.second}) {
            if (component[members[local]]) {
                component[members[local]] = false;
                ++out.collisions_removed;
            }
        }
    }
    if (inj.truncated) {
        out.warnings.push_back("collision list truncated; good set may be "
                               "overestimated");
    }

    out.in_good_set = component;
    const auto d = static_cast<std::size_t>(q_kept.size());
    for (std::size_t i = 0; i < component.size(); ++i) {
        if (!component[i]) {
            continue;
        }
        ++out.node_count;
        if (out.bounding_box.empty()) {
            out.bounding_box.assign(
                d, {std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()});
        }
        for (std::size_t a = 0; a < d; ++a) {
            const double v = lat.nodes[i](static_cast<Eigen::Index>(a));
            out.bounding_box[a].first = std::min(out.bounding_box[a].first, v);
            out.bounding_box[a].second =
                std::max(out.bounding_box[a].second, v);
        }
    }
    if (out.node_count == 0) {
        out.warnings.push_back("empty good set at this resolution");
    }
    return out;
}

struct EmbeddingBall {
    /// Largest tested radius whose closed lattice ball passes.
    double radius = 0.0;
    /// Smallest tested radius that fails (infinity when none failed).
    double failing_radius = std::numeric_limits<double>::infinity();
    std::size_t rank = 0;
    std::size_t nodes_checked = 0;
    double resolution = 0.0;
    double collision_tol = 0.0;
    std::vector<std::string> diagnostics;
};

struct EmbeddingOptions {
    double resolution = 0.01;
    double rel_tol = kDefaultRelTol;
    double collision_tol = 1e-6;
    /// Upper bound for the radius; required when a kept factor is unbounded.
    std::optional<double> max_radius;
    std::size_t threads = 1;
};

/// Largest lattice ball B_ε(q) in the slice at q on which every node has
/// rank r_q and no collisions occur. Failure is monotone in ε (a failing
/// node or pair stays in every larger ball), so the radius is found by
/// bisection over the sorted node radii. The result is a numerical
/// certificate at the stated resolution, not a proof of embedding.
template <DifferentiableMap M>
[[nodiscard]] EmbeddingBall localEmbeddingBall(const M &map,
                                               const RealVector &q,
                                               const EmbeddingOptions &opt = {}) {
    const Slice slice = sliceAt(map, q, opt.rel_tol);
    EmbeddingBall out;
    out.rank = slice.dim();
    out.resolution = opt.resolution;
    out.collision_tol = opt.collision_tol;
    if (out.rank == 0) {
        throw ValidationError("rank 0 at the base point: no embedded "
                              "neighbourhood exists");
    }
    const auto sm = sliceMap(map, slice);
    const RealVector qk = sm.project(q);
    std::vector<std::pair<double, double>> box;
    for (std::size_t a = 0; a < slice.dim(); ++a) {
        const auto b = sm.domain().bounds(a);
        const double qa = qk(static_cast<Eigen::Index>(a));
        double lo = b.first;
        double hi = b.second;
        if (opt.max_radius) {
            lo = std::max(lo, qa - *opt.max_radius);
            hi = std::min(hi, qa + *opt.max_radius);
        }
        if (!std::isfinite(lo) || !std::isfinite(hi)) {
            throw ValidationError("unbounded slice: give a maximum radius");
        }
        box.emplace_back(lo, hi);
    }
    const Lattice lat = buildLattice(sm.domain(), qk, opt.resolution, box);

    std::vector<double> radius(lat.nodes.size());
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
        radius[i] = (lat.nodes[i] - qk).norm();
    }
    std::vector<std::size_t> order(lat.nodes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return radius[a] < radius[b];
                     });
    if (opt.max_radius) {
        while (!order.empty() && radius[order.back()] > *opt.max_radius) {
            order.pop_back();
        }
    }
    // Shell boundaries: shells[s] = number of nodes with radius <= radii[s].
    // Radii within round-off of each other form one shell.
    const double shell_tol = 1e-9 * opt.resolution;
    std::vector<double> radii;
    std::vector<std::size_t> shells;
    for (std::size_t i = 0; i < order.size(); ++i) {
        const double r = radius[order[i]];
        if (radii.empty() || r > radii.back() + shell_tol) {
            radii.push_back(r);
            shells.push_back(i + 1);
        } else {
            shells.back() = i + 1;
        }
    }

    std::vector<std::size_t> ranks(order.size());
    std::vector<RealVector> values(order.size());
    parallelFor(order.size(), opt.threads, [&](std::size_t i) {
        const RealVector &y = lat.nodes[order[i]];
        ranks[i] = svdRank(sm.jacobian(y), opt.rel_tol).rank;
        values[i] = sm.value(y);
    });

    InjectivityOptions iopt;
    iopt.resolution = opt.resolution;
    iopt.collision_tol = opt.collision_tol;
    iopt.max_collisions = 1;
    const auto passes = [&](std::size_t shell) {
        const std::size_t n = shells[shell];
        for (std::size_t i = 0; i < n; ++i) {
            if (ranks[i] != out.rank) {
                return false;
            }
        }
        std::vector<RealVector> pts(n);
        std::vector<RealVector> vals(values.begin(),
                                     values.begin() +
                                         static_cast<std::ptrdiff_t>(n));
        for (std::size_t i = 0; i < n; ++i) {
            pts[i] = lat.nodes[order[i]];
        }
        return findCollisions(sm.domain(), pts, vals, iopt).collisions.empty();
    };

    // shells[0] is q alone and always passes.
    std::size_t good = 0;
    std::size_t bad = radii.size();
    if (bad > 1 && passes(bad - 1)) {
        good = bad - 1;
    } else {
        while (bad - good > 1) {
            const std::size_t mid = good + (bad - good) / 2;
            if (passes(mid)) {
                good = mid;
            } else {
                bad = mid;
            }
        }
        if (bad < radii.size()) {
            out.failing_radius = radii[bad];
        }
    }
    out.radius = radii.empty() ? 0.0 : radii[good];
    out.nodes_checked = radii.empty() ? 0 : shells[good];
    if (out.radius == 0.0) {
        out.diagnostics.push_back(
            "the first lattice shell around q already fails; refine the "
            "resolution");
    }
    if (out.failing_radius == std::numeric_limits<double>::infinity()) {
        out.diagnostics.push_back(
            "no failing radius found; the radius is limited by the sampled "
            "domain");
    }
    out.diagnostics.insert(out.diagnostics.end(), slice.warnings.begin(),
                           slice.warnings.end());
    return out;
}

} // namespace pqcgeo
