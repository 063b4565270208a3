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

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "../linalg.hpp"
#include "../parallel.hpp"
#include "grid.hpp"
#include "map.hpp"

/// @file rank.hpp
/// Local rank of a map, greedy detection of superfluous parameters, slices
/// through a point, and rank landscapes over grids.

namespace pqcgeo {

/// Relative residual below which the phase direction counts as lying in the
/// Jacobian's column span.
inline constexpr double kDefaultSpanTol = 1e-6;

struct RankReport {
    ParameterPoint base_point;
    std::size_t rank = 0;
    std::size_t max_rank = 0;
    std::vector<double> singular_values;
    double rel_tol = kDefaultRelTol;
    double threshold_used = 0.0;
    /// Only set for state maps: whether i·Λ(p) lies in the column span.
    std::optional<bool> phase_in_span;
};

template <DifferentiableMap M>
[[nodiscard]] RankReport rankAt(const M &map, const RealVector &x,
                                double rel_tol = kDefaultRelTol,
                                double span_tol = kDefaultSpanTol) {
    detail::requireInDomain(map, x);
    const RealMatrix jac = map.jacobian(x);
    const SvdRank svd = svdRank(jac, rel_tol);
    RankReport r;
    r.base_point = ParameterPoint{x};
    r.rank = svd.rank;
    r.max_rank = map.maxRank();
    r.singular_values = svd.singular_values;
    r.rel_tol = rel_tol;
    r.threshold_used = svd.threshold;
    if (const auto phase = detail::phaseOf(map, x)) {
        r.phase_in_span = spanResidual(jac, *phase, svd.threshold) < span_tol;
    }
    return r;
}

//===----------------------------------------------------------------------===//
// Superfluous parameters and slices
//===----------------------------------------------------------------------===//

struct ParameterPartition {
    std::vector<std::size_t> essential;
    std::vector<std::size_t> superfluous;
    /// Rank of the full Jacobian, for comparison with essential.size().
    std::size_t rank = 0;
    double rel_tol = kDefaultRelTol;
};

namespace detail {

/// Greedy left-to-right column selection: column j is kept iff it raises
/// the numerical rank of the columns kept so far.
inline ParameterPartition greedyColumns(const RealMatrix &jac,
                                        double rel_tol) {
    ParameterPartition out;
    out.rel_tol = rel_tol;
    out.rank = svdRank(jac, rel_tol).rank;
    RealMatrix accepted(jac.rows(), 0);
    std::size_t current = 0;
    for (Eigen::Index j = 0; j < jac.cols(); ++j) {
        RealMatrix trial(jac.rows(), accepted.cols() + 1);
        trial.leftCols(accepted.cols()) = accepted;
        trial.col(accepted.cols()) = jac.col(j);
        const std::size_t r = svdRank(trial, rel_tol).rank;
        if (r > current) {
            accepted = std::move(trial);
            current = r;
            out.essential.push_back(static_cast<std::size_t>(j));
        } else {
            out.superfluous.push_back(static_cast<std::size_t>(j));
        }
    }
    return out;
}

} // namespace detail

template <DifferentiableMap M>
[[nodiscard]] ParameterPartition
superfluousParams(const M &map, const RealVector &x,
                  double rel_tol = kDefaultRelTol) {
    detail::requireInDomain(map, x);
    return detail::greedyColumns(map.jacobian(x), rel_tol);
}

/// The parameter subspace through q in which only `kept` coordinates vary.
struct Slice {
    ParameterPoint base_point;
    std::vector<std::size_t> kept;
    std::vector<std::size_t> frozen;
    /// Values of the frozen coordinates, aligned with `frozen`.
    std::vector<double> fixed_values;
    std::vector<std::string> warnings;

    [[nodiscard]] std::size_t dim() const { return kept.size(); }
};

/// Keeps the r = rank(q) coordinates chosen by the greedy column rule and
/// freezes the rest at q.
template <DifferentiableMap M>
[[nodiscard]] Slice sliceAt(const M &map, const RealVector &q,
                            double rel_tol = kDefaultRelTol) {
    const auto part = superfluousParams(map, q, rel_tol);
    Slice s;
    s.base_point = ParameterPoint{q};
    s.kept = part.essential;
    s.frozen = part.superfluous;
    for (std::size_t j : s.frozen) {
        s.fixed_values.push_back(q(static_cast<Eigen::Index>(j)));
    }
    if (s.kept.empty()) {
        s.warnings.push_back("rank 0 at the base point: degenerate slice");
    }
    if (part.essential.size() != part.rank) {
        std::ostringstream os;
        os << "greedy selection kept " << part.essential.size()
           << " columns but the Jacobian has rank " << part.rank
           << "; the Jacobian is ill-conditioned at this tolerance";
        s.warnings.push_back(os.str());
    }
    return s;
}

template <DifferentiableMap M>
[[nodiscard]] SliceMap<M> sliceMap(const M &map, const Slice &s) {
    return SliceMap<M>(map, s.kept, s.base_point.coords);
}

//===----------------------------------------------------------------------===//
// Grids of ranks
//===----------------------------------------------------------------------===//

/// Ranks at every node of `grid`, which spans the coordinates `axes`; all
/// other coordinates stay at `base`. Nodes are independent and evaluated in
/// parallel; the result is ordered by node index.
template <DifferentiableMap M>
[[nodiscard]] std::vector<std::size_t>
rankGrid(const M &map, const std::vector<std::size_t> &axes,
         const Grid &grid, const RealVector &base,
         double rel_tol = kDefaultRelTol, std::size_t threads = 1) {
    if (axes.size() != grid.dims()) {
        throw ValidationError("grid dimension does not match axis count");
    }
    if (static_cast<std::size_t>(base.size()) != map.domain().size()) {
        throw ValidationError("base point has wrong dimension");
    }
    for (std::size_t a : axes) {
        if (a >= map.domain().size()) {
            throw ValidationError("axis " + std::to_string(a) +
                                  " out of range");
        }
    }
    std::vector<RealVector> nodes(grid.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        RealVector x = base;
        const RealVector g = grid.node(i);
        for (std::size_t d = 0; d < axes.size(); ++d) {
            x(static_cast<Eigen::Index>(axes[d])) =
                g(static_cast<Eigen::Index>(d));
        }
        if (!map.domain().contains(x)) {
            throw ValidationError("grid node " + std::to_string(i) +
                                  " is outside the parameter space");
        }
        nodes[i] = std::move(x);
    }
    std::vector<std::size_t> ranks(nodes.size(), 0);
    parallelFor(nodes.size(), threads, [&](std::size_t i) {
        ranks[i] = svdRank(map.jacobian(nodes[i]), rel_tol).rank;
    });
    return ranks;
}

struct RankLandscape {
    std::size_t axis1 = 0;
    std::size_t axis2 = 1;
    GridAxis grid1;
    GridAxis grid2;
    RealVector base;
    double rel_tol = kDefaultRelTol;
    /// Row-major: ranks[i * grid2.size() + j] at (grid1.node(i), grid2.node(j)).
    std::vector<std::size_t> ranks;

    [[nodiscard]] std::size_t at(std::size_t i, std::size_t j) const {
        return ranks[i * grid2.size() + j];
    }

    /// `axis1,axis2,rank`, row-major.
    [[nodiscard]] std::string csv() const {
        std::ostringstream os;
        os << "axis1,axis2,rank\n";
        for (std::size_t i = 0; i < grid1.size(); ++i) {
            for (std::size_t j = 0; j < grid2.size(); ++j) {
                os << detail::formatReal(grid1.node(i)) << ","
                   << detail::formatReal(grid2.node(j)) << "," << at(i, j)
                   << "\n";
            }
        }
        return os.str();
    }
};

template <DifferentiableMap M>
[[nodiscard]] RankLandscape
rankLandscape(const M &map, std::size_t axis1, std::size_t axis2,
              const GridAxis &grid1, const GridAxis &grid2,
              const RealVector &base, double rel_tol = kDefaultRelTol,
              std::size_t threads = 1) {
    if (axis1 == axis2) {
        throw ValidationError("landscape axes must differ");
    }
    RankLandscape out;
    out.axis1 = axis1;
    out.axis2 = axis2;
    out.grid1 = grid1;
    out.grid2 = grid2;
    out.base = base;
    out.rel_tol = rel_tol;
    out.ranks = rankGrid(map, {axis1, axis2}, Grid({grid1, grid2}), base,
                         rel_tol, threads);
    return out;
}

struct SliceScanReport {
    std::size_t expected_rank = 0;
    Grid grid{{}};
    std::vector<RealVector> nodes; // in kept coordinates
    std::vector<std::size_t> ranks;
    /// Node indices whose rank differs from expected_rank.
    std::vector<std::size_t> flagged;
};

/// Ranks of the slice map over a box in kept coordinates. Nodes whose rank
/// differs from the rank at the base point are flagged, not rejected: the
/// rank is only guaranteed constant near the base point.
template <DifferentiableMap M>
[[nodiscard]] SliceScanReport sliceRankScan(const M &map, const Slice &slice,
                                            const std::vector<GridAxis> &box,
                                            double rel_tol = kDefaultRelTol,
                                            std::size_t threads = 1) {
    if (box.size() != slice.dim()) {
        throw ValidationError("box dimension must equal the slice dimension");
    }
    const auto sm = sliceMap(map, slice);
    SliceScanReport out;
    out.expected_rank = slice.dim();
    out.grid = Grid(box);
    std::vector<std::size_t> axes(slice.dim());
    for (std::size_t i = 0; i < axes.size(); ++i) {
        axes[i] = i;
    }
    const RealVector base = sm.project(slice.base_point.coords);
    out.ranks = rankGrid(sm, axes, out.grid, base, rel_tol, threads);
    out.nodes.reserve(out.grid.size());
    for (std::size_t i = 0; i < out.grid.size(); ++i) {
        out.nodes.push_back(out.grid.node(i));
        if (out.ranks[i] != out.expected_rank) {
            out.flagged.push_back(i);
        }
    }
    return out;
}

} // namespace pqcgeo
