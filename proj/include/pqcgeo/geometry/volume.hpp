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
#include <string>
#include <vector>

#include "../linalg.hpp"
#include "../parallel.hpp"
#include "grid.hpp"
#include "map.hpp"

namespace pqcgeo {

struct VolumeElement {
    /// sqrt(det(JᵀJ)), or 0 when J is rank deficient.
    double value = 0.0;
    std::size_t rank = 0;
    std::optional<std::string> warning;
};

/// Volume element of the pullback of the ambient Euclidean metric. The map
/// should already be restricted to a full-rank slice; a rank-deficient
/// Jacobian yields 0 with a warning.
template <DifferentiableMap M>
[[nodiscard]] VolumeElement volumeElement(const M &map, const RealVector &x,
                                          double rel_tol = kDefaultRelTol) {
    detail::requireInDomain(map, x);
    const RealMatrix jac = map.jacobian(x);
    VolumeElement out;
    out.rank = svdRank(jac, rel_tol).rank;
    if (out.rank < static_cast<std::size_t>(jac.cols())) {
        out.warning = "rank " + std::to_string(out.rank) + " < " +
                      std::to_string(jac.cols()) +
                      ": volume element degenerates to 0";
        return out;
    }
    out.value = gramVolume(jac);
    return out;
}

/// Midpoint Riemann sum of the volume element over a grid spanning every
/// domain coordinate. Per-node terms are summed in node order, so the
/// result does not depend on `threads`.
template <DifferentiableMap M>
[[nodiscard]] double patchVolume(const M &map, const Grid &region,
                                 double rel_tol = kDefaultRelTol,
                                 std::size_t threads = 1) {
    if (region.dims() != map.domain().size()) {
        throw ValidationError("region dimension must equal the domain "
                              "dimension");
    }
    const double cell = region.cellVolume();
    if (cell == 0.0) {
        return 0.0;
    }
    std::vector<double> terms(region.size(), 0.0);
    parallelFor(region.size(), threads, [&](std::size_t i) {
        terms[i] = volumeElement(map, region.node(i), rel_tol).value;
    });
    double sum = 0.0;
    for (double t : terms) {
        sum += t;
    }
    return sum * cell;
}

} // namespace pqcgeo
