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
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "../error.hpp"
#include "../linalg.hpp"
#include "../matrix_io.hpp"

/// @file chain.hpp
/// Open chains in covers by open axis-aligned boxes. A chain U_1, …, U_n
/// connecting a and b satisfies
///   (i)   a ∈ U_1 and a ∉ U_i for i ≠ 1,
///   (ii)  b ∈ U_n and b ∉ U_i for i ≠ n,
///   (iii) U_i ∩ U_j ≠ ∅ ⇔ |i − j| ≤ 1.
/// Intersection and membership tests are exact comparisons of the box
/// bounds; no tolerance is involved.

namespace pqcgeo {

struct Box {
    std::string name;
    RealVector lo;
    RealVector hi;

    [[nodiscard]] std::size_t dim() const {
        return static_cast<std::size_t>(lo.size());
    }

    /// Open-box membership: lo < x < hi in every coordinate.
    [[nodiscard]] bool contains(const RealVector &x) const {
        for (Eigen::Index i = 0; i < lo.size(); ++i) {
            if (!(lo(i) < x(i) && x(i) < hi(i))) {
                return false;
            }
        }
        return true;
    }
};

/// Two open boxes meet iff max(lo) < min(hi) on every axis.
[[nodiscard]] inline bool intersects(const Box &a, const Box &b) {
    for (Eigen::Index i = 0; i < a.lo.size(); ++i) {
        if (!(std::max(a.lo(i), b.lo(i)) < std::min(a.hi(i), b.hi(i)))) {
            return false;
        }
    }
    return true;
}

using Cover = std::vector<Box>;

/// Indices into a cover.
using Chain = std::vector<std::size_t>;

inline void validateCover(const Cover &cover) {
    if (cover.empty()) {
        throw ValidationError("cover is empty");
    }
    const std::size_t d = cover.front().dim();
    for (const auto &b : cover) {
        if (b.dim() != d || static_cast<std::size_t>(b.hi.size()) != d) {
            throw ValidationError("box '" + b.name +
                                  "' has inconsistent dimension");
        }
        for (std::size_t i = 0; i < d; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            if (!(b.lo(ii) < b.hi(ii))) {
                throw ValidationError("box '" + b.name +
                                      "' is empty (requires lo < hi)");
            }
        }
    }
}

/// Checks (i), (ii) and (iii) literally.
[[nodiscard]] inline bool isOpenChain(const Cover &cover, const Chain &chain,
                                      const RealVector &a,
                                      const RealVector &b) {
    const std::size_t n = chain.size();
    if (n == 0) {
        return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Box &u = cover.at(chain[i]);
        if (u.contains(a) != (i == 0)) {
            return false;
        }
        if (u.contains(b) != (i == n - 1)) {
            // With n == 1 the single box must contain both points.
            return false;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool meet = intersects(cover[chain[i]], cover[chain[j]]);
            if (meet != (j - i <= 1)) {
                return false;
            }
        }
    }
    return true;
}

/// Turns a walk W_1, …, W_m of pairwise-consecutively intersecting boxes
/// with a ∈ W_1 and b ∈ W_m into an open chain. Starting from the last box
/// containing a, it repeatedly jumps to the farthest later box that meets
/// the current one, and stops at the first box containing b. Farthest jumps
/// leave no chords: a box never meets anything beyond its successor.
[[nodiscard]] inline Chain reduceToOpenChain(const Cover &cover,
                                             const Chain &walk,
                                             const RealVector &a,
                                             const RealVector &b) {
    if (walk.empty()) {
        throw ValidationError("empty walk");
    }
    std::size_t start = walk.size();
    for (std::size_t i = walk.size(); i-- > 0;) {
        if (cover.at(walk[i]).contains(a)) {
            start = i;
            break;
        }
    }
    if (start == walk.size()) {
        throw ValidationError("walk never contains the start point");
    }
    Chain out;
    std::size_t cur = start;
    while (true) {
        out.push_back(walk[cur]);
        if (cover[walk[cur]].contains(b)) {
            return out;
        }
        std::size_t next = cur;
        for (std::size_t j = walk.size(); j-- > cur + 1;) {
            if (intersects(cover[walk[cur]], cover[walk[j]])) {
                next = j;
                break;
            }
        }
        if (next == cur) {
            throw ValidationError("walk is not connected");
        }
        cur = next;
    }
}

/// Joins a chain a→b and a chain b→c: r is the first U_i meeting some V_j,
/// s the last V_j meeting U_r; U_1 … U_r V_s … V_m is then reduced to an
/// open chain a→c.
[[nodiscard]] inline Chain spliceChains(const Cover &cover, const Chain &ab,
                                        const Chain &bc, const RealVector &a,
                                        const RealVector &c) {
    std::optional<std::size_t> r;
    for (std::size_t i = 0; i < ab.size() && !r; ++i) {
        for (std::size_t j = 0; j < bc.size(); ++j) {
            if (ab[i] == bc[j] || intersects(cover[ab[i]], cover[bc[j]])) {
                r = i;
                break;
            }
        }
    }
    if (!r) {
        throw ValidationError("chains do not meet");
    }
    std::size_t s = 0;
    for (std::size_t j = 0; j < bc.size(); ++j) {
        if (ab[*r] == bc[j] || intersects(cover[ab[*r]], cover[bc[j]])) {
            s = j;
        }
    }
    Chain walk(ab.begin(), ab.begin() + static_cast<std::ptrdiff_t>(*r) + 1);
    if (bc[s] != ab[*r]) {
        walk.push_back(bc[s]);
    }
    walk.insert(walk.end(), bc.begin() + static_cast<std::ptrdiff_t>(s) + 1,
                bc.end());
    return reduceToOpenChain(cover, walk, a, c);
}

/// An open chain from a to b, or nullopt when a and b lie in different
/// components of the box-intersection graph. Breadth-first search from all
/// boxes containing a gives a shortest walk to a box containing b; a
/// shortest walk already has no chords, and the reduction enforces
/// (i)–(iii) regardless.
[[nodiscard]] inline std::optional<Chain>
openChain(const Cover &cover, const RealVector &a, const RealVector &b) {
    validateCover(cover);
    if (static_cast<std::size_t>(a.size()) != cover.front().dim() ||
        static_cast<std::size_t>(b.size()) != cover.front().dim()) {
        throw ValidationError("point dimension does not match the cover");
    }
    const std::size_t n = cover.size();
    std::vector<std::size_t> parent(n, n);
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue;
    bool a_covered = false;
    bool b_covered = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (cover[i].contains(a)) {
            a_covered = true;
            seen[i] = true;
            queue.push_back(i);
        }
        b_covered = b_covered || cover[i].contains(b);
    }
    if (!a_covered) {
        throw ValidationError("start point is not covered");
    }
    if (!b_covered) {
        throw ValidationError("end point is not covered");
    }
    while (!queue.empty()) {
        const std::size_t cur = queue.front();
        queue.pop_front();
        if (cover[cur].contains(b)) {
            Chain walk;
            for (std::size_t v = cur; v != n; v = parent[v]) {
                walk.push_back(v);
            }
            std::reverse(walk.begin(), walk.end());
            return reduceToOpenChain(cover, walk, a, b);
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!seen[j] && intersects(cover[cur], cover[j])) {
                seen[j] = true;
                parent[j] = cur;
                queue.push_back(j);
            }
        }
    }
    return std::nullopt;
}

/// Cover file: one box per line, `name lo1:hi1 lo2:hi2 …` (commas may
/// replace the spaces between axes); `#` starts a comment.
[[nodiscard]] inline Cover parseCover(std::string_view text) {
    Cover cover;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line(detail::stripComment(raw));
        std::replace(line.begin(), line.end(), ',', ' ');
        const auto toks = detail::tokenize(line);
        if (toks.empty()) {
            continue;
        }
        if (toks.size() < 2) {
            throw ParseError("box needs a name and at least one axis",
                             line_no, toks[0].column);
        }
        Box box;
        box.name = std::string(toks[0].text);
        box.lo.resize(static_cast<Eigen::Index>(toks.size() - 1));
        box.hi.resize(static_cast<Eigen::Index>(toks.size() - 1));
        for (std::size_t i = 1; i < toks.size(); ++i) {
            const auto t = toks[i].text;
            const auto colon = t.find(':');
            const auto lo = colon == std::string_view::npos
                                ? std::nullopt
                                : detail::parseReal(t.substr(0, colon));
            const auto hi = colon == std::string_view::npos
                                ? std::nullopt
                                : detail::parseReal(t.substr(colon + 1));
            if (!lo || !hi || !(*lo < *hi)) {
                throw ParseError("axis must be lo:hi with lo < hi", line_no,
                                 toks[i].column);
            }
            box.lo(static_cast<Eigen::Index>(i - 1)) = *lo;
            box.hi(static_cast<Eigen::Index>(i - 1)) = *hi;
        }
        cover.push_back(std::move(box));
    }
    return cover;
}

} // namespace pqcgeo
