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
#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <pqcgeo/pqcgeo.hpp>

namespace {

using namespace pqcgeo;

struct Globals {
    double rel_tol = kDefaultRelTol;
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string out_dir;
    bool strict_boundary = false;
    std::string command_line;
};

/// Either a circuit file or a named fixture.
struct Source {
    std::string circuit_path;
    std::string fixture;
    bool unitary = false;
};

struct Loaded {
    AnyMap map;
    std::optional<ParsedCircuit> parsed;
};

std::vector<double> parseList(const std::string &text) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto v = detail::parseReal(item);
        if (!v) {
            throw ValidationError("not a number: '" + item + "'");
        }
        out.push_back(*v);
    }
    return out;
}

RealVector toVector(const std::vector<double> &v) {
    RealVector x(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        x(static_cast<Eigen::Index>(i)) = v[i];
    }
    return x;
}

std::vector<std::size_t> parseIndexList(const std::string &text) {
    std::vector<std::size_t> out;
    for (double v : parseList(text)) {
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
            throw ValidationError("not an index: " + detail::formatReal(v));
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<GridAxis> parseGridList(const std::string &text) {
    std::vector<GridAxis> axes;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        axes.push_back(parseGridAxis(item));
    }
    return axes;
}

/// "lo:hi,lo:hi" boxes.
std::vector<std::pair<double, double>> parseBox(const std::string &text) {
    std::vector<std::pair<double, double>> box;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        const auto colon = item.find(':');
        const auto lo = colon == std::string::npos
                            ? std::nullopt
                            : detail::parseReal(item.substr(0, colon));
        const auto hi = colon == std::string::npos
                            ? std::nullopt
                            : detail::parseReal(item.substr(colon + 1));
        if (!lo || !hi || *hi < *lo) {
            throw ValidationError("box axis must be lo:hi, got '" + item +
                                  "'");
        }
        box.emplace_back(*lo, *hi);
    }
    return box;
}

Loaded load(const Source &src, const Globals &g) {
    if (src.fixture.empty() == src.circuit_path.empty()) {
        throw ValidationError("give exactly one of a circuit file or "
                              "--fixture");
    }
    if (!src.fixture.empty()) {
        auto f = fixtures::byName(src.fixture);
        return {AnyMap(f, src.fixture), std::nullopt};
    }
    auto parsed = loadCircuitFile(src.circuit_path, g.strict_boundary
                                                        ? BoundaryMode::Strict
                                                        : BoundaryMode::Warn);
    for (const auto &w : parsed.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    auto shared = std::make_shared<const Circuit>(parsed.circuit);
    AnyMap m = src.unitary
                   ? AnyMap(CircuitUnitaryMap(shared, parsed.space), "unitary")
                   : AnyMap(CircuitStateMap(shared, parsed.space), "state");
    return {std::move(m), std::move(parsed)};
}

/// Default base point: 0 on lines, midpoints of intervals, 0 on circles.
RealVector defaultPoint(const ParameterSpace &space) {
    RealVector x = RealVector::Zero(static_cast<Eigen::Index>(space.size()));
    for (std::size_t j = 0; j < space.size(); ++j) {
        if (const auto *iv = std::get_if<Interval>(&space.factor(j))) {
            x(static_cast<Eigen::Index>(j)) = 0.5 * (iv->lo + iv->hi);
        }
    }
    return x;
}

RealVector pointOrDefault(const std::string &at, const ParameterSpace &space) {
    if (at.empty()) {
        return defaultPoint(space);
    }
    const RealVector x = toVector(parseList(at));
    if (static_cast<std::size_t>(x.size()) != space.size()) {
        throw ValidationError("point has " + std::to_string(x.size()) +
                              " coordinates, expected " +
                              std::to_string(space.size()));
    }
    return space.point(x).coords;
}

/// Where the map lands; circuit states are realified onto S^{2n-1}.
std::string codomain(const Loaded &l) {
    if (!l.parsed) {
        return "fixture " + l.map.name();
    }
    const std::size_t n = l.parsed->circuit.dim();
    if (l.map.hasPhase()) {
        return "real unit sphere S^" + std::to_string(2 * n - 1) + " in R^" +
               std::to_string(2 * n);
    }
    return "U(" + std::to_string(n) + ") in R^" + std::to_string(2 * n * n);
}

std::string paramName(const Loaded &l, std::size_t j) {
    if (l.parsed && j < l.parsed->circuit.paramNames().size()) {
        return l.parsed->circuit.paramNames()[j];
    }
    return "p" + std::to_string(j);
}

std::string joinIndices(const Loaded &l, const std::vector<std::size_t> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + paramName(l, v[i]);
    }
    return s.empty() ? "none" : s;
}

std::string joinValues(const std::vector<double> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? "," : "") + detail::formatReal(v[i]);
    }
    return s;
}

Provenance provenance(const Globals &g) {
    Provenance p;
    p.command_line = g.command_line;
    p.seed = g.seed;
    p.tolerances["rel_tol"] = detail::formatReal(g.rel_tol);
    return p;
}

/// Writes `name` under --out, or to stdout when no directory was given.
void emit(const Globals &g, const Provenance &p, const std::string &name,
          const std::string &body) {
    const std::string text = p.header() + body;
    if (g.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(g.out_dir);
    const auto path = std::filesystem::path(g.out_dir) / name;
    writeTextFile(path, text);
    std::cout << "wrote " << path.string() << "\n";
}

//===----------------------------------------------------------------------===//
// Subcommands
//===----------------------------------------------------------------------===//

struct RankArgs {
    Source src;
    std::string at;
    bool jacobian_csv = false;
};

int cmdRank(const RankArgs &a, const Globals &g) {
    const Loaded l = load(a.src, g);
    const RealVector x = pointOrDefault(a.at, l.map.domain());
    const RankReport r = rankAt(l.map, x, g.rel_tol);
    std::cout << "rank " << r.rank << " of max " << r.max_rank << "\n";
    Report rep;
    rep.set("codomain", codomain(l));
    rep.set("point", x);
    rep.set("rank", r.rank);
    rep.set("max_rank", r.max_rank);
    rep.set("rel_tol", g.rel_tol);
    rep.set("threshold", r.threshold_used);
    rep.set("singular_values", joinValues(r.singular_values));
    if (r.phase_in_span) {
        rep.set("phase_in_span", *r.phase_in_span ? "true" : "false");
    }
    std::cout << rep.text();
    if (a.jacobian_csv) {
        emit(g, provenance(g), "jacobian.csv", jacobianCsv(l.map.jacobian(x)));
    }
    return 0;
}

struct LandscapeArgs {
    Source src;
    std::string grid;
    std::string axes = "0,1";
    std::string at;
};

int cmdLandscape(const LandscapeArgs &a, const Globals &g) {
    const Loaded l = load(a.src, g);
    const auto axes = parseIndexList(a.axes);
    const auto grid = parseGridList(a.grid);
    if (axes.size() != 2 || grid.size() != 2) {
        throw ValidationError("landscape needs two axes and two grid specs");
    }
    const RealVector base = pointOrDefault(a.at, l.map.domain());
    const auto land = rankLandscape(l.map, axes[0], axes[1], grid[0],
                                    grid[1], base, g.rel_tol, g.threads);
    std::vector<std::size_t> hist(l.map.maxRank() + 1, 0);
    for (std::size_t r : land.ranks) {
        hist[std::min(r, hist.size() - 1)]++;
    }
    emit(g, provenance(g), "landscape.csv", land.csv());
    std::cerr << "nodes " << land.ranks.size();
    for (std::size_t r = 0; r < hist.size(); ++r) {
        std::cerr << " rank" << r << "=" << hist[r];
    }
    std::cerr << "\n";
    return 0;
}

struct PointArgs {
    Source src;
    std::string at;
};

int cmdSuperfluous(const PointArgs &a, const Globals &g) {
    const Loaded l = load(a.src, g);
    const RealVector x = pointOrDefault(a.at, l.map.domain());
    const auto part = superfluousParams(l.map, x, g.rel_tol);
    std::cout << "rank " << part.rank << " of max " << l.map.maxRank()
              << "\n";
    Report rep;
    rep.set("codomain", codomain(l));
    rep.set("essential", joinIndices(l, part.essential));
    rep.set("point", x);
    rep.set("rank", part.rank);
    rep.set("rel_tol", g.rel_tol);
    rep.set("superfluous", joinIndices(l, part.superfluous));
    std::cout << rep.text();
    return 0;
}

struct SliceArgs {
    Source src;
    std::string at;
    std::string box;
};

int cmdSlice(const SliceArgs &a, const Globals &g) {
    const Loaded l = load(a.src, g);
    const RealVector q = pointOrDefault(a.at, l.map.domain());
    const Slice s = sliceAt(l.map, q, g.rel_tol);
    for (const auto &w : s.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    Report rep;
    rep.set("base_point", q);
    rep.set("codomain", codomain(l));
    rep.set("dim", s.dim());
    rep.set("frozen", joinIndices(l, s.frozen));
    rep.set("frozen_values", joinValues(s.fixed_values));
    rep.set("kept", joinIndices(l, s.kept));
    if (!a.box.empty()) {
        const auto scan =
            sliceRankScan(l.map, s, parseGridList(a.box), g.rel_tol,
                          g.threads);
        rep.set("scan_flagged", scan.flagged.size());
        rep.set("scan_nodes", scan.nodes.size());
    }
    std::cout << rep.text();
    return 0;
}

struct GoodSetArgs {
    Source src;
    std::string at;
    std::string box;
    double resolution = 0.05;
    double collision_tol = 1e-6;
    bool ball = false;
    std::optional<double> max_radius;
};

int cmdGoodSet(const GoodSetArgs &a, const Globals &g) {
    const Loaded l = load(a.src, g);
    const RealVector q = pointOrDefault(a.at, l.map.domain());
    Provenance p = provenance(g);
    p.tolerances["collision_tol"] = detail::formatReal(a.collision_tol);
    p.tolerances["resolution"] = detail::formatReal(a.resolution);
    if (a.ball) {
        EmbeddingOptions opt;
        opt.resolution = a.resolution;
        opt.rel_tol = g.rel_tol;
        opt.collision_tol = a.collision_tol;
        opt.threads = g.threads;
        opt.max_radius = a.max_radius;
        const auto ball = localEmbeddingBall(l.map, q, opt);
        Report rep;
        rep.set("failing_radius", ball.failing_radius);
        rep.set("nodes_checked", ball.nodes_checked);
        rep.set("radius", ball.radius);
        rep.set("rank", ball.rank);
        rep.set("resolution", ball.resolution);
        std::cout << rep.text();
        for (const auto &d : ball.diagnostics) {
            std::cerr << "note: " << d << "\n";
        }
        return 0;
    }
    GoodSetOptions opt;
    opt.resolution = a.resolution;
    opt.rel_tol = g.rel_tol;
    opt.collision_tol = a.collision_tol;
    opt.threads = g.threads;
    if (!a.box.empty()) {
        opt.box = parseBox(a.box);
    }
    const auto rep = goodSetScan(l.map, q, opt);
    for (const auto &w : rep.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    emit(g, p, "goodset.csv", rep.csv());
    std::cerr << "rank " << rep.rank << ", good nodes " << rep.node_count
              << " of " << rep.nodes.size() << ", collisions removed "
              << rep.collisions_removed << "\n";
    return 0;
}

struct InjectivityArgs {
    Source src;
    std::optional<std::size_t> param;
    std::uint64_t denominator_bound = 1000000;
    std::string region;
    double resolution = 1e-3;
    double collision_tol = 1e-6;
};

int cmdInjectivity(const InjectivityArgs &a, const Globals &g) {
    const Loaded l = load(a.src, g);
    if (a.param) {
        if (!l.parsed) {
            throw ValidationError("--param needs a circuit file");
        }
        const Circuit &c = l.parsed->circuit;
        if (*a.param >= c.numParams()) {
            throw ValidationError("parameter index out of range");
        }
        const auto gates = c.gatesOf(*a.param);
        if (gates.size() != 1) {
            throw ValidationError(
                "parameter drives several gates; periodicity needs a single "
                "generator");
        }
        const HermitianMatrix h(c.kernels()[gates.front()].generator);
        PeriodicityOptions opt;
        opt.denominator_bound = a.denominator_bound;
        const auto res = periodicity(h, opt);
        switch (res.kind) {
        case PeriodicityResult::Kind::Periodic:
            std::cout << "periodic, T=" << detail::formatReal(*res.period)
                      << "\n";
            std::cout << "residual " << detail::formatReal(*res.residual)
                      << "\n";
            break;
        case PeriodicityResult::Kind::Aperiodic:
            std::cout << "aperiodic (no period with common denominator <= "
                      << a.denominator_bound << ")\n";
            break;
        case PeriodicityResult::Kind::Constant:
            std::cout << "constant (zero generator)\n";
            break;
        }
        return 0;
    }
    if (a.region.empty()) {
        throw ValidationError("give --param or --region");
    }
    InjectivityOptions opt;
    opt.resolution = a.resolution;
    opt.collision_tol = a.collision_tol;
    const auto rep =
        injectivityScan(l.map, parseBox(a.region), opt, g.threads);
    std::cout << "samples " << rep.samples << "\n";
    std::cout << "collisions " << rep.collisions.size()
              << (rep.truncated ? " (truncated)" : "") << "\n";
    std::cout << (rep.injectiveAtResolution()
                      ? "injective at resolution "
                      : "not injective at resolution ")
              << detail::formatReal(rep.resolution) << "\n";
    if (!rep.collisions.empty()) {
        std::ostringstream os;
        os << "first,second,param_distance,value_distance\n";
        for (const auto &col : rep.collisions) {
            os << col.first << "," << col.second << ","
               << detail::formatReal(col.param_distance) << ","
               << detail::formatReal(col.value_distance) << "\n";
        }
        Provenance p = provenance(g);
        p.tolerances["collision_tol"] = detail::formatReal(a.collision_tol);
        p.tolerances["resolution"] = detail::formatReal(a.resolution);
        if (!g.out_dir.empty()) {
            emit(g, p, "collisions.csv", os.str());
        }
    }
    return 0;
}

struct ExpressivityArgs {
    std::string circuit;
    std::string compare;
    std::size_t samples = 20000;
    std::size_t param_samples = 0;
    std::size_t haar_samples = 0;
    std::string norm = "frobenius";
    std::size_t bootstrap = 200;
    bool self_test = false;
};

ExpressivityReport runEta(const std::string &path, const ExpressivityArgs &a,
                          const Globals &g) {
    const auto parsed = loadCircuitFile(
        path, g.strict_boundary ? BoundaryMode::Strict : BoundaryMode::Warn);
    ExpressivityOptions opt;
    opt.param_samples = a.param_samples ? a.param_samples : a.samples;
    opt.haar_samples = a.haar_samples ? a.haar_samples : a.samples;
    opt.norm = parseNorm(a.norm);
    opt.seed = g.seed;
    opt.bootstrap_replicates = a.bootstrap;
    opt.threads = g.threads;
    opt.self_test = a.self_test;
    return expressivityEta(parsed.circuit, parsed.space, opt);
}

std::string etaText(const ExpressivityReport &r) {
    Report rep;
    rep.set("eta", r.eta);
    rep.set("haar_samples", r.haar_samples);
    rep.set("norm", r.norm_name);
    rep.set("param_samples", r.param_samples);
    rep.set("seed", std::to_string(r.seed));
    rep.set("self_test", r.self_test ? "true" : "false");
    rep.set("std_error", r.std_error);
    std::string out = rep.text();
    for (const auto &n : r.notes) {
        out += "note " + n + "\n";
    }
    return out;
}

int cmdExpressivity(const ExpressivityArgs &a, const Globals &g) {
    const auto ra = runEta(a.circuit, a, g);
    std::cout << "eta(" << a.circuit << ") = " << detail::formatReal(ra.eta)
              << " +- " << detail::formatReal(ra.std_error) << " ["
              << ra.norm_name << "]\n";
    Provenance p = provenance(g);
    p.tolerances["bootstrap"] = std::to_string(a.bootstrap);
    if (!g.out_dir.empty()) {
        emit(g, p, "expressivity.txt", etaText(ra));
        emit(g, p, "haar_mean.mat", formatMatrix(ra.haar_mean));
        emit(g, p, "ansatz_mean.mat", formatMatrix(ra.ansatz_mean));
    } else {
        std::cout << etaText(ra);
    }
    if (!a.compare.empty()) {
        const auto rb = runEta(a.compare, a, g);
        std::cout << "eta(" << a.compare
                  << ") = " << detail::formatReal(rb.eta) << " +- "
                  << detail::formatReal(rb.std_error) << " [" << rb.norm_name
                  << "]\n";
        if (ra.eta < rb.eta) {
            std::cout << "verdict: " << a.circuit
                      << " is more expressive than " << a.compare << "\n";
        } else if (rb.eta < ra.eta) {
            std::cout << "verdict: " << a.compare
                      << " is more expressive than " << a.circuit << "\n";
        } else {
            std::cout << "verdict: neither is more expressive (equal eta)\n";
        }
    }
    return 0;
}

struct VolumeArgs {
    Source src;
    std::string region;
};

int cmdVolume(const VolumeArgs &a, const Globals &g) {
    const Loaded l = load(a.src, g);
    if (a.region.empty()) {
        throw ValidationError("--region is required");
    }
    const Grid grid(parseGridList(a.region));
    const double v = patchVolume(l.map, grid, g.rel_tol, g.threads);
    std::cout << "volume " << detail::formatReal(v) << "\n";
    std::cout << "nodes " << grid.size() << "\n";
    return 0;
}

struct ChainArgs {
    std::string cover;
    std::string from;
    std::string to;
};

int cmdChain(const ChainArgs &a, const Globals &g) {
    const Cover cover = parseCover(readTextFile(a.cover));
    const auto chain =
        openChain(cover, toVector(parseList(a.from)), toVector(parseList(a.to)));
    if (!chain) {
        std::cout << "no chain: the endpoints lie in different components\n";
        return 0;
    }
    std::string body;
    for (std::size_t i : *chain) {
        body += cover[i].name + "\n";
    }
    emit(g, provenance(g), "chain.txt", body);
    return 0;
}

void addSource(CLI::App *sub, Source &src) {
    sub->add_option("circuit", src.circuit_path, "Circuit file");
    sub->add_option("--fixture", src.fixture,
                    "Named fixture: constant, figure_eight, isometry, "
                    "rank_jump, sphere_chart, squares");
    sub->add_flag("--unitary", src.unitary,
                  "Analyze the unitary map instead of the state map");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Geometry of parameterized quantum circuits"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    for (int i = 0; i < argc; ++i) {
        g.command_line += (i ? " " : "") + std::string(argv[i]);
    }
    app.add_option("--rel-tol", g.rel_tol, "Relative SVD rank tolerance")
        ->check(CLI::PositiveNumber);
    app.add_option("--seed", g.seed, "Random seed");
    app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
    app.add_option("--out", g.out_dir, "Output directory");
    app.add_flag("--strict-boundary", g.strict_boundary,
                 "Reject parameter spaces with corners");

    RankArgs rank;
    auto *s_rank = app.add_subcommand("rank", "Jacobian rank at a point");
    addSource(s_rank, rank.src);
    s_rank->add_option("--at", rank.at, "Point p1,p2,...");
    s_rank->add_flag("--jacobian-csv", rank.jacobian_csv,
                     "Also write the Jacobian as CSV");

    LandscapeArgs land;
    auto *s_land = app.add_subcommand("landscape", "Rank over a 2-D grid");
    addSource(s_land, land.src);
    s_land->add_option("--grid", land.grid, "lo:hi:steps,lo:hi:steps")
        ->required();
    s_land->add_option("--axes", land.axes, "Two coordinate indices");
    s_land->add_option("--at", land.at, "Base point for other coordinates");

    PointArgs sup;
    auto *s_sup = app.add_subcommand("superfluous", "Superfluous parameters");
    addSource(s_sup, sup.src);
    s_sup->add_option("--at", sup.at, "Point p1,p2,...");

    SliceArgs slice;
    auto *s_slice = app.add_subcommand("slice", "Slice through a point");
    addSource(s_slice, slice.src);
    s_slice->add_option("--at", slice.at, "Base point");
    s_slice->add_option("--box", slice.box,
                        "Scan box in kept coordinates: lo:hi:steps,...");

    GoodSetArgs good;
    auto *s_good = app.add_subcommand("goodset", "Good set around a point");
    addSource(s_good, good.src);
    s_good->add_option("--at", good.at, "Base point q");
    s_good->add_option("--box", good.box, "Box in kept coordinates lo:hi,...");
    s_good->add_option("--resolution", good.resolution, "Lattice spacing")
        ->check(CLI::PositiveNumber);
    s_good->add_option("--collision-tol", good.collision_tol,
                       "Image distance counted as a collision")
        ->check(CLI::PositiveNumber);
    s_good->add_flag("--ball", good.ball,
                     "Report the largest embedded ball instead");
    s_good->add_option("--max-radius", good.max_radius,
                       "Largest ball radius tried (needed on unbounded "
                       "slices)")
        ->check(CLI::PositiveNumber);

    InjectivityArgs inj;
    auto *s_inj = app.add_subcommand("injectivity",
                                     "Periodicity or sampled injectivity");
    addSource(s_inj, inj.src);
    s_inj->add_option("--param", inj.param, "Parameter index for periodicity");
    s_inj->add_option("--denominator-bound", inj.denominator_bound,
                      "Largest denominator for rational spectrum ratios");
    s_inj->add_option("--region", inj.region, "Sampling box lo:hi,...");
    s_inj->add_option("--resolution", inj.resolution, "Sample spacing")
        ->check(CLI::PositiveNumber);
    s_inj->add_option("--collision-tol", inj.collision_tol,
                      "Image distance counted as a collision")
        ->check(CLI::PositiveNumber);

    ExpressivityArgs ex;
    auto *s_ex = app.add_subcommand("expressivity",
                                    "Haar-deviation expressivity eta");
    s_ex->add_option("circuit", ex.circuit, "Circuit file")->required();
    s_ex->add_option("--compare", ex.compare, "Second circuit to compare");
    s_ex->add_option("--samples", ex.samples, "Samples per average")
        ->check(CLI::PositiveNumber);
    s_ex->add_option("--param-samples", ex.param_samples,
                     "Parameter samples (overrides --samples)");
    s_ex->add_option("--haar-samples", ex.haar_samples,
                     "Haar samples (overrides --samples)");
    s_ex->add_option("--norm", ex.norm, "frobenius or trace");
    s_ex->add_option("--bootstrap", ex.bootstrap, "Bootstrap replicates");
    s_ex->add_flag("--self-test", ex.self_test,
                   "Replace the ansatz draws by Haar draws");

    VolumeArgs vol;
    auto *s_vol = app.add_subcommand("volume", "Volume of a patch");
    addSource(s_vol, vol.src);
    s_vol->add_option("--region", vol.region, "lo:hi:steps,... per coordinate");

    ChainArgs ch;
    auto *s_ch = app.add_subcommand("chain", "Open chain in a box cover");
    s_ch->add_option("cover", ch.cover, "Cover file")->required();
    s_ch->add_option("--from", ch.from, "Start point")->required();
    s_ch->add_option("--to", ch.to, "End point")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 3;
    }

    try {
        if (s_rank->parsed()) {
            return cmdRank(rank, g);
        }
        if (s_land->parsed()) {
            return cmdLandscape(land, g);
        }
        if (s_sup->parsed()) {
            return cmdSuperfluous(sup, g);
        }
        if (s_slice->parsed()) {
            return cmdSlice(slice, g);
        }
        if (s_good->parsed()) {
            return cmdGoodSet(good, g);
        }
        if (s_inj->parsed()) {
            return cmdInjectivity(inj, g);
        }
        if (s_ex->parsed()) {
            return cmdExpressivity(ex, g);
        }
        if (s_vol->parsed()) {
            return cmdVolume(vol, g);
        }
        if (s_ch->parsed()) {
            return cmdChain(ch, g);
        }
    } catch (const pqcgeo::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exitCode();
    } catch (const std::filesystem::filesystem_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
