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
// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <pqcgeo/pqcgeo.hpp>

#include "support.hpp"

using namespace pqcgeo;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string hex(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    return buf;
}

std::string hex(const ComplexMatrix &m) {
    std::string s;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
        s += hex(m.data()[i].real()) + "," + hex(m.data()[i].imag()) + ";";
    }
    return s;
}

RealVector vec(std::initializer_list<double> v) {
    RealVector x(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double d : v) {
        x(i++) = d;
    }
    return x;
}

ParsedCircuit circuitFile(const std::string &file) {
    return loadCircuitFile(std::string(PQCGEO_CIRCUIT_DIR) + "/" + file);
}

std::string runCli(const std::string &args) {
    const std::string cmd = std::string(PQCGEO_CLI_PATH) + " " + args + " 2>/dev/null";
    std::string out;
    FILE *p = popen(cmd.c_str(), "r");
    if (p == nullptr) {
        throw IoError("cannot run " + cmd);
    }
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) {
        out.append(buf, n);
    }
    if (pclose(p) != 0) {
        throw IoError("command failed: " + cmd);
    }
    return out;
}

std::string withoutCommandLine(const std::string &text) {
    std::istringstream in(text);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        if (line.rfind("# command", 0) != 0) {
            out += line + "\n";
        }
    }
    return out;
}

// 1
Outcome squaresLandscape() {
    const auto dir = std::filesystem::temp_directory_path() /
                     ("pqcgeo_accept_" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    (void)runCli("--out " + dir.string() +
                 " landscape --fixture squares --grid -1:1:101,-1:1:101");
    std::ifstream in(dir / "landscape.csv");
    std::string line;
    std::size_t rows = 0;
    std::size_t wrong = 0;
    std::size_t origin_rank = 9;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            header = line == "axis1,axis2,rank";
            continue;
        }
        double x = 0;
        double y = 0;
        std::size_t r = 0;
        char c1 = 0;
        char c2 = 0;
        std::istringstream ls(line);
        ls >> x >> c1 >> y >> c2 >> r;
        const std::size_t expect = (x != 0.0) + (y != 0.0);
        wrong += r != expect;
        if (x == 0.0 && y == 0.0) {
            origin_rank = r;
        }
        ++rows;
    }
    std::filesystem::remove_all(dir);
    return {header && rows == 101 * 101 && wrong == 0 && origin_rank == 0,
            std::to_string(rows) + " nodes, " + std::to_string(wrong) +
                " mismatches, origin rank " + std::to_string(origin_rank)};
}

// 2
Outcome rankJump() {
    const GridAxis a{-1.0, 1.0, 101};
    const auto land =
        rankLandscape(fixtures::rankJump(), 0, 1, a, a, vec({0, 0}));
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < 101; ++i) {
        for (std::size_t j = 0; j < 101; ++j) {
            wrong += land.at(i, j) != (a.node(i) == 0.0 ? 1u : 2u);
        }
    }
    return {wrong == 0, std::to_string(wrong) + " mismatches"};
}

// 3
std::vector<double> jacobianDeviations(std::size_t threads,
                                       std::string *report = nullptr) {
    std::mt19937_64 rng(3);
    std::vector<Circuit> circuits;
    std::vector<RealVector> points;
    for (int t = 0; t < 20; ++t) {
        circuits.push_back(testing::randomCircuit(rng, 3, 6));
        points.push_back(testing::randomPoint(rng, circuits.back().numParams()));
    }
    std::vector<double> dev(20);
    std::vector<std::string> parts(20);
    parallelFor(20, threads, [&](std::size_t i) {
        const ParameterPoint p{points[i]};
        const RealMatrix an = jacobianAnalytic(circuits[i], p).matrix;
        const RealMatrix fd =
            jacobianFd(circuits[i],
                       ParameterSpace::lines(circuits[i].numParams()), p, 1e-5)
                .matrix;
        dev[i] = (an - fd).cwiseAbs().maxCoeff();
        for (Eigen::Index k = 0; k < an.size(); ++k) {
            parts[i] += hex(an.data()[k]) + ",";
        }
    });
    if (report != nullptr) {
        for (std::size_t i = 0; i < 20; ++i) {
            *report += parts[i] + hex(dev[i]) + "\n";
        }
    }
    return dev;
}

Outcome jacobianOracle() {
    const auto dev = jacobianDeviations(1);
    const double worst = *std::max_element(dev.begin(), dev.end());
    return {worst < 1e-5, "max |analytic - fd| = " + num(worst)};
}

// 4
Outcome xStarX() {
    std::mt19937_64 rng(4);
    auto f = [](const ComplexMatrix &x) {
        return ComplexMatrix(x.adjoint() * x);
    };
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix a = testing::randomComplex(rng, 4, 4);
        const ComplexMatrix v = testing::randomComplex(rng, 4, 4);
        const ComplexMatrix fd = directionalDerivativeFd(f, a, v, 1e-5);
        const ComplexMatrix exact = a.adjoint() * v + v.adjoint() * a;
        worst = std::max(worst, (fd - exact).cwiseAbs().maxCoeff());
    }
    return {worst < 1e-6, "max deviation " + num(worst)};
}

// 5
Outcome logRoundTrip() {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        const ComplexMatrix u = haarUnitary(5, 4, i);
        worst = std::max(worst,
                         (expmIHermitian(hermitianLog(u), 1.0) - u).norm());
    }
    std::ostringstream os;
    os << "max ||e^{iH} - U||_F = " << worst;
    return {worst < 1e-8, os.str()};
}

// 6
Outcome unitaryDimension() {
    const Circuit u2 = testing::fullBasisLayer(1, 2);
    const Circuit u3 = testing::fullBasisLayer(2, 3);
    const auto r2 =
        svdRank(unitaryJacobian(u2, ParameterPoint{RealVector::Zero(4)}).matrix,
                1e-9)
            .rank;
    const auto r3 =
        svdRank(unitaryJacobian(u3, ParameterPoint{RealVector::Zero(9)}).matrix,
                1e-9)
            .rank;
    return {r2 == 4 && r3 == 9, "rank " + std::to_string(r2) + " (n=2), " +
                                    std::to_string(r3) + " (n=3)"};
}

// 7
Outcome figureEight() {
    const auto f = fixtures::figureEight();
    std::size_t wrong = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = -kPi + (2 * i + 1) * kPi / 1000.0;
        wrong += rankAt(f, vec({x})).rank != 1;
    }
    InjectivityOptions opt;
    opt.resolution = 1e-3;
    opt.collision_tol = 1e-6;
    const auto rep = injectivityScan(f, {{-kPi + 0.01, kPi - 0.01}}, opt);
    return {wrong == 0 && rep.collisions.empty(),
            std::to_string(wrong) + " rank mismatches, " +
                std::to_string(rep.collisions.size()) + " collisions in " +
                std::to_string(rep.samples) + " samples"};
}

// 8
Outcome periodicityCheck() {
    ComplexMatrix a = ComplexMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 2.0;
    ComplexMatrix b = a;
    b(1, 1) = std::sqrt(2.0);
    PeriodicityOptions opt;
    opt.denominator_bound = 1000000;
    const auto pa = periodicity(HermitianMatrix(a), opt);
    const auto pb = periodicity(HermitianMatrix(b), opt);
    const bool ok = pa.periodic() && std::abs(*pa.period - 2 * kPi) < 1e-12 &&
                    *pa.residual < 1e-9 && !pb.period.has_value();
    std::ostringstream os;
    os << "T(diag(1,2)) = " << (pa.period ? *pa.period : 0.0)
       << ", residual " << (pa.residual ? *pa.residual : -1.0)
       << "; diag(1,sqrt2) " << (pb.period ? "periodic" : "none");
    return {ok, os.str()};
}

// 9
Outcome superfluous() {
    const auto a = circuitFile("rz_rz.qc");
    const auto b = circuitFile("ry_rz.qc");
    const CircuitStateMap ma(std::make_shared<const Circuit>(a.circuit),
                             a.space);
    const CircuitStateMap mb(std::make_shared<const Circuit>(b.circuit),
                             b.space);
    const auto pa = superfluousParams(ma, vec({0.3, 1.1}));
    const auto pb = superfluousParams(mb, vec({0.3, 1.1}));
    const bool ok = pa.rank == 1 &&
                    pa.superfluous == std::vector<std::size_t>{1} &&
                    pb.rank == 2 && pb.superfluous.empty();
    return {ok, "rz rz: rank " + std::to_string(pa.rank) + ", " +
                    std::to_string(pa.superfluous.size()) +
                    " superfluous; ry rz: rank " + std::to_string(pb.rank) +
                    ", " + std::to_string(pb.superfluous.size()) +
                    " superfluous"};
}

// 10
Outcome sphereVolumes() {
    const auto s = fixtures::sphereChart();
    const double full = patchVolume(
        s, Grid({GridAxis{0.0, kPi, 400}, GridAxis{0.0, 2 * kPi, 400}}));
    const double belt =
        patchVolume(s, Grid({GridAxis{kPi / 2 - 0.1, kPi / 2 + 0.1, 100},
                             GridAxis{0.0, 2 * kPi, 100}}));
    const double cap = patchVolume(
        s, Grid({GridAxis{0.0, 0.2, 100}, GridAxis{0.0, 2 * kPi, 100}}));
    const double rel = std::abs(full - 4 * kPi) / (4 * kPi);
    std::ostringstream os;
    os << "full " << full << " (rel err " << rel << "), belt " << belt
       << " > cap " << cap;
    return {rel < 0.01 && belt > cap, os.str()};
}

// 11
std::vector<ComplexVector> haarStates(std::uint64_t seed, std::size_t count,
                                      std::size_t threads) {
    std::vector<ComplexVector> v(count);
    parallelFor(count, threads, [&](std::size_t i) {
        v[i] = haarUnitary(seed, 4, i).col(0);
    });
    return v;
}

double projectorError(std::uint64_t seed, std::size_t count,
                      std::size_t threads, std::string *report = nullptr) {
    const auto states = haarStates(seed, count, threads);
    const ComplexMatrix mean =
        detail::projectorSum(states, nullptr, threads) /
        static_cast<double>(count);
    if (report != nullptr) {
        *report += hex(mean) + "\n";
    }
    return (mean - ComplexMatrix::Identity(4, 4) / 4.0).norm();
}

double haarSlope(std::size_t threads, std::string *report = nullptr) {
    const std::vector<double> ns{100, 1000, 10000};
    std::vector<double> x;
    std::vector<double> y;
    for (double n : ns) {
        double sum = 0.0;
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            sum += projectorError(1100 + seed, static_cast<std::size_t>(n),
                                  threads, report);
        }
        x.push_back(std::log(n));
        y.push_back(std::log(sum / 8));
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / 3;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / 3;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

Outcome haarSanity() {
    const double err = projectorError(11, 20000, 1);
    const double slope = haarSlope(1);
    std::ostringstream os;
    os << "||mean - I/4||_F = " << err << ", slope " << slope;
    return {err < 0.05 && std::abs(slope + 0.5) <= 0.2, os.str()};
}

// 12
struct EtaPair {
    ExpressivityReport single;
    ExpressivityReport three;
    ExpressivityReport self;
};

EtaPair etaRuns(std::size_t threads) {
    const auto one = circuitFile("rz_only.qc");
    const auto rot = circuitFile("rot3.qc");
    ExpressivityOptions opt;
    opt.param_samples = 20000;
    opt.haar_samples = 20000;
    opt.seed = 12;
    opt.threads = threads;
    EtaPair out;
    out.single = expressivityEta(one.circuit, one.space, opt);
    out.three = expressivityEta(rot.circuit, rot.space, opt);
    opt.self_test = true;
    out.self = expressivityEta(rot.circuit, rot.space, opt);
    return out;
}

std::string etaReport(const EtaPair &e) {
    std::string s;
    for (const auto *r : {&e.single, &e.three, &e.self}) {
        s += hex(r->eta) + " " + hex(r->std_error) + " " + hex(r->haar_mean) +
             " " + hex(r->ansatz_mean) + "\n";
    }
    return s;
}

Outcome etaOrdering() {
    const auto e = etaRuns(1);
    std::ostringstream os;
    os << "eta(rot3) = " << e.three.eta << " < eta(rz) = " << e.single.eta
       << "; self-test eta " << e.self.eta << " vs 3*SE "
       << 3 * e.self.std_error;
    return {e.three.eta < e.single.eta && e.self.eta < 3 * e.self.std_error,
            os.str()};
}

// 13
Outcome chains() {
    std::mt19937_64 rng(13);
    std::size_t found = 0;
    std::size_t none = 0;
    std::size_t bad = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t dim = 1 + static_cast<std::size_t>(trial % 3);
        std::uniform_int_distribution<int> corner(0, 18);
        std::uniform_int_distribution<int> width(1, 5);
        Cover c;
        for (int k = 0; k < 4 + trial % 17; ++k) {
            Box b{"U" + std::to_string(k),
                  RealVector(static_cast<Eigen::Index>(dim)),
                  RealVector(static_cast<Eigen::Index>(dim))};
            for (Eigen::Index i = 0; i < b.lo.size(); ++i) {
                b.lo(i) = corner(rng) * 0.5;
                b.hi(i) = b.lo(i) + width(rng) * 0.5;
            }
            c.push_back(std::move(b));
        }
        auto pick = [&] {
            const Box &u = c[std::uniform_int_distribution<std::size_t>(
                0, c.size() - 1)(rng)];
            RealVector x(u.lo.size());
            for (Eigen::Index i = 0; i < x.size(); ++i) {
                x(i) = (u.lo(i) + u.hi(i)) / 2 +
                       std::uniform_real_distribution<double>(-0.4, 0.4)(rng) *
                           (u.hi(i) - u.lo(i));
            }
            return x;
        };
        const RealVector a = pick();
        const RealVector b = pick();
        // Union-find over the box-intersection graph.
        std::vector<std::size_t> parent(c.size());
        std::iota(parent.begin(), parent.end(), std::size_t{0});
        std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
            return parent[x] == x ? x : parent[x] = find(parent[x]);
        };
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = i + 1; j < c.size(); ++j) {
                if (intersects(c[i], c[j])) {
                    parent[find(i)] = find(j);
                }
            }
        }
        bool connected = false;
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = 0; j < c.size(); ++j) {
                connected = connected ||
                            (c[i].contains(a) && c[j].contains(b) &&
                             find(i) == find(j));
            }
        }
        const auto ch = openChain(c, a, b);
        if (ch) {
            ++found;
            bad += !isOpenChain(c, *ch, a, b) || !connected;
        } else {
            ++none;
            bad += connected;
        }
    }
    return {bad == 0, std::to_string(found) + " chains, " +
                          std::to_string(none) + " no-chain, " +
                          std::to_string(bad) + " violations"};
}

// 14
Outcome determinism() {
    std::string j1;
    std::string j1b;
    std::string j4;
    (void)jacobianDeviations(1, &j1);
    (void)jacobianDeviations(1, &j1b);
    (void)jacobianDeviations(4, &j4);
    std::string h1;
    std::string h1b;
    std::string h4;
    h1 += hex(haarSlope(1, &h1));
    h1b += hex(haarSlope(1, &h1b));
    h4 += hex(haarSlope(4, &h4));
    const std::string e1 = etaReport(etaRuns(1));
    const std::string e1b = etaReport(etaRuns(1));
    const std::string e4 = etaReport(etaRuns(4));
    const std::string args =
        " expressivity " + std::string(PQCGEO_CIRCUIT_DIR) + "/rz_only.qc" +
        " --compare " + std::string(PQCGEO_CIRCUIT_DIR) + "/rot3.qc" +
        " --samples 5000 --bootstrap 50";
    const std::string c1 =
        withoutCommandLine(runCli("--seed 14 --threads 1" + args));
    const std::string c4 =
        withoutCommandLine(runCli("--seed 14 --threads 4" + args));
    const bool jac = j1 == j1b && j1 == j4;
    const bool haar = h1 == h1b && h1 == h4;
    const bool eta = e1 == e1b && e1 == e4;
    const bool cli = c1 == c4 && !c1.empty();
    return {jac && haar && eta && cli,
            std::string("jacobian ") + (jac ? "identical" : "differs") +
                ", haar " + (haar ? "identical" : "differs") + ", eta " +
                (eta ? "identical" : "differs") + ", cli " +
                (cli ? "identical" : "differs") + " (threads 1 vs 4)"};
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char *name;
        Outcome (*run)();
        double budget_s; // 0: no runtime bound
    };
    const Criterion all[] = {
        {1, "squares landscape 101x101", squaresLandscape, 1.0},
        {2, "rank_jump landscape 101x101", rankJump, 0.0},
        {3, "analytic vs FD Jacobian, 20 circuits", jacobianOracle, 10.0},
        {4, "differential of X -> X*X", xStarX, 0.0},
        {5, "Hermitian log round trip, 100 unitaries", logRoundTrip, 0.0},
        {6, "dim U(n) = n^2 for n = 2, 3", unitaryDimension, 0.0},
        {7, "figure eight rank and injectivity", figureEight, 0.0},
        {8, "periodicity of diag(1,2) and diag(1,sqrt2)", periodicityCheck,
         0.0},
        {9, "superfluous parameters", superfluous, 0.0},
        {10, "sphere chart volumes", sphereVolumes, 0.0},
        {11, "Haar projector mean and convergence", haarSanity, 0.0},
        {12, "expressivity ordering and self-test", etaOrdering, 0.0},
        {13, "open chains on 100 random covers", chains, 0.0},
        {14, "determinism across runs and threads", determinism, 0.0},
    };
    int failed = 0;
    for (const auto &c : all) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
        std::ostringstream time;
        time.precision(3);
        time << std::fixed << secs << " s";
        if (c.budget_s > 0.0) {
            time << " (limit " << c.budget_s << " s)";
            if (secs >= c.budget_s) {
                o.pass = false;
            }
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] "
                  << c.name << ": " << o.detail << "; " << time.str()
                  << std::endl;
    }
    std::cout << (failed == 0 ? "all criteria passed"
                              : std::to_string(failed) + " criteria failed")
              << std::endl;
    return failed == 0 ? 0 : 1;
}
