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
#include <catch_amalgamated.hpp>

#include <cmath>
#include <memory>
#include <numbers>

#include <pqcgeo/pqcgeo.hpp>

using namespace pqcgeo;

namespace {

constexpr double kPi = std::numbers::pi;

CircuitStateMap mapOf(const std::string &text) {
    auto pc = parseCircuit(text, mapMatrixLoader({}));
    return CircuitStateMap(std::make_shared<const Circuit>(pc.circuit),
                           pc.space);
}

HermitianMatrix diag(std::initializer_list<double> d) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(d.size()),
                                          static_cast<Eigen::Index>(d.size()));
    Eigen::Index i = 0;
    for (double v : d) {
        m(i, i) = v;
        ++i;
    }
    return HermitianMatrix(m);
}

} // namespace

TEST_CASE("figure eight is injective on the open interval",
          "[injectivity]") {
    InjectivityOptions opt;
    opt.resolution = 1e-3;
    opt.collision_tol = 1e-6;
    const auto rep = injectivityScan(fixtures::figureEight(),
                                     {{-kPi + 0.01, kPi - 0.01}}, opt);
    CHECK(rep.samples == 6264);
    CHECK(rep.injectiveAtResolution());
    CHECK_FALSE(rep.truncated);
}

TEST_CASE("figure eight pinches once the endpoints are included",
          "[injectivity]") {
    // f(±π) = f(0); a closed sample set shows it.
    const auto f = fixtures::figureEight();
    std::vector<RealVector> pts;
    std::vector<RealVector> vals;
    for (double x : {-kPi, -1.0, 0.0, 1.0, kPi}) {
        RealVector p(1);
        p << x;
        pts.push_back(p);
        vals.push_back(f.value(p));
    }
    InjectivityOptions opt;
    opt.collision_tol = 1e-9;
    const auto rep = findCollisions(f.domain(), pts, vals, opt);
    CHECK(rep.collisions.size() == 3);
    for (const auto &c : rep.collisions) {
        CHECK(c.value_distance < 1e-9);
        CHECK(c.param_distance >= kPi);
    }
}

TEST_CASE("a doubled rotation collides on a 4pi circle", "[injectivity]") {
    const auto m = mapOf("qubits 1\n"
                         "param a circle 12.566370614359172\n"
                         "init vec 0.7071067811865476 0.7071067811865476\n"
                         "gate rz 0 a scale 2\n");
    InjectivityOptions opt;
    opt.resolution = 0.05;
    opt.collision_tol = 1e-6;
    const auto rep = injectivityScan(m, {{0.0, 4 * kPi}}, opt);
    CHECK_FALSE(rep.injectiveAtResolution());
    for (const auto &c : rep.collisions) {
        CHECK(c.value_distance < 1e-6);
        CHECK(c.param_distance >= 2 * opt.resolution);
    }

    // Without the doubling the same circle carries an injective map.
    const auto single = mapOf("qubits 1\n"
                              "param a circle 12.566370614359172\n"
                              "init vec 0.7071067811865476 "
                              "0.7071067811865476\n"
                              "gate rz 0 a\n");
    CHECK(injectivityScan(single, {{0.0, 4 * kPi}}, opt)
              .injectiveAtResolution());
}

TEST_CASE("circle distances wrap around", "[injectivity]") {
    const ParameterSpace s({Circle{2 * kPi}});
    std::vector<RealVector> pts(2, RealVector(1));
    pts[0] << 0.001;
    pts[1] << 2 * kPi - 0.001;
    const std::vector<RealVector> vals(2, RealVector::Zero(2));
    InjectivityOptions opt;
    opt.resolution = 0.01;
    // 0.002 apart across the seam: closer than 2·resolution, no collision.
    CHECK(findCollisions(s, pts, vals, opt).collisions.empty());
    const ParameterSpace line = ParameterSpace::lines(1);
    CHECK(findCollisions(line, pts, vals, opt).collisions.size() == 1);
}

TEST_CASE("degenerate regions", "[injectivity]") {
    InjectivityOptions opt;
    const auto rep =
        injectivityScan(fixtures::figureEight(), {{0.5, 0.5}}, opt);
    CHECK(rep.samples == 1);
    CHECK(rep.injectiveAtResolution());
    CHECK_THROWS_AS(
        injectivityScan(fixtures::figureEight(), {{0.0, 4.0}}, opt),
        ValidationError);
    CHECK_THROWS_AS(injectivityScan(fixtures::squares(), {{0.0, 1.0}}, opt),
                    ValidationError);
    opt.resolution = 0.0;
    CHECK_THROWS_AS(
        injectivityScan(fixtures::figureEight(), {{0.0, 1.0}}, opt),
        ValidationError);
}

TEST_CASE("collision search matches brute force", "[injectivity][property]") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const ParameterSpace s = ParameterSpace::lines(2);
    for (int t = 0; t < 20; ++t) {
        std::vector<RealVector> pts;
        std::vector<RealVector> vals;
        for (int i = 0; i < 150; ++i) {
            RealVector p(2);
            p << u(rng), u(rng);
            RealVector v(2);
            // Coarse values so that exact ties are common.
            v << std::round(3 * p(0) * p(0)), std::round(3 * p(1) * p(1));
            pts.push_back(p);
            vals.push_back(v);
        }
        InjectivityOptions opt;
        opt.resolution = 0.05;
        opt.collision_tol = 0.5;
        std::size_t expected = 0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            for (std::size_t j = i + 1; j < pts.size(); ++j) {
                const double pd = (pts[i] - pts[j]).cwiseAbs().maxCoeff();
                expected += pd >= 0.1 && (vals[i] - vals[j]).norm() < 0.5;
            }
        }
        CHECK(findCollisions(s, pts, vals, opt).collisions.size() ==
              expected);
    }
}

TEST_CASE("periodicity of exponentials", "[periodicity]") {
    const auto p = periodicity(diag({1.0, 2.0}));
    REQUIRE(p.periodic());
    CHECK(*p.period == Catch::Approx(2 * kPi).epsilon(1e-12));
    CHECK(*p.residual < 1e-9);

    const auto a = periodicity(diag({1.0, std::sqrt(2.0)}));
    CHECK(a.kind == PeriodicityResult::Kind::Aperiodic);
    CHECK_FALSE(a.period.has_value());

    CHECK(periodicity(diag({0.0, 0.0})).kind ==
          PeriodicityResult::Kind::Constant);

    const auto half = periodicity(diag({0.5, -0.5}));
    REQUIRE(half.periodic());
    CHECK(*half.period == Catch::Approx(4 * kPi));

    const auto thirds = periodicity(diag({2.0, 3.0, 0.0}));
    REQUIRE(thirds.periodic());
    CHECK(*thirds.period == Catch::Approx(2 * kPi));

    const auto scaled = periodicity(diag({1.5, 2.5}));
    REQUIRE(scaled.periodic());
    CHECK(*scaled.period == Catch::Approx(4 * kPi));
}

TEST_CASE("periodicity is invariant under unitary conjugation",
          "[periodicity][property]") {
    for (int t = 0; t < 20; ++t) {
        const ComplexMatrix u = haarUnitary(62, 3, static_cast<std::uint64_t>(t));
        ComplexMatrix d = ComplexMatrix::Zero(3, 3);
        d(0, 0) = 1.0;
        d(1, 1) = 3.0;
        d(2, 2) = -2.0;
        const ComplexMatrix h = u * d * u.adjoint();
        const auto p =
            periodicity(HermitianMatrix(ComplexMatrix((h + h.adjoint()) / 2.0)));
        REQUIRE(p.periodic());
        CHECK(*p.period == Catch::Approx(2 * kPi).epsilon(1e-9));
    }
}

TEST_CASE("periodic exponentials repeat values", "[periodicity]") {
    const HermitianMatrix h = diag({1.0, 2.0});
    const auto p = periodicity(h);
    REQUIRE(p.periodic());
    for (double x : {0.0, 0.3, -1.7}) {
        const ComplexMatrix a = expmIHermitian(h, x);
        const ComplexMatrix b = expmIHermitian(h, x + *p.period);
        CHECK((a - b).norm() < 1e-9);
        // Half the period is not a period.
        const ComplexMatrix c = expmIHermitian(h, x + *p.period / 2);
        CHECK((a - c).norm() > 1.0);
    }
}
