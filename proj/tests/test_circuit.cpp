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
#include <numbers>
#include <random>

#include <pqcgeo/circuit.hpp>
#include <pqcgeo/circuit_io.hpp>

#include "support.hpp"

using namespace pqcgeo;
using Catch::Matchers::ContainsSubstring;

namespace {

ParsedCircuit parse(std::string_view text,
                    std::map<std::string, ComplexMatrix> files = {},
                    BoundaryMode mode = BoundaryMode::Warn) {
    return parseCircuit(text, mapMatrixLoader(std::move(files)), mode);
}

ComplexMatrix perm(std::initializer_list<int> image) {
    const auto n = static_cast<Eigen::Index>(image.size());
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    Eigen::Index col = 0;
    for (int row : image) {
        p(row, col++) = 1.0;
    }
    return p;
}

} // namespace

TEST_CASE("embedSingleQubit places the gate on its wire", "[circuit]") {
    const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
    ComplexMatrix xi(4, 4);
    xi << 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0;
    CHECK(embedSingleQubit(pauliX(), 0, 2) == xi);
    CHECK(embedSingleQubit(i2, 1, 3) == ComplexMatrix::Identity(8, 8));
    const ComplexMatrix iz = embedSingleQubit(pauliZ(), 1, 2);
    CHECK(iz.diagonal() == ComplexVector(Eigen::Vector4cd(1, -1, 1, -1)));
    CHECK((iz - ComplexMatrix(iz.diagonal().asDiagonal())).norm() == 0.0);
}

TEST_CASE("basis states and CNOT follow wire 0 = most significant bit",
          "[circuit]") {
    CHECK(basisState("10")(2) == Complex(1, 0));
    const ComplexMatrix cx = cnotMatrix(0, 1, 2);
    CHECK(cx * basisState("10") == basisState("11"));
    CHECK(cx * basisState("01") == basisState("01"));
    const ComplexMatrix xi = embedSingleQubit(pauliX(), 0, 2);
    CHECK(applyToState(xi, basisState("00")) == basisState("10"));
    CHECK(applyToState(ComplexMatrix::Identity(2, 2), basisState("0")) ==
          basisState("0"));
}

TEST_CASE("compileUnitary closed forms", "[circuit]") {
    const Circuit empty(1, 0, {}, basisState("0"));
    CHECK(compileUnitary(empty, RealVector(0)) ==
          ComplexMatrix::Identity(2, 2));

    const Circuit z(1, 1, {ParamExp{HermitianMatrix(pauliZ()), 0, -1}},
                    basisState("0"));
    RealVector p(1);
    p << std::numbers::pi;
    CHECK((compileUnitary(z, p) + ComplexMatrix::Identity(2, 2)).norm() <
          1e-15);

    // e^{-i (π/2) Y/2} |0> = (cos π/4, sin π/4)
    const Circuit ry(
        1, 1,
        {ParamSingleQubit{HermitianMatrix(ComplexMatrix(0.5 * pauliY())), 0,
                          0, -1}},
        basisState("0"));
    p << std::numbers::pi / 2;
    const ComplexVector s = applyToState(compileUnitary(ry, p),
                                         ry.initialState());
    CHECK(std::abs(s(0) - std::cos(std::numbers::pi / 4)) < 1e-15);
    CHECK(std::abs(s(1) - std::sin(std::numbers::pi / 4)) < 1e-15);
}

TEST_CASE("later gates multiply from the left", "[circuit]") {
    const ComplexMatrix a = perm({1, 2, 3, 0});
    const ComplexMatrix b = perm({0, 2, 1, 3});
    REQUIRE((a * b - b * a).norm() > 0);
    const Circuit c(2, 0, {FixedUnitary{a}, FixedUnitary{b}},
                    basisState("00"));
    CHECK(compileUnitary(c, RealVector(0)) == b * a);
    for (const char *bits : {"00", "01", "10", "11"}) {
        const ComplexVector s = basisState(bits);
        CHECK(applyToState(compileUnitary(c, RealVector(0)), s) == b * (a * s));
    }
}

TEST_CASE("single-qubit gates equal their embedded full-register form",
          "[circuit][property]") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 30; ++t) {
        const std::size_t nq = 1 + t % 3;
        const std::size_t wire = static_cast<std::size_t>(t) % nq;
        const HermitianMatrix g(testing::randomHermitian(rng, 2));
        const int sign = t % 2 ? 1 : -1;
        const ComplexVector init = basisState(std::string(nq, '0'));
        const Circuit sq(nq, 1, {ParamSingleQubit{g, wire, 0, sign}}, init);
        const Circuit full(
            nq, 1,
            {ParamExp{HermitianMatrix(embedSingleQubit(g.matrix(), wire, nq)),
                      0, sign}},
            init);
        const RealVector p = testing::randomPoint(rng, 1);
        CHECK((compileUnitary(sq, p) - compileUnitary(full, p))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12);
    }
}

TEST_CASE("compiled circuits are unitary and continuous",
          "[circuit][property]") {
    std::mt19937_64 rng(32);
    for (int t = 0; t < 40; ++t) {
        const Circuit c = testing::randomCircuit(rng, 4, 8);
        const RealVector p = testing::randomPoint(rng, c.numParams());
        const ComplexMatrix u = compileUnitary(c, p);
        CHECK(unitarityDefect(u) < 1e-9);
        RealVector dir = testing::randomPoint(rng, c.numParams(), -1, 1);
        const double d1 = (compileUnitary(c, p + 1e-4 * dir) - u).norm();
        const double d2 = (compileUnitary(c, p + 1e-5 * dir) - u).norm();
        CHECK(d2 <= d1);
        CHECK(d1 < 1e-4 * dir.norm() * 100.0);
        if (d1 > 1e-12) {
            CHECK(std::abs(d2 / d1 - 0.1) < 0.01);
        }
    }
}

TEST_CASE("Circuit constructor validation", "[circuit]") {
    const ComplexVector zero = basisState("0");
    CHECK_THROWS_AS(Circuit(1, 2, {ParamExp{HermitianMatrix(pauliZ()), 0}},
                            zero),
                    ValidationError);
    CHECK_THROWS_AS(Circuit(1, 1, {ParamExp{HermitianMatrix(pauliZ()), 1}},
                            zero),
                    ValidationError);
    ComplexMatrix notU = ComplexMatrix::Identity(2, 2);
    notU(0, 0) = 2.0;
    CHECK_THROWS_AS(Circuit(1, 0, {FixedUnitary{notU}}, zero),
                    ValidationError);
    CHECK_THROWS_AS(Circuit(1, 0, {}, ComplexVector::Ones(2)),
                    ValidationError);
    CHECK_THROWS_AS(Circuit(2, 0, {Cnot{0, 0}}, basisState("00")),
                    ValidationError);
    CHECK_THROWS_AS(Circuit(2, 0, {Cnot{0, 5}}, basisState("00")),
                    ValidationError);
    try {
        (void)Circuit(1, 2, {ParamExp{HermitianMatrix(pauliZ()), 0}}, zero);
    } catch (const ValidationError &e) {
        CHECK_THAT(e.what(), ContainsSubstring("drives no gate"));
    }
}

TEST_CASE("ParameterSpace membership and canonicalization", "[circuit]") {
    std::vector<std::string> warnings;
    const ParameterSpace s({Interval{0.0, 1.0, true, false}, FullLine{},
                            Circle{4 * std::numbers::pi}},
                           BoundaryMode::Warn, &warnings);
    CHECK(warnings.empty());
    CHECK(s.containsCoord(0, 0.0));
    CHECK_FALSE(s.containsCoord(0, 1.0));
    CHECK(s.containsCoord(1, -1e9));
    const ParameterPoint p = s.point({0.5, 3.0, -1.0});
    CHECK(p.coords(2) == Catch::Approx(4 * std::numbers::pi - 1.0));
    CHECK_THROWS_AS(s.point({1.5, 0.0, 0.0}), ValidationError);
    try {
        (void)s.point({1.5, 0.0, 0.0});
    } catch (const ValidationError &e) {
        CHECK_THAT(e.what(), ContainsSubstring("point not in parameter space"));
    }
    CHECK(s.coordDistance(2, 0.1, 4 * std::numbers::pi - 0.1) ==
          Catch::Approx(0.2));
    CHECK_FALSE(s.bounded());
    CHECK(ParameterSpace({Interval{0, 1}, Circle{}}).bounded());
}

TEST_CASE("corners warn by default and fail in strict mode", "[circuit]") {
    std::vector<Factor> f{Interval{0, 1, true, false},
                          Interval{0, 1, false, true}};
    std::vector<std::string> warnings;
    (void)ParameterSpace(f, BoundaryMode::Warn, &warnings);
    CHECK(warnings.size() == 1);
    CHECK_THROWS_AS(ParameterSpace(f, BoundaryMode::Strict), ValidationError);
    CHECK_NOTHROW(ParameterSpace({Interval{0, 1, true, true}, FullLine{}},
                                 BoundaryMode::Strict));
    CHECK_THROWS_AS(ParameterSpace({Interval{1, 0}}), ValidationError);
    CHECK_THROWS_AS(ParameterSpace({Circle{-1.0}}), ValidationError);
}

TEST_CASE("parseCircuit minimal file", "[circuit][io]") {
    const auto pc = parse("qubits 1\nparam a line\ninit ket 0\ngate ry 0 a\n");
    CHECK(pc.circuit.numQubits() == 1);
    CHECK(pc.circuit.numParams() == 1);
    CHECK(pc.circuit.dim() == 2);
    CHECK(pc.space.size() == 1);
    CHECK(pc.circuit.paramNames() == std::vector<std::string>{"a"});
}

TEST_CASE("parseCircuit reports errors with position", "[circuit][io]") {
    try {
        (void)parse("qubits 2\ngate cx 0 5\n");
        FAIL("no throw");
    } catch (const ParseError &e) {
        CHECK_THAT(e.what(), ContainsSubstring("wire out of range"));
        CHECK(e.line() == 2);
        CHECK(e.column() == 11);
    }
    CHECK_THROWS_AS(parse("qubits 1\ngate ry 0 b\n"), ParseError);
    CHECK_THROWS_AS(parse("qubits 1\nparam a line\n"), ValidationError);
    CHECK_THROWS_AS(parse("qubits 1\nfrobnicate\n"), ParseError);
    CHECK_THROWS_AS(parse("gate ry 0 a\n"), ParseError);
    CHECK_THROWS_AS(parse("qubits 1\ninit vec 1 1\n"), ParseError);
    ComplexMatrix nh = ComplexMatrix::Zero(2, 2);
    nh(0, 1) = 1.0;
    CHECK_THROWS_AS(parse("qubits 1\nparam a line\ngate expgen h.mat a\n",
                          {{"h.mat", nh}}),
                    ValidationError);
    ComplexMatrix nu = 2.0 * ComplexMatrix::Identity(2, 2);
    CHECK_THROWS_AS(parse("qubits 1\ngate fixed u.mat\n", {{"u.mat", nu}}),
                    ValidationError);
    CHECK_THROWS_AS(parse("qubits 1\ngate fixed missing.mat\n"), IoError);
}

TEST_CASE("parseCircuit parameter kinds and options", "[circuit][io]") {
    const auto pc = parse("qubits 2\n"
                          "param a circle\n"
                          "param b circle 12.5\n"
                          "param c interval [ -1 2 )\n"
                          "init vec 0 1 0 0\n"
                          "gate rz 0 a scale 2\n"
                          "gate rx 1 b\n"
                          "gate ry 1 c\n"
                          "gate cx 1 0\n"
                          "gate ry 0 a\n");
    CHECK(pc.circuit.hasSharedParameters());
    CHECK(pc.warnings.size() >= 1);
    CHECK(std::get<Circle>(pc.space.factor(0)).period ==
          Catch::Approx(2 * std::numbers::pi));
    CHECK(std::get<Circle>(pc.space.factor(1)).period == 12.5);
    const auto iv = std::get<Interval>(pc.space.factor(2));
    CHECK(iv.lo_closed);
    CHECK_FALSE(iv.hi_closed);
    CHECK(pc.circuit.initialState() == basisState("01"));

    // Corners: two closed endpoints.
    const std::string corner = "qubits 1\nparam a interval [ 0 1 )\n"
                               "param b interval ( 0 1 ]\n"
                               "gate rx 0 a\ngate ry 0 b\n";
    CHECK(parse(corner).warnings.size() == 1);
    CHECK_THROWS_AS(parse(corner, {}, BoundaryMode::Strict), ValidationError);
}

TEST_CASE("serialize and parse round trip", "[circuit][io][property]") {
    std::mt19937_64 rng(33);
    for (int t = 0; t < 20; ++t) {
        const Circuit c = testing::randomCircuit(rng, 3, 5);
        std::vector<Factor> f;
        for (std::size_t j = 0; j < c.numParams(); ++j) {
            if (j % 3 == 0) {
                f.emplace_back(FullLine{});
            } else if (j % 3 == 1) {
                f.emplace_back(Circle{3.0});
            } else {
                f.emplace_back(Interval{-4.0, 4.0});
            }
        }
        const ParameterSpace space(f);
        const auto ser = serializeCircuit(c, space);
        const auto back = parse(ser.text, ser.matrices);
        const auto again = serializeCircuit(back.circuit, back.space);
        CHECK(again.text == ser.text);
        const RealVector p = testing::randomPoint(rng, c.numParams(), 0.1, 2.9);
        CHECK((compileUnitary(back.circuit, p) - compileUnitary(c, p)).norm() <
              1e-12);
        CHECK(back.circuit.initialState() == c.initialState());
    }

    // The alternating expgen / fixed form.
    const ComplexMatrix h = pauliX();
    const ComplexMatrix w = embedSingleQubit(pauliZ(), 0, 1);
    const auto pc = parse("qubits 1\nparam a line\nparam b line\n"
                          "gate expgen h.mat a\ngate fixed w.mat\n"
                          "gate expgen h.mat b sign +\ngate fixed w.mat\n",
                          {{"h.mat", h}, {"w.mat", w}});
    const auto ser = serializeCircuit(pc.circuit, pc.space);
    const auto back = parse(ser.text, ser.matrices);
    CHECK(serializeCircuit(back.circuit, back.space).text == ser.text);
}

TEST_CASE("circuit files in the repository load", "[circuit][io]") {
    const std::string dir = PQCGEO_CIRCUIT_DIR;
    for (const char *name : {"rz_rz.qc", "ry_rz.qc", "single_H.qc",
                             "rz_only.qc", "rot3.qc", "bell_layer.qc"}) {
        INFO(name);
        CHECK_NOTHROW(loadCircuitFile(dir + "/" + name));
    }
    CHECK_THROWS_AS(loadCircuitFile(dir + "/does_not_exist.qc"), IoError);
}

TEST_CASE("interval spellings", "[circuit][io]") {
    for (const char *spelling :
         {"[ -1 2 )", "[-1 2)", "[-1,2)", "[ -1, 2 )"}) {
        INFO(spelling);
        const auto pc = parse(std::string("qubits 1\nparam c interval ") +
                              spelling + "\ngate ry 0 c\n");
        const auto iv = std::get<Interval>(pc.space.factor(0));
        CHECK(iv.lo == -1.0);
        CHECK(iv.hi == 2.0);
        CHECK(iv.lo_closed);
        CHECK_FALSE(iv.hi_closed);
    }
    CHECK_THROWS_AS(parse("qubits 1\nparam c interval [-1 2\ngate ry 0 c\n"),
                    ParseError);
    CHECK_THROWS_AS(parse("qubits 1\nparam c interval {-1 2}\ngate ry 0 c\n"),
                    ParseError);
}
