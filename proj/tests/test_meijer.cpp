#include <doctest.h>

#include "mf/errors.hpp"
#include "mf/meijer.hpp"
#include "oracles.hpp"

using namespace mf;

namespace {

std::vector<BigRational> q(std::initializer_list<BigRational> v) { return v; }

OmegaPoint point(const BigRational& re, const BigRational& im, Bits prec) {
  return omega_normalize(APComplex(re, im, prec));
}

Real euler_gamma(Bits p) {
  Real r(p);
  mpfr_const_euler(r.get(), MPFR_RNDN);
  return r;
}

// Gamma(1 - a + b) z^b (1 + z)^(a - b - 1), real z > 0.
Real g1111(const BigRational& a, const BigRational& b, const BigRational& z, Bits p) {
  Real zr(z, p);
  return oracle::gamma(Real(BigRational(1) - a + b, p)) * pow(zr, Real(b, p)) *
         pow(zr + Real(1L, p), Real(a - b - BigRational(1), p));
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(GParams(1, 0, 0, 1, {}, q({0})));
  CHECK_THROWS_AS(GParams(2, 0, 0, 1, {}, q({0})), ValidationError);
  CHECK_THROWS_AS(GParams(1, 2, 1, 1, q({0}), q({0})), ValidationError);
  CHECK_THROWS_AS(GParams(1, 0, 0, 2, {}, q({0})), ValidationError);
  CHECK_THROWS_AS(GParams(1, 1, 1, 1, q({1}), q({0})), ValidationError);
  CHECK_NOTHROW(GParams(1, 1, 1, 1, q({BigRational(-1, 2)}), q({0})));
  CHECK_NOTHROW(GParams(1, 1, 1, 1, q({0}), q({1})));
  CHECK(GParams(1, 1, 2, 2, q({BigRational(1, 2), BigRational(1, 2)}), q({0, 0})).delta_star() == BigRational(-1));
  CHECK(parse_contour("L0") == Contour::L0);
  CHECK(to_string(Contour::L2) == "L2");
}

TEST_CASE("classification") {
  const Bits p = 128;
  ConvergenceReport f1 = classify(aux_params(1, 2, 1), point(BigRational(1, 2), 0, p));
  CHECK(f1.labels() == "B2,B3");
  CHECK(f1.delta_star == BigRational(-6));

  GParams edge(1, 1, 2, 2, q({BigRational(1, 2), BigRational(1, 2)}), q({0, 0}));
  ConvergenceReport r = classify(edge, point(1, 0, p));
  CHECK_FALSE(r.has(Condition::B3));
  CHECK_FALSE(r.has(Condition::C3));
  CHECK(r.holds.empty());

  GParams exp_g(1, 0, 0, 1, {}, q({0}));
  ConvergenceReport e = classify(exp_g, point(2, 0, p));
  CHECK(e.has(Condition::A1));
  CHECK(e.has(Condition::B1));
  CHECK_FALSE(e.any_c());
}

TEST_CASE("pole enumeration for the auxiliary integrands") {
  auto f1 = enumerate_poles(aux_params(1, 2, 1), Contour::L1, 10);
  REQUIRE(f1.size() == 3);
  for (long i = 0; i < 3; ++i) {
    CHECK(f1[i].location == BigRational(i + 1));
    CHECK(f1[i].order == 1);
  }
  const std::array<long, 3> ms{4, 5, 6};
  for (std::size_t i = 0; i < ms.size(); ++i) {
    auto poles = enumerate_poles(aux_params(1, 2, ms[i]), Contour::L2, 8);
    REQUIRE(poles.size() == 8);
    CHECK(poles.front().location == BigRational(-2));
    for (const auto& pl : poles) CHECK(pl.order == static_cast<int>(i) + 1);
    for (std::size_t j = 1; j < poles.size(); ++j) CHECK(poles[j].location < poles[j - 1].location);
  }
  CHECK_THROWS_AS(enumerate_poles(aux_params(1, 2, 1), Contour::L0, 4), ContourMismatch);
  CHECK_THROWS_AS(aux_params(1, 2, 2), std::invalid_argument);
}

TEST_CASE("residues of simple, double and triple poles") {
  PrecisionBudget b(160);
  const Bits p = b.working_bits();
  OmegaPoint z = point(BigRational(3, 2), 0, p);
  Real lz = log(Real(BigRational(3, 2), p));
  Real eg = euler_gamma(p);

  // Gamma(-s) z^s at s = 2: -z^2 / 2
  APComplex r1 = residue_at(GParams(1, 0, 0, 1, {}, q({0})), z, BigRational(2), 1, b);
  CHECK(oracle::diff_log2(r1.re(), Real(BigRational(-9, 8), p)) <= -150);

  // Gamma(-s)^2 z^s at 0: 2 gamma_E + log z
  APComplex r2 = residue_at(GParams(2, 0, 0, 2, {}, q({0, 0})), z, BigRational(0), 2, b);
  CHECK(oracle::diff_log2(r2.re(), eg * 2L + lz) <= -150);

  // Gamma(-s)^3 z^s at 0: -((3 gamma_E + log z)^2 + 3 zeta(2)) / 2
  APComplex r3 = residue_at(GParams(3, 0, 0, 3, {}, q({0, 0, 0})), z, BigRational(0), 3, b);
  Real u = eg * 3L + lz;
  Real expect = -(u * u + oracle::zeta(2, p) * 3L) / 2L;
  CHECK(oracle::diff_log2(r3.re(), expect) <= -150);

  CHECK_THROWS_AS(residue_at(GParams(2, 0, 0, 2, {}, q({0, 0})), z, BigRational(0), 1, b), ValidationError);
  CHECK_THROWS_AS(residue_at(GParams(1, 0, 0, 1, {}, q({0})), z, BigRational(0), 1, b, BigRational(1)),
                  RadiusTooLarge);
}

TEST_CASE("closed-form G functions on L1 and L2") {
  PrecisionBudget b(192);
  const Bits p = b.working_bits() + 16;
  // G^{1,0}_{0,1}(z | b) = z^b e^-z
  for (auto z : {BigRational(1, 2), BigRational(3)}) {
    GResult g = eval_G(GParams(1, 0, 0, 1, {}, q({BigRational(1, 3)})), point(z, 0, p), Contour::L1, b);
    Real zr(z, p);
    CHECK(oracle::diff_log2(g.value.re(), pow(zr, Real(BigRational(1, 3), p)) * exp(-zr)) <= -192);
    CHECK(g.error_log2 <= -192);
  }
  // G^{1,1}_{1,1}(z | a; b) inside and outside the unit disk
  const BigRational a(-1, 3), bb(1, 4);
  GParams g11(1, 1, 1, 1, q({a}), q({bb}));
  GResult in = eval_G(g11, point(BigRational(2, 5), 0, p), Contour::Auto, b);
  CHECK(in.contour == Contour::L1);
  CHECK(oracle::diff_log2(in.value.re(), g1111(a, bb, BigRational(2, 5), p)) <= -190);
  GResult out = eval_G(g11, point(BigRational(5, 2), 0, p), Contour::L2, b);
  CHECK(oracle::diff_log2(out.value.re(), g1111(a, bb, BigRational(5, 2), p)) <= -190);
  // G^{2,0}_{0,2}(z | 0, 1/2) = sqrt(pi) exp(-2 sqrt z)
  GResult k = eval_G(GParams(2, 0, 0, 2, {}, q({0, BigRational(1, 2)})), point(BigRational(7, 4), 0, p), Contour::Auto, b);
  Real expect = sqrt(Real::pi(p)) * exp(-sqrt(Real(BigRational(7, 4), p)) * 2L);
  CHECK(oracle::diff_log2(k.value.re(), expect) <= -190);
}

TEST_CASE("vertical contour against residues") {
  PrecisionBudget b(128);
  const Bits p = b.working_bits() + 16;
  GParams g(1, 1, 1, 1, q({BigRational(-1, 2)}), q({0}));
  OmegaPoint z = point(BigRational(1, 2), 0, p);
  ConvergenceReport rep = classify(g, z);
  CHECK(rep.has(Condition::A1));
  CHECK(rep.has(Condition::B2));
  GResult l0 = eval_G(g, z, Contour::L0, b);
  GResult l1 = eval_G(g, z, Contour::L1, b);
  CHECK(oracle::diff_log2(l0.value, l1.value) <= -120);
  CHECK(oracle::diff_log2(l0.value.re(), g1111(BigRational(-1, 2), 0, BigRational(1, 2), p)) <= -120);

  GResult e = eval_G(GParams(1, 0, 0, 1, {}, q({0})), point(BigRational(3, 4), BigRational(1, 2), p), Contour::L0, b);
  APComplex ze(BigRational(3, 4), BigRational(1, 2), p);
  CHECK(oracle::diff_log2(e.value, exp(-ze)) <= -120);
}

TEST_CASE("contour selection errors") {
  PrecisionBudget b(64);
  GParams edge(1, 1, 2, 2, q({BigRational(1, 2), BigRational(1, 2)}), q({0, 0}));
  CHECK_THROWS_AS(eval_G(edge, point(1, 0, 128), Contour::Auto, b), NoConvergentContour);
  GParams g(1, 1, 1, 1, q({BigRational(-1, 2)}), q({0}));
  CHECK_THROWS_AS(eval_G(g, point(2, 0, 128), Contour::L1, b), NoConvergentContour);
}
