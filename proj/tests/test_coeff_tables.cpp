#include <doctest.h>

#include <random>

#include "mf/coeff_tables.hpp"
#include "mf/errors.hpp"
#include "oracles.hpp"

using namespace mf;

namespace {

std::vector<BigRational> ints(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

BigRational random_regular_t(std::mt19937_64& rng, long top) {
  std::uniform_int_distribution<long> num(-90, 90), den(1, 13);
  for (;;) {
    BigRational t(BigInt(num(rng)), BigInt(den(rng)));
    if (t.is_integer() && t <= BigRational(0) && t >= BigRational(-top)) continue;
    return t;
  }
}

}  // namespace

TEST_CASE("pinned table at nu = 1, Delta = 2") {
  const CoeffTable& t = coeff_table(1, 2);
  CHECK(t.alpha == ints({-8, 216, -64}));
  CHECK(t.beta == ints({48, -216, -240}));
  CHECK(t.gamma == ints({-156, 720, -564}));
  CHECK(f1_star_poly(1, 2) == RatPoly(ints({0, 8, -216, 64})));
  CHECK(f1_star_poly(1, 2).str() == "8z - 216z^2 + 64z^3");
  CoeffPolys cp = coeff_polys(t);
  CHECK(cp.alpha.eval(BigRational(1)) == BigRational(-144));
  CHECK(cp.beta.eval(BigRational(1)) == BigRational(408));
  CHECK(cp.gamma.eval(BigRational(1)).is_zero());
  TailPolys tp = tail_polys(t);
  CHECK(tp.phi == RatPoly({BigRational(1, 27), BigRational(-370), BigRational(868)}));
  CHECK(partial_fraction_eval(t, BigRational(1), 0) == BigRational(-1, 27));
}

TEST_CASE("tables match the Laurent expansion of R0^3") {
  for (long nu = 1; nu <= 3; ++nu) {
    for (long delta = 2; delta <= 3; ++delta) {
      const CoeffTable& t = coeff_table(nu, delta);
      REQUIRE(t.alpha.size() == static_cast<std::size_t>(nu * delta + 1));
      for (long k = 0; k <= nu * delta; ++k) {
        auto l = oracle::laurent_at(nu, delta, k);
        CHECK(t.alpha[k] == l[0]);
        CHECK(t.beta[k] == l[1]);
        CHECK(t.gamma[k] == l[2]);
      }
    }
  }
}

TEST_CASE("partial fractions and their derivatives at random points") {
  std::mt19937_64 rng(2024);
  for (long nu = 1; nu <= 3; ++nu) {
    for (long delta = 2; delta <= 3; ++delta) {
      const CoeffTable& t = coeff_table(nu, delta);
      for (int i = 0; i < 15; ++i) {
        BigRational x = random_regular_t(rng, nu * delta);
        auto d = oracle::cube_derivatives(nu, delta, x);
        CHECK(partial_fraction_eval(t, x, 0) == d[0]);
        CHECK(partial_fraction_eval(t, x, 1) == d[1]);
        CHECK(partial_fraction_eval(t, x, 2) == d[2]);
      }
      CHECK_THROWS_AS(partial_fraction_eval(t, BigRational(-1), 0), PoleError);
      CHECK_THROWS_AS(partial_fraction_eval(t, BigRational(1), 3), std::invalid_argument);
    }
  }
}

TEST_CASE("gamma sum vanishes and alpha polynomial equals f1") {
  for (long nu = 1; nu <= 4; ++nu) {
    for (long delta = 2; delta <= 4; ++delta) {
      const CoeffTable& t = coeff_table(nu, delta);
      BigRational s;
      for (const auto& g : t.gamma) s += g;
      CHECK(s.is_zero());
      CHECK(coeff_polys(t).alpha == f1_star_poly(nu, delta));
      CHECK(coeff_polys(t).gamma.eval(BigRational(1)).is_zero());
    }
  }
}

TEST_CASE("tail polynomials against the double sum") {
  for (long nu = 1; nu <= 3; ++nu) {
    for (long delta = 2; delta <= 3; ++delta) {
      const CoeffTable& t = coeff_table(nu, delta);
      TailPolys tp = tail_polys(t);
      CHECK(tp.phi.degree() <= nu + nu * delta - 1);
      CHECK(tp.phi.low_degree() >= 0);
      for (auto z : {BigRational(1), BigRational(2, 3), BigRational(-7, 2), BigRational(5)}) {
        CHECK(tp.phi.eval(z) == oracle::tail_brute(nu, t.alpha, t.beta, t.gamma, {1, 1, 1}, 3, z));
        CHECK(tp.psi.eval(z) == oracle::tail_brute(nu, t.alpha, t.beta, t.gamma, {3, 2, 1}, 4, z));
        CHECK(tp.xi.eval(z) == oracle::tail_brute(nu, t.alpha, t.beta, t.gamma, {6, 3, 1}, 5, z));
      }
    }
  }
}

TEST_CASE("polynomial arithmetic") {
  RatPoly a(ints({1, 2})), b(ints({-1, 0, 3}));
  CHECK((a * b) == RatPoly(ints({-1, -2, 3, 6})));
  CHECK((a + b) == RatPoly(ints({0, 2, 3})));
  CHECK((a - a).degree() == -1);
  CHECK(RatPoly::monomial(BigRational(5), 3).eval(BigRational(2)) == BigRational(40));
  APComplex z(0.5, -1.5, 128);
  APComplex v = b.eval(z);
  CHECK(v.re().to_double() == doctest::Approx(-1 + 3 * (0.25 - 2.25)));
  CHECK(v.im().to_double() == doctest::Approx(3 * 2 * 0.5 * -1.5));
}

TEST_CASE("json round trip") {
  for (long nu = 1; nu <= 2; ++nu) {
    const CoeffTable& t = coeff_table(nu, 3);
    CHECK(coeff_table_from_json(nlohmann::json::parse(to_json(t).dump())) == t);
  }
  RatPoly p = tail_polys(coeff_table(1, 2)).xi;
  CHECK(ratpoly_from_json(to_json(p)) == p);
  CHECK(to_json(BigRational(-2481, 2)).at("num") == "-2481");
}

TEST_CASE("table validation and caching") {
  CHECK_THROWS_AS(coeff_table(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(coeff_table(1, 1), std::invalid_argument);
  CHECK(&coeff_table(2, 2) == &coeff_table(2, 2));
}
