#pragma once

// Partial-fraction tables of R0(t; nu)^3 and the polynomials built from them.

#include <array>
#include <string>
#include <vector>

#include "json.hpp"
#include "mf/exact.hpp"
#include "mf/real.hpp"

namespace mf {

/// Dense polynomial in z with exact coefficients, index = degree.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<BigRational> coeffs);
  /// c z^k
  static RatPoly monomial(const BigRational& c, long k);

  [[nodiscard]] const std::vector<BigRational>& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(c_.size()) - 1; }
  /// Degree of the lowest nonzero term, -1 for the zero polynomial.
  [[nodiscard]] long low_degree() const;
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] BigRational coeff(long k) const;

  [[nodiscard]] BigRational eval(const BigRational& z) const;
  [[nodiscard]] APComplex eval(const APComplex& z) const;
  /// sum |c_k| |z|^k as log2, a scale for cancellation estimates.
  [[nodiscard]] double log2_abs_bound(double abs_z) const;

  [[nodiscard]] std::string str() const;

  RatPoly& operator+=(const RatPoly& o);
  RatPoly& operator-=(const RatPoly& o);
  RatPoly& operator*=(const RatPoly& o);
  RatPoly& operator*=(const BigRational& s);

  friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
  friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
  friend RatPoly operator*(RatPoly a, const RatPoly& b) { return a *= b; }
  friend RatPoly operator*(RatPoly a, const BigRational& s) { return a *= s; }
  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<BigRational> c_;
};

struct CoeffTable {
  long nu = 1;
  long delta = 2;
  std::vector<BigRational> alpha;
  std::vector<BigRational> beta;
  std::vector<BigRational> gamma;

  friend bool operator==(const CoeffTable&, const CoeffTable&) = default;
};

/// Partial-fraction coefficients of R0(t; nu)^3 at weights 3, 2, 1; cached per (nu, Delta).
const CoeffTable& coeff_table(long nu, long delta);

/// z^nu (-1)^(nu Delta) sum_k (-z)^k C(nu Delta, k)^3 C(nu Delta + k, nu d1)^3
RatPoly f1_star_poly(long nu, long delta);

struct CoeffPolys {
  RatPoly alpha;
  RatPoly beta;
  RatPoly gamma;
};

/// (-z)^nu sum_k c_k z^k for c in alpha, beta, gamma.
CoeffPolys coeff_polys(const CoeffTable& table);

struct TailPolys {
  RatPoly phi;
  RatPoly psi;
  RatPoly xi;
};

/// (-z)^nu sum_k sum_{t=1}^{k+nu} z^(k-t) (weighted coefficient / t^w), collected.
TailPolys tail_polys(const CoeffTable& table);

/// d^order/dt^order of R0(t)^3 from the partial fractions, order 0, 1 or 2.
BigRational partial_fraction_eval(const CoeffTable& table, const BigRational& t, int order = 0);

nlohmann::json to_json(const BigRational& r);
BigRational rational_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RatPoly& p);
RatPoly ratpoly_from_json(const nlohmann::json& j);
nlohmann::json to_json(const CoeffTable& t);
CoeffTable coeff_table_from_json(const nlohmann::json& j);

}  // namespace mf
