#pragma once

// Precision policy, the cut-plane logarithm branch used throughout, integer
// zeta values, polylogarithms and the complex Gamma function.

#include <cstdint>
#include <vector>

#include "mf/exact.hpp"
#include "mf/real.hpp"

namespace mf {

/// Truncation policy shared by every numeric routine: results carry an absolute
/// error of at most 2^-target_bits; internal work uses target_bits + guard_bits.
struct PrecisionBudget {
  long target_bits = 256;
  long guard_bits = 32;
  long max_terms = 10'000'000;

  PrecisionBudget() = default;
  PrecisionBudget(long target, long guard = 32, long terms = 10'000'000);

  [[nodiscard]] Bits working_bits(long extra = 0) const { return target_bits + guard_bits + extra; }
  /// Same guard and term limit, different target.
  [[nodiscard]] PrecisionBudget with_target(long target) const;
  /// 2^-target_bits at 64-bit precision.
  [[nodiscard]] Real tolerance() const;
};

/// A point with the argument convention -3pi/2 < arg <= pi/2.
class OmegaPoint {
 public:
  [[nodiscard]] const APComplex& value() const { return value_; }
  [[nodiscard]] const Real& arg() const { return arg_; }
  [[nodiscard]] Bits prec() const { return value_.prec(); }
  /// |z| >= 1.
  [[nodiscard]] bool in_omega_star() const;
  /// |z| >= 1 and Re z > 0.
  [[nodiscard]] bool in_omega_star0() const;

 private:
  friend OmegaPoint omega_normalize(const APComplex& z);
  OmegaPoint(APComplex value, Real arg) : value_(std::move(value)), arg_(std::move(arg)) {}
  APComplex value_;
  Real arg_;
};

/// Attaches the cut-plane argument in (-3pi/2, pi/2]. Throws DomainError for z = 0.
OmegaPoint omega_normalize(const APComplex& z);

/// log|z| + i arg(z) with the cut-plane argument; log(-z) = log z - i pi when Re z > 0.
APComplex log_omega(const OmegaPoint& p);

/// p.value()^s = exp(s log_omega(p)).
APComplex omega_pow(const OmegaPoint& p, const APComplex& s);

/// zeta(n) for n >= 2 by Euler-Maclaurin with an explicit remainder bound.
Real zeta_int(long n, const PrecisionBudget& budget);

/// L_n(w) = sum_{t>=1} w^t / t^n. |w| < 1 by direct summation with a geometric
/// tail bound; w = 1 delegates to zeta_int for n >= 2.
APComplex polylog(long n, const APComplex& w, const PrecisionBudget& budget);

/// Bernoulli number B_n (B_1 = -1/2), exact, from a shared cache.
BigRational bernoulli(long n);

/// Gamma(x) for complex x away from the non-positive integers, relative accuracy
/// about 2^-prec. Stirling series after an upward shift.
APComplex gamma(const APComplex& x, Bits prec);

}  // namespace mf
