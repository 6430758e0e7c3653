#pragma once

// Exact arithmetic: reduced rationals, binomials, harmonic sums and the
// rational function R0(t; nu) whose cube drives every residue series.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

namespace mf {

using BigInt = mpz_class;

/// Exact rational, always stored in lowest terms with a positive denominator.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& num, const BigInt& den);
  BigRational(long num, long den);

  /// Parses "p", "p/q" or a decimal literal such as "-1.25e-3" exactly.
  static BigRational parse(std::string_view text);

  [[nodiscard]] BigInt num() const { return q_.get_num(); }
  [[nodiscard]] BigInt den() const { return q_.get_den(); }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_zero() const { return sign() == 0; }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }
  [[nodiscard]] BigRational abs() const;
  [[nodiscard]] BigInt floor() const;
  [[nodiscard]] BigInt ceil() const;
  /// Fractional part in [0, 1).
  [[nodiscard]] BigRational frac() const;
  [[nodiscard]] double to_double() const { return q_.get_d(); }
  /// "p" for integers, "p/q" otherwise.
  [[nodiscard]] std::string str() const;

  [[nodiscard]] const mpq_class& raw() const { return q_; }

  BigRational& operator+=(const BigRational& o);
  BigRational& operator-=(const BigRational& o);
  BigRational& operator*=(const BigRational& o);
  BigRational& operator/=(const BigRational& o);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }
  friend BigRational operator-(const BigRational& a);

  friend bool operator==(const BigRational& a, const BigRational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const BigRational& a, const BigRational& b);

  friend std::ostream& operator<<(std::ostream& os, const BigRational& r) { return os << r.str(); }

 private:
  explicit BigRational(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

/// r^e for integer e (negative e inverts; throws PoleError for 0^negative).
BigRational pow(const BigRational& r, long e);

/// C(n, k); zero when k lies outside [0, n].
BigInt binomial(long n, long k);

/// n! from a per-process memo table (thread safe).
BigInt factorial(long n);

struct HarmonicSpec {
  int power = 1;
  long lower = 1;
  long upper = 0;
};

/// Exact sum of kappa^(-power) for lower <= kappa <= upper; zero on an empty range.
BigRational harmonic_sum(const HarmonicSpec& spec);

/// Shape parameters of R(a; b; t) together with the derived d1 = Delta - 1, d2 = Delta + 1.
struct RParams {
  long nu = 1;
  long delta = 2;

  RParams(long nu_, long delta_);
  [[nodiscard]] long d1() const { return delta - 1; }
  [[nodiscard]] long d2() const { return delta + 1; }
  /// nu * Delta, the top index of every coefficient table.
  [[nodiscard]] long top() const { return nu * delta; }
  /// (nu Delta)! / (nu d1)!, the scale between starred and unstarred functions.
  [[nodiscard]] BigInt scale() const;
};

/// R(a; b; t) = b!/(b-a)! prod_{kappa=a+1}^{b} (t - kappa) / prod_{kappa=0}^{b} (t + kappa).
BigRational r_eval(long a, long b, const BigRational& t);

/// R0(t; nu) = R(nu; nu Delta; t). Throws PoleError for t in {0, -1, ..., -nu Delta}.
BigRational r0_eval(const BigRational& t, long nu, long delta);

}  // namespace mf

template <>
struct std::hash<mf::BigRational> {
  std::size_t operator()(const mf::BigRational& r) const noexcept;
};
