#pragma once

// RAII value types over MPFR. Every binary operation produces a result whose
// precision is the larger of the operands' precisions; rounding is to nearest.

#include <mpfr.h>

#include <string>
#include <utility>

#include "mf/exact.hpp"

namespace mf {

using Bits = mpfr_prec_t;

class Real {
 public:
  explicit Real(Bits prec = 64);
  Real(long v, Bits prec);
  Real(int v, Bits prec) : Real(static_cast<long>(v), prec) {}
  Real(double v, Bits prec);
  Real(const BigRational& v, Bits prec);
  Real(const BigInt& v, Bits prec);
  Real(const Real& o);
  Real(const Real& o, Bits prec);  // re-rounded copy
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  static Real parse(const std::string& decimal, Bits prec);
  static Real pi(Bits prec);
  static Real two_pow(long e, Bits prec);
  /// Infinity marker, used for "no bound yet".
  static Real inf(Bits prec = 64);

  [[nodiscard]] Bits prec() const { return mpfr_get_prec(v_); }
  /// Changes the precision in place, rounding the stored value.
  void set_prec(Bits prec);

  [[nodiscard]] mpfr_ptr get() { return v_; }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }

  [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
  [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
  [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  /// log2 |x|, or -inf for zero. Valid far outside the double exponent range.
  [[nodiscard]] double log2_abs() const;
  /// Exact conversion (MPFR values are dyadic rationals).
  [[nodiscard]] BigRational to_rational() const;
  /// Scientific notation with enough digits to identify the value at its precision.
  [[nodiscard]] std::string str(int digits = 0) const;

  Real& operator+=(const Real& o);
  Real& operator-=(const Real& o);
  Real& operator*=(const Real& o);
  Real& operator/=(const Real& o);
  Real& operator*=(long v);
  Real& operator/=(long v);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator*(const Real& a, long b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(const Real& a, long b);
  friend Real operator-(const Real& a);

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
  friend bool operator>(const Real& a, const Real& b) { return b < a; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
  friend bool operator>=(const Real& a, const Real& b) { return b <= a; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }

 private:
  mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real atan2(const Real& y, const Real& x);
Real pow(const Real& x, const Real& y);
Real pow(const Real& x, long e);
Real hypot(const Real& x, const Real& y);
/// Nearest integer, halves rounded away from zero.
Real round(const Real& x);
Real max(const Real& a, const Real& b);

/// Arbitrary-precision complex number; prec is at least 64 bits.
class APComplex {
 public:
  explicit APComplex(Bits prec = 64);
  APComplex(Real re, Real im);
  APComplex(const Real& re);  // NOLINT(google-explicit-constructor)
  APComplex(const BigRational& re, const BigRational& im, Bits prec);
  APComplex(double re, double im, Bits prec);

  [[nodiscard]] const Real& re() const { return re_; }
  [[nodiscard]] const Real& im() const { return im_; }
  [[nodiscard]] Real& re() { return re_; }
  [[nodiscard]] Real& im() { return im_; }
  [[nodiscard]] Bits prec() const { return re_.prec() > im_.prec() ? re_.prec() : im_.prec(); }
  void set_prec(Bits prec);

  [[nodiscard]] bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
  [[nodiscard]] bool is_real() const { return im_.is_zero(); }

  APComplex& operator+=(const APComplex& o);
  APComplex& operator-=(const APComplex& o);
  APComplex& operator*=(const APComplex& o);
  APComplex& operator/=(const APComplex& o);
  APComplex& operator*=(const Real& o);
  APComplex& operator/=(const Real& o);

  friend APComplex operator+(APComplex a, const APComplex& b) { return a += b; }
  friend APComplex operator-(APComplex a, const APComplex& b) { return a -= b; }
  friend APComplex operator*(APComplex a, const APComplex& b) { return a *= b; }
  friend APComplex operator/(APComplex a, const APComplex& b) { return a /= b; }
  friend APComplex operator*(APComplex a, const Real& b) { return a *= b; }
  friend APComplex operator*(const Real& a, APComplex b) { return b *= a; }
  friend APComplex operator/(APComplex a, const Real& b) { return a /= b; }
  friend APComplex operator-(const APComplex& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const APComplex& a, const APComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Real re_;
  Real im_;
};

Real abs(const APComplex& z);
/// Squared modulus, exact up to one rounding per operation.
Real norm(const APComplex& z);
/// Principal argument in (-pi, pi].
Real arg(const APComplex& z);
APComplex conj(const APComplex& z);
APComplex exp(const APComplex& z);
/// Principal logarithm.
APComplex log(const APComplex& z);
APComplex pow(const APComplex& z, long e);
APComplex sqr(const APComplex& z);
/// i * x
APComplex mul_i(const APComplex& z);

}  // namespace mf
