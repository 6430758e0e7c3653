#include "mf/real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mf {

namespace {

constexpr mpfr_rnd_t kRnd = MPFR_RNDN;

Bits max_prec(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

void raise_prec(Real& a, Bits p) {
  if (p > a.prec()) a.set_prec(p);
}

}  // namespace

Real::Real(Bits prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

Real::Real(long v, Bits prec) {
  mpfr_init2(v_, prec);
  mpfr_set_si(v_, v, kRnd);
}

Real::Real(double v, Bits prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, kRnd);
}

Real::Real(const BigRational& v, Bits prec) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.raw().get_mpq_t(), kRnd);
}

Real::Real(const BigInt& v, Bits prec) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, v.get_mpz_t(), kRnd);
}

Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, kRnd);
}

Real::Real(const Real& o, Bits prec) {
  mpfr_init2(v_, prec);
  mpfr_set(v_, o.v_, kRnd);
}

Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, kRnd);
  }
  return *this;
}

Real& Real::operator=(Real&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::parse(const std::string& decimal, Bits prec) {
  Real r(prec);
  if (mpfr_set_str(r.v_, decimal.c_str(), 10, kRnd) != 0 && !r.is_finite()) {
    throw std::invalid_argument("cannot parse real '" + decimal + "'");
  }
  return r;
}

Real Real::pi(Bits prec) {
  Real r(prec);
  mpfr_const_pi(r.v_, kRnd);
  return r;
}

Real Real::two_pow(long e, Bits prec) {
  Real r(prec);
  mpfr_set_ui_2exp(r.v_, 1, e, kRnd);
  return r;
}

Real Real::inf(Bits prec) {
  Real r(prec);
  mpfr_set_inf(r.v_, 1);
  return r;
}

void Real::set_prec(Bits prec) { mpfr_prec_round(v_, prec, kRnd); }

double Real::log2_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  if (!is_finite()) return std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpfr_get_d_2exp(&e, v_, kRnd);
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

BigRational Real::to_rational() const {
  if (!is_finite()) throw std::domain_error("to_rational: non-finite value");
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), v_);
  return {q.get_num(), q.get_den()};
}

std::string Real::str(int digits) const {
  if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(prec()) * 0.30103)) + 1;
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits, v_);
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

Real& Real::operator+=(const Real& o) {
  raise_prec(*this, o.prec());
  mpfr_add(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator-=(const Real& o) {
  raise_prec(*this, o.prec());
  mpfr_sub(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator*=(const Real& o) {
  raise_prec(*this, o.prec());
  mpfr_mul(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator/=(const Real& o) {
  raise_prec(*this, o.prec());
  mpfr_div(v_, v_, o.v_, kRnd);
  return *this;
}
Real& Real::operator*=(long v) {
  mpfr_mul_si(v_, v_, v, kRnd);
  return *this;
}
Real& Real::operator/=(long v) {
  mpfr_div_si(v_, v_, v, kRnd);
  return *this;
}

Real operator+(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, kRnd);
  return r;
}
Real operator-(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, kRnd);
  return r;
}
Real operator*(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, kRnd);
  return r;
}
Real operator/(const Real& a, const Real& b) {
  Real r(max_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, kRnd);
  return r;
}
Real operator*(const Real& a, long b) {
  Real r(a.prec());
  mpfr_mul_si(r.v_, a.v_, b, kRnd);
  return r;
}
Real operator/(const Real& a, long b) {
  Real r(a.prec());
  mpfr_div_si(r.v_, a.v_, b, kRnd);
  return r;
}
Real operator-(const Real& a) {
  Real r(a.prec());
  mpfr_neg(r.v_, a.v_, kRnd);
  return r;
}

#define MF_UNARY(name, fn)              \
  Real name(const Real& x) {            \
    Real r(x.prec());                   \
    fn(r.get(), x.get(), kRnd);         \
    return r;                           \
  }

MF_UNARY(abs, mpfr_abs)
MF_UNARY(sqrt, mpfr_sqrt)
MF_UNARY(exp, mpfr_exp)
MF_UNARY(log, mpfr_log)
MF_UNARY(sin, mpfr_sin)
MF_UNARY(cos, mpfr_cos)
#undef MF_UNARY

Real round(const Real& x) {
  Real r(x.prec());
  mpfr_round(r.get(), x.get());
  return r;
}

Real atan2(const Real& y, const Real& x) {
  Real r(max_prec(y, x));
  mpfr_atan2(r.get(), y.get(), x.get(), kRnd);
  return r;
}

Real pow(const Real& x, const Real& y) {
  Real r(max_prec(x, y));
  mpfr_pow(r.get(), x.get(), y.get(), kRnd);
  return r;
}

Real pow(const Real& x, long e) {
  Real r(x.prec());
  mpfr_pow_si(r.get(), x.get(), e, kRnd);
  return r;
}

Real hypot(const Real& x, const Real& y) {
  Real r(max_prec(x, y));
  mpfr_hypot(r.get(), x.get(), y.get(), kRnd);
  return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }

// ---------------------------------------------------------------------------

APComplex::APComplex(Bits prec) : re_(std::max<Bits>(prec, 64)), im_(std::max<Bits>(prec, 64)) {}

APComplex::APComplex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {
  Bits p = std::max<Bits>(prec(), 64);
  raise_prec(re_, p);
  raise_prec(im_, p);
}

APComplex::APComplex(const Real& re) : APComplex(re, Real(re.prec())) {}

APComplex::APComplex(const BigRational& re, const BigRational& im, Bits prec)
    : APComplex(Real(re, std::max<Bits>(prec, 64)), Real(im, std::max<Bits>(prec, 64))) {}

APComplex::APComplex(double re, double im, Bits prec)
    : APComplex(Real(re, std::max<Bits>(prec, 64)), Real(im, std::max<Bits>(prec, 64))) {}

void APComplex::set_prec(Bits prec) {
  re_.set_prec(prec);
  im_.set_prec(prec);
}

APComplex& APComplex::operator+=(const APComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

APComplex& APComplex::operator-=(const APComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

APComplex& APComplex::operator*=(const APComplex& o) {
  Bits p = std::max(prec(), o.prec());
  Real ac(p), bd(p), ad(p), bc(p);
  mpfr_mul(ac.get(), re_.get(), o.re_.get(), kRnd);
  mpfr_mul(bd.get(), im_.get(), o.im_.get(), kRnd);
  mpfr_mul(ad.get(), re_.get(), o.im_.get(), kRnd);
  mpfr_mul(bc.get(), im_.get(), o.re_.get(), kRnd);
  raise_prec(re_, p);
  raise_prec(im_, p);
  mpfr_sub(re_.get(), ac.get(), bd.get(), kRnd);
  mpfr_add(im_.get(), ad.get(), bc.get(), kRnd);
  return *this;
}

APComplex& APComplex::operator/=(const APComplex& o) {
  if (o.im_.is_zero()) return *this /= o.re_;
  // Smith's algorithm keeps intermediate magnitudes bounded.
  Bits p = std::max(prec(), o.prec());
  Real a(re_, p), b(im_, p);
  raise_prec(re_, p);
  raise_prec(im_, p);
  if (abs(o.re_) >= abs(o.im_)) {
    Real ratio = o.im_ / o.re_;
    Real den = o.re_ + o.im_ * ratio;
    re_ = (a + b * ratio) / den;
    im_ = (b - a * ratio) / den;
  } else {
    Real ratio = o.re_ / o.im_;
    Real den = o.re_ * ratio + o.im_;
    re_ = (a * ratio + b) / den;
    im_ = (b * ratio - a) / den;
  }
  return *this;
}

APComplex& APComplex::operator*=(const Real& o) {
  re_ *= o;
  im_ *= o;
  return *this;
}

APComplex& APComplex::operator/=(const Real& o) {
  re_ /= o;
  im_ /= o;
  return *this;
}

Real abs(const APComplex& z) { return hypot(z.re(), z.im()); }

Real norm(const APComplex& z) { return z.re() * z.re() + z.im() * z.im(); }

Real arg(const APComplex& z) { return atan2(z.im(), z.re()); }

APComplex conj(const APComplex& z) { return {z.re(), -z.im()}; }

APComplex exp(const APComplex& z) {
  Real m = exp(z.re());
  Bits p = z.prec();
  Real s(p), c(p);
  mpfr_sin_cos(s.get(), c.get(), z.im().get(), kRnd);
  return {m * c, m * s};
}

APComplex log(const APComplex& z) {
  if (z.is_zero()) throw std::domain_error("log(0)");
  return {log(abs(z)), arg(z)};
}

APComplex sqr(const APComplex& z) { return z * z; }

APComplex pow(const APComplex& z, long e) {
  if (e < 0) {
    APComplex one(Real(1L, z.prec()));
    return pow(one / z, -e);
  }
  APComplex result(Real(1L, z.prec()));
  APComplex base = z;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

APComplex mul_i(const APComplex& z) { return {-z.im(), z.re()}; }

}  // namespace mf
