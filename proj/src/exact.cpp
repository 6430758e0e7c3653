#include "mf/exact.hpp"

#include <cctype>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "mf/errors.hpp"

namespace mf {

BigRational::BigRational(const BigInt& num, const BigInt& den) : q_(num, den) {
  if (den == 0) throw PoleError("BigRational: zero denominator");
  q_.canonicalize();
}

BigRational::BigRational(long num, long den) : BigRational(BigInt(num), BigInt(den)) {}

BigRational BigRational::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t lead = 0;
  while (lead < s.size() && std::isspace(static_cast<unsigned char>(s[lead]))) ++lead;
  s.erase(0, lead);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    BigRational n = parse(s.substr(0, slash));
    BigRational d = parse(s.substr(slash + 1));
    if (d.is_zero()) throw std::invalid_argument("zero denominator in '" + s + "'");
    return n / d;
  }

  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed number '" + s + "'");
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw std::invalid_argument("malformed number '" + s + "'");
    std::size_t used = 0;
    try {
      exponent = std::stol(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed exponent in '" + s + "'");
    }
    if (i + 1 + used != s.size()) throw std::invalid_argument("malformed number '" + s + "'");
  }
  BigInt mant(digits, 10);
  if (negative) mant = -mant;
  long shift = exponent - frac_digits;
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? BigRational(BigInt(mant * ten_pow)) : BigRational(mant, ten_pow);
}

BigRational BigRational::abs() const { return BigRational(mpq_class(::abs(q_))); }

BigInt BigRational::floor() const {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigInt BigRational::ceil() const {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return r;
}

BigRational BigRational::frac() const { return *this - BigRational(floor()); }

std::string BigRational::str() const {
  if (is_integer()) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigRational& BigRational::operator+=(const BigRational& o) {
  q_ += o.q_;
  return *this;
}
BigRational& BigRational::operator-=(const BigRational& o) {
  q_ -= o.q_;
  return *this;
}
BigRational& BigRational::operator*=(const BigRational& o) {
  q_ *= o.q_;
  return *this;
}
BigRational& BigRational::operator/=(const BigRational& o) {
  if (o.is_zero()) throw PoleError("BigRational: division by zero");
  q_ /= o.q_;
  return *this;
}

BigRational operator-(const BigRational& a) { return BigRational(mpq_class(-a.q_)); }

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
  int c = cmp(a.q_, b.q_);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

BigRational pow(const BigRational& r, long e) {
  if (e < 0) {
    if (r.is_zero()) throw PoleError("pow: zero to a negative power");
    return pow(BigRational(1) / r, -e);
  }
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), r.num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), r.den().get_mpz_t(), static_cast<unsigned long>(e));
  return {n, d};
}

BigInt binomial(long n, long k) {
  if (n < 0) throw std::invalid_argument("binomial: n must be non-negative");
  if (k < 0 || k > n) return 0;
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

BigInt factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  static std::mutex mu;
  static std::vector<BigInt> memo{BigInt(1)};
  std::lock_guard lock(mu);
  while (static_cast<long>(memo.size()) <= n) {
    memo.push_back(memo.back() * static_cast<unsigned long>(memo.size()));
  }
  return memo[static_cast<std::size_t>(n)];
}

BigRational harmonic_sum(const HarmonicSpec& spec) {
  if (spec.power < 1) throw std::invalid_argument("harmonic_sum: power must be positive");
  if (spec.lower < 1) throw std::invalid_argument("harmonic_sum: lower bound must be >= 1");
  mpq_class acc(0);
  for (long k = spec.lower; k <= spec.upper; ++k) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(k), static_cast<unsigned long>(spec.power));
    acc += mpq_class(1, p);
  }
  acc.canonicalize();
  return {acc.get_num(), acc.get_den()};
}

RParams::RParams(long nu_, long delta_) : nu(nu_), delta(delta_) {
  if (nu < 1) throw std::invalid_argument("nu must be >= 1");
  if (delta < 2) throw std::invalid_argument("Delta must be >= 2");
}

BigInt RParams::scale() const { return factorial(top()) / factorial(nu * d1()); }

BigRational r_eval(long a, long b, const BigRational& t) {
  if (a < 0 || b < a) throw std::invalid_argument("r_eval: need 0 <= a <= b");
  if (t.is_integer() && t <= BigRational(0) && t >= BigRational(-b)) {
    throw PoleError("R(a;b;t): t = " + t.str() + " is a pole");
  }
  BigRational num(BigInt(factorial(b) / factorial(b - a)));
  for (long kappa = a + 1; kappa <= b; ++kappa) num *= t - BigRational(kappa);
  BigRational den(1);
  for (long kappa = 0; kappa <= b; ++kappa) den *= t + BigRational(kappa);
  return num / den;
}

BigRational r0_eval(const BigRational& t, long nu, long delta) {
  RParams p(nu, delta);
  return r_eval(p.nu, p.top(), t);
}

}  // namespace mf

std::size_t std::hash<mf::BigRational>::operator()(const mf::BigRational& r) const noexcept {
  return std::hash<std::string>{}(r.str());
}
