#include "mf/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <string>

#include "mf/errors.hpp"

namespace mf {

PrecisionBudget::PrecisionBudget(long target, long guard, long terms)
    : target_bits(target), guard_bits(guard), max_terms(terms) {
  if (target_bits < 32) throw std::invalid_argument("target_bits must be >= 32");
  if (guard_bits < 16) throw std::invalid_argument("guard_bits must be >= 16");
  if (max_terms < 1) throw std::invalid_argument("max_terms must be positive");
}

PrecisionBudget PrecisionBudget::with_target(long target) const {
  return {target, guard_bits, max_terms};
}

Real PrecisionBudget::tolerance() const { return Real::two_pow(-target_bits, 64); }

// ---------------------------------------------------------------------------
// Cut-plane branch

bool OmegaPoint::in_omega_star() const { return norm(value_) >= Real(1L, 64); }

bool OmegaPoint::in_omega_star0() const { return in_omega_star() && value_.re().sign() > 0; }

OmegaPoint omega_normalize(const APComplex& z) {
  if (z.is_zero()) throw DomainError("omega_normalize: z = 0 has no argument");
  Real a = arg(z);
  Real half_pi = Real::pi(a.prec()) / 2L;
  if (a > half_pi) a -= Real::pi(a.prec()) * 2L;
  return {z, std::move(a)};
}

APComplex log_omega(const OmegaPoint& p) { return {log(abs(p.value())), p.arg()}; }

APComplex omega_pow(const OmegaPoint& p, const APComplex& s) {
  APComplex l = log_omega(p);
  if (s.prec() > l.prec()) l.set_prec(s.prec());
  return exp(s * l);
}

// ---------------------------------------------------------------------------
// Bernoulli numbers

namespace {

std::shared_ptr<const std::vector<BigRational>> bernoulli_table(long n) {
  static std::mutex mu;
  static auto table = std::make_shared<const std::vector<BigRational>>(1, BigRational(1));
  std::lock_guard lock(mu);
  if (static_cast<long>(table->size()) > n) return table;
  auto grown = std::make_shared<std::vector<BigRational>>(*table);
  for (long m = static_cast<long>(grown->size()); m <= n; ++m) {
    if (m > 1 && (m % 2) == 1) {
      grown->emplace_back(0);
      continue;
    }
    BigRational acc(0);
    for (long k = 0; k < m; ++k) {
      const BigRational& bk = (*grown)[static_cast<std::size_t>(k)];
      if (bk.is_zero()) continue;
      acc += BigRational(binomial(m + 1, k)) * bk;
    }
    grown->push_back(-acc / BigRational(m + 1));
  }
  table = std::move(grown);
  return table;
}

}  // namespace

BigRational bernoulli(long n) {
  if (n < 0) throw std::invalid_argument("bernoulli: negative index");
  return (*bernoulli_table(n))[static_cast<std::size_t>(n)];
}

// ---------------------------------------------------------------------------
// zeta(n)

Real zeta_int(long n, const PrecisionBudget& budget) {
  if (n < 2) throw DomainError("zeta_int: n must be >= 2");
  const Bits wp = budget.working_bits(8);
  const double tol_log2 = -static_cast<double>(budget.target_bits) - 1.0;

  long cutoff = std::max<long>(8, static_cast<long>(0.12 * static_cast<double>(budget.target_bits + 8)) + 4);
  for (;;) {
    if (cutoff > budget.max_terms) {
      throw BudgetExceeded("zeta_int(" + std::to_string(n) + "): cutoff exceeds max_terms");
    }
    Real sum(wp);
    Real term(wp);
    for (long k = cutoff - 1; k >= 1; --k) {  // small terms first
      mpfr_ui_pow_ui(term.get(), static_cast<unsigned long>(k), static_cast<unsigned long>(n), MPFR_RNDN);
      mpfr_ui_div(term.get(), 1, term.get(), MPFR_RNDN);
      sum += term;
    }
    const Real big_n(cutoff, wp);
    Real n_pow = pow(big_n, -n);             // N^-n
    sum += n_pow * big_n / (n - 1);          // integral N^(1-n)/(n-1)
    sum += n_pow / 2L;

    // Correction terms B_2j/(2j)! (n)_{2j-1} N^(-n-2j+1); the remainder after
    // including term j is bounded by |term j|.
    const Real inv_n2 = Real(1L, wp) / (big_n * big_n);
    Real power = n_pow * big_n;              // becomes N^(-n-2j+1) inside the loop
    BigInt rising(1);                        // (n)_{2j-1}
    BigInt fact(1);                          // (2j)!
    double prev_log2 = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (long j = 1; j <= 4 * cutoff + 16; ++j) {
      power *= inv_n2;
      // (n)_{2j-1} = (n)_{2j-3} (n+2j-3)(n+2j-2); for j = 1 it is n.
      if (j == 1) {
        rising = n;
      } else {
        rising *= static_cast<unsigned long>(n + 2 * j - 3);
        rising *= static_cast<unsigned long>(n + 2 * j - 2);
      }
      fact *= static_cast<unsigned long>((2 * j - 1) * (2 * j));
      BigRational coeff = bernoulli(2 * j) * BigRational(rising, fact);
      Real t = Real(coeff, wp) * power;
      sum += t;
      double l2 = t.log2_abs();
      if (l2 < tol_log2) {
        converged = true;
        break;
      }
      if (l2 > prev_log2) break;  // asymptotic series started to grow
      prev_log2 = l2;
    }
    if (converged) {
      sum.set_prec(budget.working_bits());
      return sum;
    }
    cutoff *= 2;
  }
}

// ---------------------------------------------------------------------------
// Polylogarithm

APComplex polylog(long n, const APComplex& w, const PrecisionBudget& budget) {
  if (n < 1) throw DomainError("polylog: order must be >= 1");
  const Bits wp = budget.working_bits(8);
  Real one(1L, wp);
  Real mod2 = norm(w);
  if (w.im().is_zero() && w.re() == one) {
    if (n == 1) throw DomainError("polylog: L_1 diverges at w = 1");
    return APComplex(zeta_int(n, budget));
  }
  if (mod2 > one) throw DomainError("polylog: |w| > 1 is outside the series domain");
  if (mod2 == one) throw BudgetExceeded("polylog: |w| = 1 with w != 1 is not supported");
  if (w.is_zero()) return APComplex(wp);

  const Real mod = sqrt(Real(mod2, wp));
  const double log2_mod = mod.log2_abs();
  const double log2_gap = (one - mod).log2_abs();
  const double tol_log2 = -static_cast<double>(budget.target_bits) - 1.0;

  APComplex x = w;
  x.set_prec(wp);
  APComplex power = x;
  APComplex sum(wp);
  Real tn(wp);
  for (long t = 1;; ++t) {
    mpfr_ui_pow_ui(tn.get(), static_cast<unsigned long>(t), static_cast<unsigned long>(n), MPFR_RNDN);
    sum += power / tn;
    // sum_{u>t} |w|^u u^-n <= |w|^(t+1) (t+1)^-n / (1 - |w|)
    double tail = static_cast<double>(t + 1) * log2_mod - static_cast<double>(n) * std::log2(static_cast<double>(t + 1)) - log2_gap;
    if (tail < tol_log2) break;
    if (t >= budget.max_terms) throw BudgetExceeded("polylog: term limit reached");
    power *= x;
  }
  sum.set_prec(budget.working_bits());
  return sum;
}

// ---------------------------------------------------------------------------
// Complex Gamma

APComplex gamma(const APComplex& x, Bits prec) {
  const Bits wp = prec + 32;
  if (x.im().is_zero() && x.re().sign() <= 0 && round(x.re()) == x.re()) {
    throw DomainError("gamma: pole at non-positive integer " + x.re().str(6));
  }
  APComplex z = x;
  z.set_prec(wp);

  const double y0 = std::max(16.0, static_cast<double>(prec + 20) / 4.0);
  const double want_re = std::max(y0, std::fabs(z.im().to_double()));
  const double have_re = z.re().to_double();
  const long shift = want_re > have_re ? static_cast<long>(std::ceil(want_re - have_re)) : 0;

  APComplex product(Real(1L, wp));
  for (long j = 0; j < shift; ++j) {
    APComplex f = z;
    f.re() += Real(j, wp);
    product *= f;
  }
  APComplex y = z;
  y.re() += Real(shift, wp);

  // log Gamma(y) = (y - 1/2) log y - y + log(2 pi)/2 + sum_j B_2j / (2j (2j-1) y^(2j-1))
  APComplex logy = log(y);
  APComplex ym = y;
  ym.re() -= Real(0.5, wp);
  APComplex lg = ym * logy - y;
  lg.re() += log(Real::pi(wp) * 2L) / 2L;

  const APComplex inv = APComplex(Real(1L, wp)) / y;
  const APComplex inv2 = inv * inv;
  APComplex power = inv;
  const double tol_log2 = -static_cast<double>(prec) - 24.0;
  double prev = std::numeric_limits<double>::infinity();
  for (long j = 1; j < 4000; ++j) {
    BigRational c = bernoulli(2 * j) / BigRational(2 * j * (2 * j - 1));
    APComplex term = power * Real(c, wp);
    lg += term;
    double l2 = abs(term).log2_abs();
    if (l2 < tol_log2) break;
    if (l2 > prev) throw BudgetExceeded("gamma: Stirling series diverged");
    prev = l2;
    power *= inv2;
  }
  APComplex g = exp(lg) / product;
  g.set_prec(prec);
  return g;
}

}  // namespace mf
