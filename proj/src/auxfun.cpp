#include "mf/auxfun.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "mf/errors.hpp"
#include "mf/meijer.hpp"

namespace mf {

std::string to_string(AuxPath p) {
  switch (p) {
    case AuxPath::Series: return "series";
    case AuxPath::Closed: return "closed";
    case AuxPath::Meijer: return "meijer";
  }
  return "?";
}

AuxPath parse_aux_path(const std::string& s) {
  if (s == "series") return AuxPath::Series;
  if (s == "closed") return AuxPath::Closed;
  if (s == "meijer") return AuxPath::Meijer;
  throw std::invalid_argument("unknown path '" + s + "' (series|closed|meijer)");
}

AuxSpec::AuxSpec(long nu_, long delta_, APComplex z_, PrecisionBudget budget_)
    : nu(nu_), delta(delta_), z(std::move(z_)), budget(budget_) {
  RParams check(nu, delta);
}

bool AuxSpec::at_one() const { return z.im().is_zero() && z.re() == Real(1L, 64); }

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log2_sum(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  double hi = std::max(a, b);
  return hi + std::log2(std::exp2(a - hi) + std::exp2(b - hi));
}

void require_omega0(const AuxSpec& spec) {
  if (norm(spec.z) < Real(1L, 64)) throw DomainError("|z| < 1: z is outside the cut domain |z| >= 1");
  if (spec.z.re().sign() <= 0) throw DomainError("Re z <= 0: the residue series forms need Re z > 0");
}

double log2_scale(long nu, long delta) { return 3.0 * Real(RParams(nu, delta).scale(), 64).log2_abs(); }

APComplex minus_z_pow_nu(const APComplex& z, long nu) { return pow(-z, nu); }

// Upper bound (log2) on the f2, f4, f6 series tails beyond t = T.
double series_tail_log2(long nu, long delta, double abs_z, long T) {
  const long top = nu * delta;
  const double p = static_cast<double>(3 * nu + 3);
  const double lz = std::log2(abs_z);
  double opt = (1.0 - p) * std::log2(static_cast<double>(T)) - std::log2(p - 1.0);
  if (abs_z > 1.0) {
    double geo = -p * std::log2(static_cast<double>(T + 1)) - std::log2(1.0 - 1.0 / abs_z);
    opt = std::min(opt, geo);
  }
  double base = log2_scale(nu, delta) + static_cast<double>(nu - T - 1) * lz + opt;
  const double d1 = static_cast<double>(top - nu);
  const double b1 = d1 / static_cast<double>(T + 1 - top) + static_cast<double>(top + 1) / static_cast<double>(T + 1);
  const double b2 = d1 / std::pow(static_cast<double>(T + 1 - top), 2) +
                    static_cast<double>(top + 1) / std::pow(static_cast<double>(T + 1), 2);
  double f4 = base + std::log2(3.0 * b1);
  double f6 = base + std::log2(0.5 * (9.0 * b1 * b1 + 3.0 * b2));
  return std::max({base, f4, f6});
}

struct SeriesSetup {
  long t0;
  long T;
  Bits wp;
  double tail_log2;
};

SeriesSetup series_setup(long nu, long delta, const APComplex& z, const PrecisionBudget& budget) {
  if (norm(z) < Real(1L, 64)) throw DomainError("series needs |z| >= 1");
  const double abs_z = abs(z).to_double();
  const long T = series_cutoff(nu, delta, abs_z, budget.target_bits);
  if (T > budget.max_terms) {
    throw BudgetExceeded("series needs " + std::to_string(T) + " terms, max_terms is " + std::to_string(budget.max_terms));
  }
  const double extra = std::log2(static_cast<double>(T)) + log2_scale(nu, delta) +
                       static_cast<double>(nu) * std::log2(abs_z) + 8.0;
  SeriesSetup s;
  s.t0 = nu * delta + 1;
  s.T = T;
  s.wp = budget.working_bits(static_cast<long>(std::ceil(extra)));
  s.tail_log2 = series_tail_log2(nu, delta, abs_z, T);
  return s;
}

// R0(t), its log-derivative sums S1, S2 at an integer t > nu Delta.
struct TermKernel {
  long nu;
  long top;
  BigInt scale;
  Bits wp;

  // Writes R^3, (R^3)' and (R^3)'' at t.
  void eval(long t, Real& r3, Real& d1, Real& d2, Real& tmp) const {
    BigInt num = scale;
    BigInt den = 1;
    for (long k = nu + 1; k <= top; ++k) num *= static_cast<unsigned long>(t - k);
    for (long k = 0; k <= top; ++k) den *= static_cast<unsigned long>(t + k);
    Real r(num, wp);
    r /= Real(den, wp);
    Real s1(wp), s2(wp);
    for (long k = nu + 1; k <= top; ++k) {
      mpfr_si_div(tmp.get(), 1, Real(t - k, wp).get(), MPFR_RNDN);
      s1 += tmp;
      s2 -= tmp * tmp;
    }
    for (long k = 0; k <= top; ++k) {
      mpfr_si_div(tmp.get(), 1, Real(t + k, wp).get(), MPFR_RNDN);
      s1 -= tmp;
      s2 += tmp * tmp;
    }
    r3 = r * r * r;
    d1 = r3 * s1 * 3L;
    d2 = r3 * (s1 * s1 * 9L + s2 * 3L);
  }
};

SeriesTriple finish(long nu, const APComplex& z, const SeriesSetup& setup, APComplex s2, APComplex s4, APComplex s6,
                    const PrecisionBudget& budget) {
  APComplex zz = z;
  zz.set_prec(setup.wp);
  APComplex pre = minus_z_pow_nu(zz, nu);
  SeriesTriple out;
  out.f2 = pre * s2;
  out.f4 = -(pre * s4);
  out.f6 = pre * s6 / Real(2L, setup.wp);
  out.terms = setup.T - setup.t0 + 1;
  double rounding = -static_cast<double>(budget.working_bits());
  out.error_log2 = log2_sum(setup.tail_log2, rounding);
  for (auto* v : {&out.f2, &out.f4, &out.f6}) v->set_prec(budget.working_bits());
  return out;
}

}  // namespace

long series_cutoff(long nu, long delta, double abs_z, long target_bits) {
  RParams check(nu, delta);
  if (abs_z < 1.0) throw DomainError("series needs |z| >= 1");
  const double goal = -static_cast<double>(target_bits) - 1.0;
  long lo = nu * delta + 1;
  if (series_tail_log2(nu, delta, abs_z, lo) < goal) return lo;
  long hi = 2 * lo;
  while (series_tail_log2(nu, delta, abs_z, hi) >= goal) {
    lo = hi;
    if (hi > (std::numeric_limits<long>::max() / 4)) throw BudgetExceeded("series cutoff overflow");
    hi *= 2;
  }
  while (hi - lo > 1) {
    long mid = lo + (hi - lo) / 2;
    if (series_tail_log2(nu, delta, abs_z, mid) < goal) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

SeriesTriple series_f246_serial(long nu, long delta, const APComplex& z, const PrecisionBudget& budget) {
  const SeriesSetup setup = series_setup(nu, delta, z, budget);
  const Bits wp = setup.wp;
  RParams rp(nu, delta);
  TermKernel kern{nu, rp.top(), rp.scale(), wp};
  APComplex zz = z;
  zz.set_prec(wp);
  const APComplex w = APComplex(Real(1L, wp)) / zz;
  APComplex power = pow(w, setup.t0);
  APComplex s2(wp), s4(wp), s6(wp);
  Real r3(wp), d1(wp), d2(wp), tmp(wp);
  for (long t = setup.t0; t <= setup.T; ++t) {
    kern.eval(t, r3, d1, d2, tmp);
    s2 += power * r3;
    s4 += power * d1;
    s6 += power * d2;
    power *= w;
  }
  return finish(nu, z, setup, std::move(s2), std::move(s4), std::move(s6), budget);
}

SeriesTriple series_f246(long nu, long delta, const APComplex& z, const PrecisionBudget& budget) {
  const SeriesSetup setup = series_setup(nu, delta, z, budget);
  const Bits wp = setup.wp;
  RParams rp(nu, delta);
  const TermKernel kern{nu, rp.top(), rp.scale(), wp};
  APComplex zz = z;
  zz.set_prec(wp);
  const APComplex w = APComplex(Real(1L, wp)) / zz;
  const bool real_z = zz.is_real();

  constexpr long kBlock = 256;
  const long count = setup.T - setup.t0 + 1;
  const long blocks = (count + kBlock - 1) / kBlock;
  std::vector<APComplex> p2(static_cast<std::size_t>(blocks)), p4(static_cast<std::size_t>(blocks)),
      p6(static_cast<std::size_t>(blocks));

#pragma omp parallel for schedule(dynamic)
  for (long blk = 0; blk < blocks; ++blk) {
    const long a = setup.t0 + blk * kBlock;
    const long b = std::min(setup.T, a + kBlock - 1);
    Real r3(wp), d1(wp), d2(wp), tmp(wp);
    APComplex s2(wp), s4(wp), s6(wp);
    if (real_z) {
      const Real& wr = w.re();
      Real power = pow(wr, a);
      Real a2(wp), a4(wp), a6(wp);
      for (long t = a; t <= b; ++t) {
        kern.eval(t, r3, d1, d2, tmp);
        a2 += power * r3;
        a4 += power * d1;
        a6 += power * d2;
        power *= wr;
      }
      s2 = APComplex(a2);
      s4 = APComplex(a4);
      s6 = APComplex(a6);
    } else {
      APComplex power = pow(w, a);
      for (long t = a; t <= b; ++t) {
        kern.eval(t, r3, d1, d2, tmp);
        s2 += power * r3;
        s4 += power * d1;
        s6 += power * d2;
        power *= w;
      }
    }
    p2[static_cast<std::size_t>(blk)] = std::move(s2);
    p4[static_cast<std::size_t>(blk)] = std::move(s4);
    p6[static_cast<std::size_t>(blk)] = std::move(s6);
  }
  APComplex s2(wp), s4(wp), s6(wp);
  for (long blk = 0; blk < blocks; ++blk) {
    s2 += p2[static_cast<std::size_t>(blk)];
    s4 += p4[static_cast<std::size_t>(blk)];
    s6 += p6[static_cast<std::size_t>(blk)];
  }
  return finish(nu, z, setup, std::move(s2), std::move(s4), std::move(s6), budget);
}

// ---------------------------------------------------------------------------
// Closed forms

namespace {

enum class Which { F2, F4, F6 };

AuxValue closed_form(const AuxSpec& spec, Which which) {
  const CoeffTable& table = coeff_table(spec.nu, spec.delta);
  if (spec.at_one()) {
    auto forms = zeta_forms_at_one(spec.nu, spec.delta);
    const auto& form = forms[which == Which::F2 ? 0 : which == Which::F4 ? 1 : 2];
    AuxValue v;
    v.value = APComplex(evaluate(form, spec.budget));
    v.error_log2 = -static_cast<double>(spec.budget.target_bits);
    v.path = AuxPath::Closed;
    return v;
  }
  const CoeffPolys cp = coeff_polys(table);
  const TailPolys tp = tail_polys(table);
  const double abs_z = abs(spec.z).to_double();
  const RatPoly* tail = which == Which::F2 ? &tp.phi : which == Which::F4 ? &tp.psi : &tp.xi;
  double scale = std::max({cp.alpha.log2_abs_bound(abs_z), cp.beta.log2_abs_bound(abs_z),
                           cp.gamma.log2_abs_bound(abs_z), tail->log2_abs_bound(abs_z)});
  const long extra = std::max(0L, static_cast<long>(std::ceil(scale))) + 8;
  const PrecisionBudget pb = spec.budget.with_target(spec.budget.target_bits + extra);
  const Bits wp = pb.working_bits();
  APComplex z = spec.z;
  z.set_prec(wp);
  const APComplex w = APComplex(Real(1L, wp)) / z;

  const int base = which == Which::F2 ? 3 : which == Which::F4 ? 4 : 5;
  const long ma = which == Which::F2 ? 1 : which == Which::F4 ? 3 : 6;
  const long mb = which == Which::F2 ? 1 : which == Which::F4 ? 2 : 3;
  APComplex value = cp.alpha.eval(z) * polylog(base, w, pb) * Real(ma, wp);
  value += cp.beta.eval(z) * polylog(base - 1, w, pb) * Real(mb, wp);
  value += cp.gamma.eval(z) * polylog(base - 2, w, pb);
  value -= tail->eval(z);
  value.set_prec(spec.budget.working_bits());

  AuxValue v;
  v.value = std::move(value);
  v.error_log2 = -static_cast<double>(spec.budget.target_bits) - 4.0;
  v.path = AuxPath::Closed;
  return v;
}

AuxValue series_value(const AuxSpec& spec, Which which) {
  SeriesTriple s = series_f246(spec.nu, spec.delta, spec.z, spec.budget);
  AuxValue v;
  v.value = which == Which::F2 ? s.f2 : which == Which::F4 ? s.f4 : s.f6;
  v.error_log2 = s.error_log2;
  v.terms = s.terms;
  v.path = AuxPath::Series;
  return v;
}

BigRational sign_pow(long e) { return (e % 2 == 0) ? BigRational(1) : BigRational(-1); }

// c3 * sign * G(point) with the G target raised to absorb the scale.
AuxValue meijer_value(const AuxSpec& spec, long m, const APComplex& point, const BigRational& sign) {
  const double ls = log2_scale(spec.nu, spec.delta);
  const PrecisionBudget pb = spec.budget.with_target(spec.budget.target_bits + static_cast<long>(std::ceil(ls)) + 4);
  GParams params = aux_params(spec.nu, spec.delta, m);
  APComplex pt = point;
  pt.set_prec(pb.working_bits());
  GResult g = eval_G(params, omega_normalize(pt), Contour::Auto, pb);
  BigInt c = RParams(spec.nu, spec.delta).scale();
  BigRational factor = sign * BigRational(BigInt(c * c * c));
  AuxValue v;
  v.value = g.value * Real(factor, pb.working_bits());
  v.value.set_prec(spec.budget.working_bits());
  v.error_log2 = g.error_log2 + ls;
  v.terms = g.terms;
  v.path = AuxPath::Meijer;
  return v;
}

APComplex log_z(const APComplex& z, Bits wp) {
  APComplex v = z;
  v.set_prec(std::max(wp, v.prec()));
  return log_omega(omega_normalize(v));
}

double combine_error(std::initializer_list<std::pair<double, double>> parts) {
  // sum 2^(err_i) * |multiplier_i|, multipliers given as log2
  double acc = kNegInf;
  for (auto [e, m] : parts) acc = log2_sum(acc, e + std::max(m, 0.0));
  return acc;
}

}  // namespace

BigRational f1_star(long nu, long delta, const BigRational& z) { return f1_star_poly(nu, delta).eval(z); }

AuxValue f1_star(const AuxSpec& spec, AuxPath path) {
  if (path == AuxPath::Meijer) {
    if (norm(spec.z) > Real(1L, 64)) throw DomainError("the G^(1,3) residue form of f1* needs |z| <= 1");
    return meijer_value(spec, 1, spec.z, sign_pow(spec.nu * (spec.delta + 1)));
  }
  APComplex z = spec.z;
  z.set_prec(spec.budget.working_bits());
  AuxValue v;
  v.value = f1_star_poly(spec.nu, spec.delta).eval(z);
  v.error_log2 = -static_cast<double>(spec.budget.working_bits()) + 8;
  v.path = AuxPath::Closed;
  return v;
}

AuxValue f2_star(const AuxSpec& spec, AuxPath path) {
  require_omega0(spec);
  switch (path) {
    case AuxPath::Series: return series_value(spec, Which::F2);
    case AuxPath::Closed: return closed_form(spec, Which::F2);
    case AuxPath::Meijer:
      if (spec.at_one()) throw DomainError("the G^(4,3) residue series does not converge fast enough at z = 1");
      return meijer_value(spec, 4, -spec.z, -sign_pow(spec.nu * spec.delta));
  }
  throw std::logic_error("unknown path");
}

AuxValue f4_star(const AuxSpec& spec, AuxPath path) {
  require_omega0(spec);
  if (path == AuxPath::Meijer) throw std::invalid_argument("f4 has no Meijer route; use series or closed");
  return path == AuxPath::Series ? series_value(spec, Which::F4) : closed_form(spec, Which::F4);
}

AuxValue f6_star(const AuxSpec& spec, AuxPath path) {
  require_omega0(spec);
  if (path == AuxPath::Meijer) throw std::invalid_argument("f6 has no Meijer route; use series or closed");
  return path == AuxPath::Series ? series_value(spec, Which::F6) : closed_form(spec, Which::F6);
}

AuxValue f3_star(const AuxSpec& spec, AuxPath path) {
  require_omega0(spec);
  if (path == AuxPath::Meijer) {
    if (spec.at_one()) throw DomainError("the G^(5,3) residue series does not converge fast enough at z = 1");
    return meijer_value(spec, 5, spec.z, sign_pow(spec.nu * (spec.delta + 1)));
  }
  const Bits wp = spec.budget.working_bits(8);
  AuxValue f2 = path == AuxPath::Series ? series_value(spec, Which::F2) : closed_form(spec, Which::F2);
  AuxValue f4 = path == AuxPath::Series ? series_value(spec, Which::F4) : closed_form(spec, Which::F4);
  APComplex lz = log_z(spec.z, wp);
  AuxValue v;
  v.value = f2.value * lz + f4.value;
  v.value.set_prec(spec.budget.working_bits());
  v.error_log2 = combine_error({{f2.error_log2, abs(lz).log2_abs()}, {f4.error_log2, 0.0}});
  v.terms = f2.terms;
  v.path = path;
  return v;
}

namespace {

struct Triple {
  AuxValue f2, f4, f6;
};

Triple triple(const AuxSpec& spec, AuxPath path) {
  if (path == AuxPath::Series) {
    SeriesTriple s = series_f246(spec.nu, spec.delta, spec.z, spec.budget);
    auto wrap = [&](const APComplex& v) {
      AuxValue a;
      a.value = v;
      a.error_log2 = s.error_log2;
      a.terms = s.terms;
      a.path = AuxPath::Series;
      return a;
    };
    return {wrap(s.f2), wrap(s.f4), wrap(s.f6)};
  }
  return {closed_form(spec, Which::F2), closed_form(spec, Which::F4), closed_form(spec, Which::F6)};
}

}  // namespace

AuxValue f5_star(const AuxSpec& spec, AuxPath path) {
  require_omega0(spec);
  if (path == AuxPath::Meijer) throw std::invalid_argument("f5 has no Meijer route; f5-vee does");
  const Bits wp = spec.budget.working_bits(8);
  Triple t = triple(spec, path);
  APComplex lz = log_z(spec.z, wp);
  AuxValue v;
  v.value = t.f6.value + t.f2.value * sqr(lz) / Real(2L, wp) + t.f4.value * lz;
  v.value.set_prec(spec.budget.working_bits());
  double l = std::max(0.0, abs(lz).log2_abs());
  v.error_log2 = combine_error({{t.f6.error_log2, 0.0}, {t.f2.error_log2, 2 * l}, {t.f4.error_log2, l}});
  v.terms = t.f2.terms;
  v.path = path;
  return v;
}

AuxValue f5_vee(const AuxSpec& spec, AuxPath path) {
  require_omega0(spec);
  if (path == AuxPath::Meijer) {
    if (spec.at_one()) throw DomainError("the G^(6,3) residue series does not converge fast enough at z = 1");
    return meijer_value(spec, 6, -spec.z, -sign_pow(spec.nu * spec.delta));
  }
  const Bits wp = spec.budget.working_bits(8);
  Triple t = triple(spec, path);
  APComplex lmz = log_z(-spec.z, wp);  // log z - i pi on the cut plane
  const Real pi = Real::pi(wp);
  APComplex quad = sqr(lmz);
  quad.re() += pi * pi;
  AuxValue v;
  v.value = t.f2.value * quad / Real(2L, wp) + t.f4.value * lmz + t.f6.value;
  v.value.set_prec(spec.budget.working_bits());
  double l = std::max(0.0, abs(lmz).log2_abs());
  v.error_log2 = combine_error({{t.f6.error_log2, 0.0}, {t.f2.error_log2, 2 * l + 2}, {t.f4.error_log2, l}});
  v.terms = t.f2.terms;
  v.path = path;
  return v;
}

// ---------------------------------------------------------------------------

std::array<ZetaLinearForm, 3> zeta_forms_at_one(long nu, long delta) {
  const CoeffTable& table = coeff_table(nu, delta);
  const CoeffPolys cp = coeff_polys(table);
  const TailPolys tp = tail_polys(table);
  const BigRational one(1);
  const BigRational a1 = cp.alpha.eval(one);
  const BigRational b1 = cp.beta.eval(one);
  const BigRational g1 = cp.gamma.eval(one);
  if (!g1.is_zero()) {
    throw AssertionError("gamma*(1) = " + g1.str() + " is not zero for (nu, Delta) = (" + std::to_string(nu) + ", " +
                         std::to_string(delta) + ")");
  }
  std::array<ZetaLinearForm, 3> out;
  for (auto& f : out) {
    f.nu = nu;
    f.delta = delta;
  }
  out[0].zeta_coeffs = {{3, a1}, {2, b1}};
  out[0].rational_part = -tp.phi.eval(one);
  out[1].zeta_coeffs = {{4, BigRational(3) * a1}, {3, BigRational(2) * b1}, {2, g1}};
  out[1].rational_part = -tp.psi.eval(one);
  out[2].zeta_coeffs = {{5, BigRational(6) * a1}, {4, BigRational(3) * b1}, {3, g1}};
  out[2].rational_part = -tp.xi.eval(one);
  return out;
}

Real evaluate(const ZetaLinearForm& form, const PrecisionBudget& budget) {
  double scale = 0;
  for (const auto& [s, c] : form.zeta_coeffs) {
    if (!c.is_zero()) scale = std::max(scale, Real(c, 64).log2_abs());
  }
  const PrecisionBudget pb = budget.with_target(budget.target_bits + static_cast<long>(std::ceil(scale)) + 4);
  const Bits wp = pb.working_bits();
  Real acc(form.rational_part, wp);
  for (const auto& [s, c] : form.zeta_coeffs) {
    if (c.is_zero()) continue;
    acc += Real(c, wp) * zeta_int(s, pb);
  }
  acc.set_prec(budget.working_bits());
  return acc;
}

}  // namespace mf
