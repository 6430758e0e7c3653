#include "mf/meijer.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <utility>

#include "mf/errors.hpp"

namespace mf {

std::string to_string(Contour c) {
  switch (c) {
    case Contour::Auto: return "auto";
    case Contour::L0: return "L0";
    case Contour::L1: return "L1";
    case Contour::L2: return "L2";
  }
  return "?";
}

Contour parse_contour(const std::string& s) {
  if (s == "auto") return Contour::Auto;
  if (s == "L0") return Contour::L0;
  if (s == "L1") return Contour::L1;
  if (s == "L2") return Contour::L2;
  throw std::invalid_argument("unknown contour '" + s + "' (auto|L0|L1|L2)");
}

std::string to_string(Condition c) {
  static const char* names[] = {"A1", "A2", "B1", "B2", "B3", "C1", "C2", "C3"};
  return names[static_cast<int>(c)];
}

std::string ConvergenceReport::labels() const {
  std::string out;
  for (auto c : holds) {
    if (!out.empty()) out += ",";
    out += to_string(c);
  }
  return out;
}

GParams::GParams(long m_, long n_, long p_, long q_, std::vector<BigRational> a_, std::vector<BigRational> b_)
    : m(m_), n(n_), p(p_), q(q_), a(std::move(a_)), b(std::move(b_)) {
  if (p < 0 || q < 0) throw ValidationError("p and q must be non-negative");
  if (m < 0 || m > q) throw ValidationError("need 0 <= m <= q");
  if (n < 0 || n > p) throw ValidationError("need 0 <= n <= p");
  if (static_cast<long>(a.size()) != p) {
    throw ValidationError("a-list has " + std::to_string(a.size()) + " entries, p = " + std::to_string(p));
  }
  if (static_cast<long>(b.size()) != q) {
    throw ValidationError("b-list has " + std::to_string(b.size()) + " entries, q = " + std::to_string(q));
  }
  for (long j = 0; j < n; ++j) {
    for (long k = 0; k < m; ++k) {
      BigRational d = a[static_cast<std::size_t>(j)] - b[static_cast<std::size_t>(k)];
      if (d.is_integer() && d.sign() > 0) {
        throw ValidationError("a_" + std::to_string(j + 1) + " - b_" + std::to_string(k + 1) + " = " + d.str() +
                              " is a positive integer: a pole of Gamma(b_k - s) coincides with a pole of "
                              "Gamma(1 - a_j + s)");
      }
    }
  }
}

BigRational GParams::delta_star() const {
  BigRational s;
  for (const auto& v : b) s += v;
  for (const auto& v : a) s -= v;
  return s;
}

GParams aux_params(long nu, long delta, long m) {
  if (m != 1 && m != 4 && m != 5 && m != 6) throw std::invalid_argument("aux_params: m must be 1, 4, 5 or 6");
  RParams rp(nu, delta);
  std::vector<BigRational> a(3, BigRational(-nu * rp.d1()));
  a.insert(a.end(), 3, BigRational(1 + nu * rp.d2()));
  std::vector<BigRational> b(3, BigRational(0));
  b.insert(b.end(), 3, BigRational(nu));
  return {m, 3, 6, 6, std::move(a), std::move(b)};
}

// ---------------------------------------------------------------------------
// Classification

ConvergenceReport classify(const GParams& g, const OmegaPoint& z) {
  ConvergenceReport r;
  r.delta_star = g.delta_star();
  const Bits prec = std::max<Bits>(z.prec(), 64);
  const BigRational coef = BigRational(g.m + g.n) - BigRational(g.p + g.q, 2);
  const Real bound = Real(coef, prec) * Real::pi(prec);
  const Real abs_arg = abs(z.arg());
  const Real mod2 = norm(z.value());
  const Real one(1L, prec);

  if (coef.sign() > 0 && abs_arg < bound) r.holds.insert(Condition::A1);
  if (coef.sign() >= 0 && abs_arg <= bound && BigRational(g.p - g.q, 2) + r.delta_star < BigRational(-1)) {
    r.holds.insert(Condition::A2);
  }
  if (g.p < g.q) r.holds.insert(Condition::B1);
  if (1 <= g.p && g.p <= g.q) {
    if (mod2 < one) r.holds.insert(Condition::B2);
    if (mod2 <= one && r.delta_star < BigRational(-1)) r.holds.insert(Condition::B3);
  }
  if (g.q < g.p) r.holds.insert(Condition::C1);
  if (1 <= g.q && g.q <= g.p) {
    if (mod2 > one) r.holds.insert(Condition::C2);
    if (mod2 >= one && r.delta_star < BigRational(-1)) r.holds.insert(Condition::C3);
  }
  r.notes = "arg bound (m+n-p/2-q/2)pi with m+n-p/2-q/2 = " + coef.str() + "; delta* = " + r.delta_star.str();
  return r;
}

ConvergenceReport classify(const GParams& params, const APComplex& z) { return classify(params, omega_normalize(z)); }

// ---------------------------------------------------------------------------
// Integrand structure: prod Gamma(c + sigma s)^e times z^s

namespace {

struct Factor {
  int sigma;
  BigRational c;
  int e;
};

std::vector<Factor> integrand_factors(const GParams& g) {
  std::map<std::pair<int, BigRational>, int> acc;
  for (long k = 0; k < g.q; ++k) {
    const auto& bk = g.b[static_cast<std::size_t>(k)];
    if (k < g.m) {
      acc[{-1, bk}] += 1;
    } else {
      acc[{1, BigRational(1) - bk}] -= 1;
    }
  }
  for (long j = 0; j < g.p; ++j) {
    const auto& aj = g.a[static_cast<std::size_t>(j)];
    if (j < g.n) {
      acc[{1, BigRational(1) - aj}] += 1;
    } else {
      acc[{-1, aj}] -= 1;
    }
  }
  std::vector<Factor> out;
  for (auto& [key, e] : acc) {
    if (e != 0) out.push_back({key.first, key.second, e});
  }
  return out;
}

BigRational factor_arg(const Factor& f, const BigRational& s) { return f.sigma > 0 ? f.c + s : f.c - s; }

bool singular(const Factor& f, const BigRational& s) {
  BigRational x = factor_arg(f, s);
  return x.is_integer() && x.sign() <= 0;
}

int order_at(const std::vector<Factor>& fs, const BigRational& s) {
  int o = 0;
  for (const auto& f : fs) {
    if (singular(f, s)) o += f.e;
  }
  return o;
}

// Distance from s0 to the nearest other pole point, capped at 2. With true_only,
// points where the combined order is <= 0 are ignored.
BigRational nearest_distance(const std::vector<Factor>& fs, const BigRational& s0, bool true_only) {
  BigRational best(2);
  for (const auto& f : fs) {
    // Pole points of this factor: s = c + j (sigma = -1) or s = -c - j (sigma = +1), j >= 0.
    BigRational base = f.sigma < 0 ? f.c : -f.c;
    BigRational off = f.sigma < 0 ? s0 - base : base - s0;  // j - off is the signed gap
    BigInt jlo = (off - BigRational(2)).floor();
    BigInt jhi = (off + BigRational(2)).ceil();
    if (jlo < 0) jlo = 0;
    for (BigInt j = jlo; j <= jhi; ++j) {
      BigRational pt = f.sigma < 0 ? base + BigRational(j) : base - BigRational(j);
      if (pt == s0) continue;
      BigRational d = (pt - s0).abs();
      if (d >= best) continue;
      if (true_only && order_at(fs, pt) < 1) continue;
      best = d;
    }
  }
  return best;
}

class ChainWalker {
 public:
  ChainWalker(const std::vector<Factor>& fs, int dir, BigRational start, BigRational threshold, int eventual,
              std::string family)
      : fs_(fs), dir_(dir), cur_(std::move(start)), threshold_(std::move(threshold)), eventual_(eventual),
        family_(std::move(family)) {}

  std::optional<PoleInfo> next() {
    while (!done_) {
      BigRational s = cur_;
      int ord = order_at(fs_, s);
      cur_ += BigRational(dir_);
      bool past = dir_ > 0 ? s > threshold_ : s < threshold_;
      if (past && eventual_ <= 0) done_ = true;
      if (ord >= 1) return PoleInfo{s, ord, family_, dir_ > 0 ? Contour::L1 : Contour::L2};
    }
    return std::nullopt;
  }

 private:
  const std::vector<Factor>& fs_;
  int dir_;
  BigRational cur_;
  BigRational threshold_;
  int eventual_;
  std::string family_;
  bool done_ = false;
};

std::vector<ChainWalker> make_walkers(const std::vector<Factor>& fs, Contour contour) {
  if (contour != Contour::L1 && contour != Contour::L2) {
    throw ContourMismatch("pole enumeration needs contour L1 or L2, got " + to_string(contour));
  }
  const int dir = contour == Contour::L1 ? 1 : -1;
  const int fam_sigma = contour == Contour::L1 ? -1 : 1;
  auto pos = [](const Factor& f) { return f.sigma < 0 ? f.c : -f.c; };  // first pole point

  // Beyond this point no factor other than the family's own can switch on or off.
  std::optional<BigRational> threshold;
  for (const auto& f : fs) {
    BigRational t = pos(f);
    if (!threshold || (dir > 0 ? t > *threshold : t < *threshold)) threshold = t;
  }

  std::map<BigRational, std::pair<BigRational, int>> classes;  // residue mod 1 -> (start, eventual order)
  for (const auto& f : fs) {
    if (f.sigma != fam_sigma || f.e <= 0) continue;
    BigRational start = pos(f);
    BigRational cls = start.frac();
    auto it = classes.find(cls);
    if (it == classes.end()) {
      classes.emplace(cls, std::make_pair(start, 0));
    } else if (dir > 0 ? start < it->second.first : start > it->second.first) {
      it->second.first = start;
    }
  }
  for (auto& [cls, v] : classes) {
    for (const auto& f : fs) {
      if (f.sigma == fam_sigma && pos(f).frac() == cls) v.second += f.e;
    }
  }
  std::vector<ChainWalker> out;
  for (auto& [cls, v] : classes) {
    out.emplace_back(fs, dir, v.first, *threshold, v.second, contour == Contour::L1 ? "b" : "a");
  }
  return out;
}

// Walks every chain lazily and hands out poles in order of distance along the contour.
class PoleStream {
 public:
  PoleStream(const std::vector<Factor>& fs, Contour contour) : walkers_(make_walkers(fs, contour)), dir_(contour == Contour::L1 ? 1 : -1) {
    pending_.resize(walkers_.size());
    for (std::size_t i = 0; i < walkers_.size(); ++i) pending_[i] = walkers_[i].next();
  }

  // Returns the pole and the index of the chain it came from.
  std::optional<std::pair<PoleInfo, std::size_t>> next() {
    std::optional<std::size_t> pick;
    for (std::size_t i = 0; i < pending_.size(); ++i) {
      if (!pending_[i]) continue;
      if (!pick) {
        pick = i;
        continue;
      }
      const auto& a = pending_[i]->location;
      const auto& b = pending_[*pick]->location;
      if (dir_ > 0 ? a < b : a > b) pick = i;
    }
    if (!pick) return std::nullopt;
    PoleInfo out = *pending_[*pick];
    pending_[*pick] = walkers_[*pick].next();
    return std::make_pair(std::move(out), *pick);
  }

  [[nodiscard]] std::size_t chains() const { return walkers_.size(); }

 private:
  std::vector<ChainWalker> walkers_;
  std::vector<std::optional<PoleInfo>> pending_;
  int dir_;
};

APComplex with_prec(APComplex v, Bits p) {
  v.set_prec(std::max(p, v.prec()));
  return v;
}

APComplex gamma_pow(const APComplex& x, int e, Bits wp) {
  APComplex g = gamma(x, wp);
  APComplex r = pow(g, std::abs(e));
  if (e < 0) return APComplex(Real(1L, wp)) / r;
  return r;
}

// Integrand sampled on a circle; the node values can be moved by +-1 along a
// chain through the Gamma recurrence instead of being recomputed.
class CircleNodes {
 public:
  CircleNodes(const std::vector<Factor>& fs, const APComplex& logz, const APComplex& z, BigRational center,
              BigRational radius, long nodes, Bits wp)
      : fs_(fs), center_(std::move(center)), radius_(std::move(radius)), n_(nodes), wp_(wp) {
    z_ = with_prec(z, wp);
    zinv_ = APComplex(Real(1L, wp)) / z_;
    logz_ = with_prec(logz, wp);
    unit_.resize(static_cast<std::size_t>(n_));
    g_.resize(static_cast<std::size_t>(n_));
    x_.assign(static_cast<std::size_t>(n_), std::vector<APComplex>(fs_.size()));
    const Real two_pi = Real::pi(wp) * 2L;
    const Real r(radius_, wp);
    const Real c(center_, wp);
#pragma omp parallel for schedule(dynamic)
    for (long j = 0; j < n_; ++j) {
      Real th = two_pi * Real(j, wp) / Real(n_, wp);
      APComplex u(cos(th), sin(th));
      APComplex s = u * r;
      s.re() += c;
      APComplex g = exp(s * logz_);
      auto& xs = x_[static_cast<std::size_t>(j)];
      for (std::size_t f = 0; f < fs_.size(); ++f) {
        APComplex x = fs_[f].sigma > 0 ? s : -s;
        x.re() += Real(fs_[f].c, wp);
        g *= gamma_pow(x, fs_[f].e, wp);
        xs[f] = std::move(x);
      }
      unit_[static_cast<std::size_t>(j)] = std::move(u);
      g_[static_cast<std::size_t>(j)] = std::move(g);
    }
  }

  [[nodiscard]] const BigRational& center() const { return center_; }
  [[nodiscard]] const BigRational& radius() const { return radius_; }
  [[nodiscard]] long nodes() const { return n_; }
  [[nodiscard]] Bits prec() const { return wp_; }
  [[nodiscard]] long steps() const { return steps_; }

  // Moves the center by dir (+1 or -1).
  void step(int dir) {
    const APComplex& zp = dir > 0 ? z_ : zinv_;
#pragma omp parallel for schedule(static)
    for (long j = 0; j < n_; ++j) {
      auto& xs = x_[static_cast<std::size_t>(j)];
      APComplex num(Real(1L, wp_));
      APComplex den(Real(1L, wp_));
      for (std::size_t f = 0; f < fs_.size(); ++f) {
        const int sd = fs_[f].sigma * dir;
        const int e = fs_[f].e;
        APComplex& x = xs[f];
        if (sd > 0) {
          // Gamma(x + 1) = x Gamma(x)
          APComplex fac = pow(x, std::abs(e));
          (e > 0 ? num : den) *= fac;
          x.re() += Real(1L, wp_);
        } else {
          // Gamma(x - 1) = Gamma(x) / (x - 1)
          x.re() -= Real(1L, wp_);
          APComplex fac = pow(x, std::abs(e));
          (e > 0 ? den : num) *= fac;
        }
      }
      APComplex& g = g_[static_cast<std::size_t>(j)];
      g *= zp;
      g *= num;
      g /= den;
    }
    center_ += BigRational(dir);
    ++steps_;
  }

  // (r / N) sum_j g(s_j) e^(i theta_j), and log2(r max |g|).
  std::pair<APComplex, double> residue() const {
    APComplex acc(wp_);
    double scale = -std::numeric_limits<double>::infinity();
    for (long j = 0; j < n_; ++j) {
      const auto& g = g_[static_cast<std::size_t>(j)];
      acc += g * unit_[static_cast<std::size_t>(j)];
      scale = std::max(scale, abs(g).log2_abs());
    }
    const Real r(radius_, wp_);
    acc *= r;
    acc /= Real(n_, wp_);
    return {acc, scale + r.log2_abs()};
  }

 private:
  const std::vector<Factor>& fs_;
  BigRational center_;
  BigRational radius_;
  long n_;
  Bits wp_;
  APComplex z_, zinv_, logz_;
  std::vector<APComplex> unit_;
  std::vector<APComplex> g_;
  std::vector<std::vector<APComplex>> x_;
  long steps_ = 0;
};

BigRational auto_radius(const std::vector<Factor>& fs, const BigRational& s0) {
  BigRational half = nearest_distance(fs, s0, false) / BigRational(2);
  return std::min(BigRational(1, 4), half);
}

long node_count(const BigRational& radius, const BigRational& big_r, Bits wp, int order) {
  double ratio = 0.8 * big_r.to_double() / radius.to_double();
  long n = static_cast<long>(std::ceil(static_cast<double>(wp + 8) / std::log2(ratio))) + order + 2;
  if (n % 2) ++n;
  return n;
}

OmegaPoint at_prec(const OmegaPoint& z, Bits wp) {
  APComplex v = z.value();
  v.set_prec(std::max(wp, v.prec()));
  return omega_normalize(v);
}

double log2_sum(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double hi = std::max(a, b);
  return hi + std::log2(std::exp2(a - hi) + std::exp2(b - hi));
}

}  // namespace

std::vector<PoleInfo> enumerate_poles(const GParams& params, Contour contour, long limit) {
  auto fs = integrand_factors(params);
  PoleStream stream(fs, contour);
  std::vector<PoleInfo> out;
  while (static_cast<long>(out.size()) < limit) {
    auto p = stream.next();
    if (!p) break;
    out.push_back(std::move(p->first));
  }
  return out;
}

APComplex residue_at(const GParams& params, const OmegaPoint& z, const BigRational& s0, int order,
                     const PrecisionBudget& budget, std::optional<BigRational> radius) {
  auto fs = integrand_factors(params);
  const int actual = order_at(fs, s0);
  if (actual < 1) throw ValidationError("s0 = " + s0.str() + " is not a pole of the integrand");
  if (actual != order) {
    throw ValidationError("s0 = " + s0.str() + " is a pole of order " + std::to_string(actual) + ", not " +
                          std::to_string(order));
  }
  BigRational big_r = nearest_distance(fs, s0, true);
  BigRational r;
  if (radius) {
    if (radius->sign() <= 0) throw ValidationError("radius must be positive");
    if (BigRational(2) * *radius > big_r) {
      throw RadiusTooLarge("another singularity lies within 2r = " + (BigRational(2) * *radius).str() + " of s0");
    }
    r = *radius;
  } else {
    r = auto_radius(fs, s0);
    big_r = std::min(big_r, nearest_distance(fs, s0, false));
  }
  const Bits wp = budget.working_bits(16);
  const long n = node_count(r, big_r, wp, order);
  OmegaPoint zw = at_prec(z, wp);
  CircleNodes nodes(fs, log_omega(zw), zw.value(), s0, r, n, wp);
  APComplex res = nodes.residue().first;
  res.set_prec(budget.working_bits());
  return res;
}

// ---------------------------------------------------------------------------

namespace {

GResult residue_sum(const std::vector<Factor>& fs, const OmegaPoint& z, Contour contour,
                    const PrecisionBudget& budget, Bits extra) {
  const Bits wp = budget.working_bits(extra);
  const OmegaPoint zw = at_prec(z, wp);
  const APComplex logz = log_omega(zw);
  const double tol_log2 = -static_cast<double>(budget.target_bits) - 1.0;
  const long cap = std::min<long>(budget.max_terms, 20000);

  PoleStream stream(fs, contour);
  std::vector<std::optional<CircleNodes>> circles(stream.chains());
  std::vector<double> mags;
  APComplex sum(wp);
  double scale = -std::numeric_limits<double>::infinity();
  long max_steps = 0;
  long terms = 0;
  double tail_log2 = -std::numeric_limits<double>::infinity();

  while (auto next = stream.next()) {
    const PoleInfo& pole = next->first;
    auto& circ = circles[next->second];
    const BigRational r = auto_radius(fs, pole.location);
    const BigRational big_r = nearest_distance(fs, pole.location, false);
    const long n = node_count(r, big_r, wp, pole.order);
    const bool reuse = circ && circ->radius() == r && circ->nodes() == n;
    if (reuse) {
      BigRational gap = pole.location - circ->center();
      const int dir = gap.sign();
      for (BigInt k = gap.abs().floor(); k > 0; --k) circ->step(dir);
    } else {
      circ.emplace(fs, logz, zw.value(), pole.location, r, n, wp);
    }
    max_steps = std::max(max_steps, circ->steps());
    auto [res, sc] = circ->residue();
    scale = std::max(scale, sc);
    sum += res;
    ++terms;
    mags.push_back(abs(res).log2_abs());

    if (terms >= cap) throw BudgetExceeded("residue series did not converge within " + std::to_string(cap) + " poles");
    if (mags.size() >= 4) {
      double q = -std::numeric_limits<double>::infinity();
      for (std::size_t i = mags.size() - 3; i < mags.size(); ++i) q = std::max(q, mags[i] - mags[i - 1]);
      if (q < -1e-9) {
        double qq = std::exp2(q);
        double tail = mags.back() + q - std::log2(1.0 - qq);
        if (tail < tol_log2) {
          tail_log2 = tail;
          break;
        }
      } else if (std::isnan(q)) {
        // consecutive exact zeros
        continue;
      }
    }
  }
  if (contour == Contour::L1) sum = -sum;

  GResult out;
  out.value = std::move(sum);
  out.terms = terms;
  out.contour = contour;
  // Per-node rounding grows with the recurrence depth and the node count.
  double rounding = scale - static_cast<double>(wp) + std::log2(static_cast<double>(terms + 1)) +
                    std::log2(static_cast<double>(max_steps + 2)) + 4.0;
  out.error_log2 = log2_sum(tail_log2, rounding);
  return out;
}

GResult vertical_quadrature(const std::vector<Factor>& fs, const OmegaPoint& z, const ConvergenceReport& report,
                            const PrecisionBudget& budget) {
  if (!report.has(Condition::A1)) {
    throw BudgetExceeded("L0 quadrature needs exponential decay along the line (condition A1)");
  }
  std::optional<BigRational> hi, lo;  // leftmost b-family pole, rightmost a-family pole
  for (const auto& f : fs) {
    if (f.e <= 0) continue;
    if (f.sigma < 0) {
      if (!hi || f.c < *hi) hi = f.c;
    } else {
      BigRational pt = -f.c;
      if (!lo || pt > *lo) lo = pt;
    }
  }
  if (hi && lo && !(*lo < *hi)) {
    throw PoleFamiliesNotSeparable("a-family pole at " + lo->str() + " is not left of b-family pole at " + hi->str());
  }
  BigRational sigma, dist;
  if (hi && lo) {
    sigma = (*hi + *lo) / BigRational(2);
    dist = (*hi - *lo) / BigRational(2);
  } else if (hi) {
    sigma = *hi - BigRational(1, 2);
    dist = BigRational(1, 2);
  } else if (lo) {
    sigma = *lo + BigRational(1, 2);
    dist = BigRational(1, 2);
  } else {
    sigma = 0;
    dist = 1;
  }
  // Keep the real node off the zero set of the reciprocal factors.
  for (int tries = 0; tries < 8 && order_at(fs, sigma) != 0; ++tries) {
    dist /= BigRational(2);
    sigma += dist;
  }
  for (const auto& f : fs) {
    if (singular(f, sigma)) {
      sigma += dist / BigRational(2);
      dist /= BigRational(2);
      break;
    }
  }

  const long target = budget.target_bits;
  const Bits wp = budget.working_bits(16);
  const OmegaPoint zw = at_prec(z, wp);
  const APComplex logz = log_omega(zw);
  const Real sig(sigma, wp);
  const double h_final = 2.0 * std::numbers::pi * dist.to_double() / (static_cast<double>(wp + 8) * std::log(2.0));
  const int levels = 4;
  const Real h_fine(h_final, wp);  // exact; nodes are integer multiples of it
  const double small_log2 = -static_cast<double>(budget.working_bits());
  const long cap = std::min<long>(budget.max_terms, 400000);

  auto g_at = [&](const Real& y) {
    APComplex s(sig, y);
    APComplex g = exp(s * logz);
    for (const auto& f : fs) {
      APComplex x = f.sigma > 0 ? s : -s;
      x.re() += Real(f.c, wp);
      g *= gamma_pow(x, f.e, wp);
    }
    return g;
  };

  long used = 0;
  // Sum of g at y = +-(first + k * stride) * h_fine for k >= 0; y = 0 is counted once.
  auto sweep = [&](long first, long stride) {
    APComplex acc(wp);
    const long batch = 32;
    for (int side : {1, -1}) {
      long quiet = 0;
      long k0 = (side < 0 && first == 0) ? 1 : 0;
      for (long base = k0; quiet < 6; base += batch) {
        std::vector<APComplex> vals(static_cast<std::size_t>(batch));
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < batch; ++i) {
          const long mult = side * (first + (base + i) * stride);
          vals[static_cast<std::size_t>(i)] = g_at(h_fine * Real(mult, wp));
        }
        for (long i = 0; i < batch && quiet < 6; ++i) {
          const auto& v = vals[static_cast<std::size_t>(i)];
          acc += v;
          double y = static_cast<double>(first + (base + i) * stride) * h_final;
          if (abs(v).log2_abs() < small_log2 && y > 2.0) {
            ++quiet;
          } else {
            quiet = 0;
          }
        }
        used += batch;
        if (used > cap) throw BudgetExceeded("L0 quadrature exceeded " + std::to_string(cap) + " nodes");
      }
    }
    return acc;
  };

  long stride = 1L << (levels - 1);
  APComplex raw = sweep(0, stride);
  APComplex prev = raw * h_fine * Real(stride, wp);
  APComplex cur = prev;
  for (int level = 1; level < levels; ++level) {
    raw += sweep(stride / 2, stride);
    stride /= 2;
    prev = cur;
    cur = raw * h_fine * Real(stride, wp);
  }
  const Real two_pi = Real::pi(wp) * 2L;
  APComplex value = cur / two_pi;
  APComplex diff = (cur - prev) / two_pi;

  GResult out;
  out.value = std::move(value);
  out.terms = used;
  out.contour = Contour::L0;
  double d = abs(diff).log2_abs();
  double mag = std::max(0.0, abs(out.value).log2_abs());
  out.error_log2 = std::max(-static_cast<double>(target + budget.guard_bits / 2), 2 * d - mag);
  return out;
}

}  // namespace

GResult eval_G(const GParams& params, const OmegaPoint& z, Contour contour, const PrecisionBudget& budget) {
  ConvergenceReport report = classify(params, z);
  Contour use = contour;
  if (use == Contour::Auto) {
    if (report.any_b()) {
      use = Contour::L1;
    } else if (report.any_c()) {
      use = Contour::L2;
    } else if (report.any_a()) {
      use = Contour::L0;
    } else {
      throw NoConvergentContour("no convergence condition holds (delta* = " + report.delta_star.str() + ")");
    }
  } else if ((use == Contour::L1 && !report.any_b()) || (use == Contour::L2 && !report.any_c()) ||
             (use == Contour::L0 && !report.any_a())) {
    throw NoConvergentContour("contour " + to_string(use) + " is not justified here; conditions holding: {" +
                              report.labels() + "}");
  }

  auto fs = integrand_factors(params);
  GResult out;
  if (use == Contour::L0) {
    out = vertical_quadrature(fs, z, report, budget);
  } else {
    Bits extra = 16;
    for (int attempt = 0;; ++attempt) {
      out = residue_sum(fs, z, use, budget, extra);
      double need = out.error_log2 + static_cast<double>(budget.target_bits) + 2.0;
      if (need <= 0 || attempt == 2) break;
      extra += static_cast<Bits>(std::ceil(need)) + 8;
    }
  }
  out.report = std::move(report);
  out.value.set_prec(budget.working_bits());
  return out;
}

}  // namespace mf
