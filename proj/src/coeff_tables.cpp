#include "mf/coeff_tables.hpp"

#include "mf/errors.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace mf {

RatPoly::RatPoly(std::vector<BigRational> coeffs) : c_(std::move(coeffs)) { trim(); }

RatPoly RatPoly::monomial(const BigRational& c, long k) {
  if (k < 0) throw std::invalid_argument("RatPoly::monomial: negative degree");
  std::vector<BigRational> v(static_cast<std::size_t>(k + 1));
  v.back() = c;
  return RatPoly(std::move(v));
}

void RatPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

long RatPoly::low_degree() const {
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (!c_[k].is_zero()) return static_cast<long>(k);
  }
  return -1;
}

BigRational RatPoly::coeff(long k) const {
  if (k < 0 || k > degree()) return {};
  return c_[static_cast<std::size_t>(k)];
}

BigRational RatPoly::eval(const BigRational& z) const {
  BigRational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

APComplex RatPoly::eval(const APComplex& z) const {
  const Bits p = z.prec();
  APComplex acc(p);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= z;
    acc.re() += Real(*it, p);
  }
  return acc;
}

double RatPoly::log2_abs_bound(double abs_z) const {
  const double lz = std::log2(abs_z);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    double l = Real(c_[k], 64).log2_abs() + static_cast<double>(k) * lz;
    logs.push_back(l);
    best = std::max(best, l);
  }
  if (logs.empty()) return best;
  double s = 0;
  for (double l : logs) s += std::exp2(l - best);
  return best + std::log2(s);
}

std::string RatPoly::str() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const BigRational& c = c_[k];
    if (c.is_zero()) continue;
    BigRational mag = c.abs();
    if (out.empty()) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    std::string m = mag.is_integer() ? mag.str() : "(" + mag.str() + ")";
    if (k == 0) {
      out += m;
      continue;
    }
    if (mag != BigRational(1)) out += m;
    out += "z";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

RatPoly& RatPoly::operator+=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

RatPoly& RatPoly::operator-=(const RatPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const RatPoly& o) {
  if (c_.empty() || o.c_.empty()) {
    c_.clear();
    return *this;
  }
  std::vector<BigRational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  c_ = std::move(r);
  trim();
  return *this;
}

RatPoly& RatPoly::operator*=(const BigRational& s) {
  for (auto& c : c_) c *= s;
  trim();
  return *this;
}

// ---------------------------------------------------------------------------

namespace {

BigRational sign_pow(long e) { return (e % 2 == 0) ? BigRational(1) : BigRational(-1); }

CoeffTable build_table(long nu, long delta) {
  RParams rp(nu, delta);
  const long top = rp.top();
  const long low = nu * rp.d1();
  CoeffTable t;
  t.nu = nu;
  t.delta = delta;
  t.alpha.reserve(static_cast<std::size_t>(top + 1));
  for (long k = 0; k <= top; ++k) {
    BigInt c1 = binomial(top, k);
    BigInt c2 = binomial(top + k, low);
    BigRational a = sign_pow(nu + top + k) * BigRational(BigInt(c1 * c1 * c1 * c2 * c2 * c2));

    // First and second logarithmic derivatives of (t + k) R0(t) at t = -k.
    BigRational l1 = -harmonic_sum({1, nu + k + 1, top + k}) - harmonic_sum({1, 1, top - k}) +
                     harmonic_sum({1, 1, k});
    BigRational l2 = -harmonic_sum({2, nu + k + 1, top + k}) + harmonic_sum({2, 1, top - k}) +
                     harmonic_sum({2, 1, k});
    BigRational b = BigRational(3) * a * l1;
    BigRational g = a * (BigRational(9) * l1 * l1 + BigRational(3) * l2) / BigRational(2);
    t.alpha.push_back(std::move(a));
    t.beta.push_back(std::move(b));
    t.gamma.push_back(std::move(g));
  }
  return t;
}

}  // namespace

const CoeffTable& coeff_table(long nu, long delta) {
  static std::mutex mu;
  static std::map<std::pair<long, long>, CoeffTable> cache;
  RParams check(nu, delta);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find({nu, delta}); it != cache.end()) return it->second;
  }
  CoeffTable built = build_table(nu, delta);
  std::lock_guard lock(mu);
  return cache.try_emplace({nu, delta}, std::move(built)).first->second;
}

RatPoly f1_star_poly(long nu, long delta) {
  RParams rp(nu, delta);
  const long top = rp.top();
  const long low = nu * rp.d1();
  std::vector<BigRational> c(static_cast<std::size_t>(nu + top + 1));
  for (long k = 0; k <= top; ++k) {
    BigInt c1 = binomial(top, k);
    BigInt c2 = binomial(top + k, low);
    c[static_cast<std::size_t>(nu + k)] = sign_pow(top + k) * BigRational(BigInt(c1 * c1 * c1 * c2 * c2 * c2));
  }
  return RatPoly(std::move(c));
}

CoeffPolys coeff_polys(const CoeffTable& table) {
  auto lift = [&](const std::vector<BigRational>& v) {
    std::vector<BigRational> c(static_cast<std::size_t>(table.nu) + v.size());
    BigRational s = sign_pow(table.nu);
    for (std::size_t k = 0; k < v.size(); ++k) c[static_cast<std::size_t>(table.nu) + k] = s * v[k];
    return RatPoly(std::move(c));
  };
  return {lift(table.alpha), lift(table.beta), lift(table.gamma)};
}

TailPolys tail_polys(const CoeffTable& table) {
  const long nu = table.nu;
  const long top = static_cast<long>(table.alpha.size()) - 1;
  const std::size_t len = static_cast<std::size_t>(nu + top);
  std::vector<BigRational> phi(len), psi(len), xi(len);
  for (long k = 0; k <= top; ++k) {
    const auto& a = table.alpha[static_cast<std::size_t>(k)];
    const auto& b = table.beta[static_cast<std::size_t>(k)];
    const auto& g = table.gamma[static_cast<std::size_t>(k)];
    for (long t = 1; t <= k + nu; ++t) {
      BigRational i1(BigInt(1), BigInt(t));
      BigRational i2 = i1 * i1;
      BigRational i3 = i2 * i1;
      BigRational i4 = i3 * i1;
      BigRational i5 = i4 * i1;
      auto e = static_cast<std::size_t>(nu + k - t);
      phi[e] += a * i3 + b * i2 + g * i1;
      psi[e] += BigRational(3) * a * i4 + BigRational(2) * b * i3 + g * i2;
      xi[e] += BigRational(6) * a * i5 + BigRational(3) * b * i4 + g * i3;
    }
  }
  BigRational s = sign_pow(nu);
  return {RatPoly(std::move(phi)) * s, RatPoly(std::move(psi)) * s, RatPoly(std::move(xi)) * s};
}

BigRational partial_fraction_eval(const CoeffTable& table, const BigRational& t, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("partial_fraction_eval: order must be 0, 1 or 2");
  BigRational acc;
  for (std::size_t k = 0; k < table.alpha.size(); ++k) {
    BigRational u = t + BigRational(static_cast<long>(k));
    if (u.is_zero()) throw PoleError("partial_fraction_eval: t = " + t.str() + " is a pole");
    BigRational v = BigRational(1) / u;
    BigRational v2 = v * v;
    BigRational v3 = v2 * v;
    const auto& a = table.alpha[k];
    const auto& b = table.beta[k];
    const auto& g = table.gamma[k];
    switch (order) {
      case 0:
        acc += a * v3 + b * v2 + g * v;
        break;
      case 1:
        acc -= BigRational(3) * a * v3 * v + BigRational(2) * b * v3 + g * v2;
        break;
      default:
        acc += BigRational(12) * a * v3 * v2 + BigRational(6) * b * v3 * v + BigRational(2) * g * v3;
        break;
    }
  }
  return acc;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const BigRational& r) {
  return {{"num", r.num().get_str()}, {"den", r.den().get_str()}};
}

BigRational rational_from_json(const nlohmann::json& j) {
  return {BigInt(j.at("num").get<std::string>(), 10), BigInt(j.at("den").get<std::string>(), 10)};
}

nlohmann::json to_json(const RatPoly& p) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : p.coeffs()) arr.push_back(to_json(c));
  return arr;
}

RatPoly ratpoly_from_json(const nlohmann::json& j) {
  std::vector<BigRational> c;
  for (const auto& e : j) c.push_back(rational_from_json(e));
  return RatPoly(std::move(c));
}

nlohmann::json to_json(const CoeffTable& t) {
  auto vec = [](const std::vector<BigRational>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : v) a.push_back(to_json(r));
    return a;
  };
  return {{"nu", t.nu}, {"delta", t.delta}, {"alpha", vec(t.alpha)}, {"beta", vec(t.beta)}, {"gamma", vec(t.gamma)}};
}

CoeffTable coeff_table_from_json(const nlohmann::json& j) {
  auto vec = [](const nlohmann::json& a) {
    std::vector<BigRational> v;
    for (const auto& e : a) v.push_back(rational_from_json(e));
    return v;
  };
  CoeffTable t;
  t.nu = j.at("nu").get<long>();
  t.delta = j.at("delta").get<long>();
  t.alpha = vec(j.at("alpha"));
  t.beta = vec(j.at("beta"));
  t.gamma = vec(j.at("gamma"));
  return t;
}

}  // namespace mf
