// Acceptance run: one pass/fail line per criterion.

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "mf/auxfun.hpp"
#include "mf/cli.hpp"
#include "mf/coeff_tables.hpp"
#include "mf/linform.hpp"
#include "mf/meijer.hpp"

using namespace mf;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string l2(double e) {
  std::ostringstream s;
  s << "2^" << std::fixed << std::setprecision(1) << e;
  return s.str();
}

std::string pair_str(long nu, long delta) {
  return "(" + std::to_string(nu) + "," + std::to_string(delta) + ")";
}

double dev(const APComplex& a, const APComplex& b) { return abs(a - b).log2_abs(); }

const std::vector<std::pair<long, long>>& grid_3x2() {
  static const std::vector<std::pair<long, long>> g{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}, {3, 3}};
  return g;
}

Outcome partial_fractions() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> num(-80, 80), den(1, 15);
  long checked = 0;
  for (auto [nu, delta] : grid_3x2()) {
    const CoeffTable& t = coeff_table(nu, delta);
    int n = 0;
    while (n < 20) {
      BigRational x(BigInt(num(rng)), BigInt(den(rng)));
      if (x.is_integer() && x <= BigRational(0) && x >= BigRational(-nu * delta)) continue;
      BigRational r = r0_eval(x, nu, delta);
      if (r * r * r != partial_fraction_eval(t, x, 0)) return {false, "mismatch at " + pair_str(nu, delta) + " t=" + x.str()};
      ++n;
      ++checked;
    }
  }
  BigRational r1 = r0_eval(BigRational(1), 1, 2);
  BigRational lhs = r1 * r1 * r1;
  BigRational rhs = partial_fraction_eval(coeff_table(1, 2), BigRational(1), 0);
  bool pinned = lhs == BigRational(-1, 27) && rhs == BigRational(-1, 27);
  return {pinned, std::to_string(checked) + " random points exact; t=1: " + lhs.str() + " = " + rhs.str()};
}

Outcome gamma_sums() {
  for (auto [nu, delta] : grid_3x2()) {
    BigRational s;
    for (const auto& g : coeff_table(nu, delta).gamma) s += g;
    if (!s.is_zero()) return {false, "sum " + s.str() + " at " + pair_str(nu, delta)};
  }
  const auto& g = coeff_table(1, 2).gamma;
  bool pinned = g[0] == BigRational(-156) && g[1] == BigRational(720) && g[2] == BigRational(-564);
  return {pinned, "all sums 0; (1,2): " + g[0].str() + " + " + g[1].str() + " + " + g[2].str() + " = 0"};
}

Outcome alpha_polynomial() {
  for (auto [nu, delta] : grid_3x2()) {
    if (!(coeff_polys(coeff_table(nu, delta)).alpha == f1_star_poly(nu, delta))) {
      return {false, "differs at " + pair_str(nu, delta)};
    }
  }
  std::string s = coeff_polys(coeff_table(1, 2)).alpha.str();
  return {s == "8z - 216z^2 + 64z^3", "(1,2): " + s};
}

Outcome dual_path() {
  const PrecisionBudget b(256);
  double worst = -1e9;
  for (long nu = 1; nu <= 2; ++nu) {
    for (long delta = 2; delta <= 3; ++delta) {
      for (auto z : {BigRational(2), BigRational(10), BigRational(3, 2)}) {
        AuxSpec s(nu, delta, APComplex(z, BigRational(0), b.working_bits()), b);
        worst = std::max(worst, dev(f2_star(s, AuxPath::Series).value, f2_star(s, AuxPath::Closed).value));
        worst = std::max(worst, dev(f4_star(s, AuxPath::Series).value, f4_star(s, AuxPath::Closed).value));
        worst = std::max(worst, dev(f6_star(s, AuxPath::Series).value, f6_star(s, AuxPath::Closed).value));
      }
    }
  }
  return {worst <= -250, "max |series - closed| = " + l2(worst) + " (bound 2^-250)"};
}

Outcome f5_identity() {
  const PrecisionBudget b(256);
  AuxSpec s(1, 2, APComplex(BigRational(2), BigRational(0), b.working_bits()), b);
  APComplex f5 = f5_star(s, AuxPath::Series).value;
  APComplex f5v = f5_vee(s, AuxPath::Meijer).value;
  APComplex f3 = f3_star(s, AuxPath::Meijer).value;
  double d = dev(f5, f5v + mul_i(f3 * Real::pi(b.working_bits())));
  return {d <= -248, "|f5 - f5v - i pi f3| = " + l2(d) + " (bound 2^-248)"};
}

Outcome meijer_crosscheck() {
  const PrecisionBudget b(256);
  const Bits wp = b.working_bits();
  // f1* = C^3 (-1)^(nu (Delta + 1)) G^(1,3)(z), C = 2 at (1,2)
  GResult g1 = eval_G(aux_params(1, 2, 1), omega_normalize(APComplex(BigRational(1, 2), BigRational(0), wp)),
                      Contour::Auto, b);
  APComplex f1 = g1.value * Real(-8L, wp);
  double d1 = dev(f1, APComplex(Real(f1_star(1, 2, BigRational(1, 2)), wp)));
  // f2* = -C^3 (-1)^(nu Delta) G^(4,3)(-z)
  GResult g2 = eval_G(aux_params(1, 2, 4), omega_normalize(APComplex(BigRational(-2), BigRational(0), wp)),
                      Contour::Auto, b);
  APComplex f2 = g2.value * Real(-8L, wp);
  SeriesTriple s = series_f246(1, 2, APComplex(BigRational(2), BigRational(0), wp), b);
  double d2 = dev(f2, s.f2);
  std::string orders;
  bool ok = true;
  const std::array<long, 4> ms{1, 4, 5, 6};
  const std::array<int, 4> want{1, 1, 2, 3};
  for (std::size_t i = 0; i < ms.size(); ++i) {
    int top = 0;
    for (const auto& p : enumerate_poles(aux_params(1, 2, ms[i]), ms[i] == 1 ? Contour::L1 : Contour::L2, 10)) {
      top = std::max(top, p.order);
    }
    ok = ok && top == want[i];
    orders += (orders.empty() ? "" : ",") + std::to_string(top);
  }
  return {d1 <= -240 && d2 <= -240 && ok,
          "f1 " + l2(d1) + ", f2 " + l2(d2) + " (bound 2^-240); pole orders (" + orders + ")"};
}

Outcome derivatives() {
  const CoeffTable& t = coeff_table(1, 2);
  auto cube = [](const BigRational& x) {
    BigRational r = r0_eval(x, 1, 2);
    return r * r * r;
  };
  std::string detail;
  bool ok = true;
  for (auto x : {BigRational(3), BigRational(7, 2)}) {
    const BigRational d1 = partial_fraction_eval(t, x, 1);
    const BigRational d2 = partial_fraction_eval(t, x, 2);
    const BigRational f0 = cube(x);
    std::vector<double> e1, e2;
    for (long j = 6; j <= 10; ++j) {
      BigRational h(BigInt(1), BigInt(1L << j));
      BigRational fp = cube(x + h), fm = cube(x - h);
      e1.push_back(Real(((fp - fm) / (BigRational(2) * h) - d1).abs(), 64).to_double());
      e2.push_back(Real(((fp - BigRational(2) * f0 + fm) / (h * h) - d2).abs(), 64).to_double());
    }
    double r1 = e1[e1.size() - 2] / e1.back();
    double r2 = e2[e2.size() - 2] / e2.back();
    bool good = std::abs(r1 - 4) < 0.2 && std::abs(r2 - 4) < 0.2;
    for (std::size_t k = 1; k < e1.size(); ++k) good = good && e1[k] < e1[k - 1] && e2[k] < e2[k - 1];
    ok = ok && good;
    std::ostringstream s;
    s << std::setprecision(4) << "t=" << x.str() << " ratios " << r1 << "," << r2 << "; ";
    detail += s.str();
  }
  return {ok, detail + "expected 4"};
}

Outcome zeta_at_one() {
  const PrecisionBudget b(104, 32, 60'000'000);
  auto forms = zeta_forms_at_one(1, 2);
  SeriesTriple s = series_f246(1, 2, APComplex(BigRational(1), BigRational(0), b.working_bits()), b);
  double worst = -1e9;
  worst = std::max(worst, abs(s.f2.re() - evaluate(forms[0], b)).log2_abs());
  worst = std::max(worst, abs(s.f4.re() - evaluate(forms[1], b)).log2_abs());
  worst = std::max(worst, abs(s.f6.re() - evaluate(forms[2], b)).log2_abs());
  bool zero2 = true;
  for (auto [nu, delta] : grid_3x2()) {
    auto f = zeta_forms_at_one(nu, delta);
    for (int i : {1, 2}) {
      auto it = f[static_cast<std::size_t>(i)].zeta_coeffs.find(2);
      if (it != f[static_cast<std::size_t>(i)].zeta_coeffs.end() && !it->second.is_zero()) zero2 = false;
    }
  }
  return {worst <= -100 && zero2, "max |series - zeta form| = " + l2(worst) + " over " + std::to_string(s.terms) +
                                      " terms; zeta(2) coefficients of f4, f6 " + (zero2 ? "0" : "nonzero")};
}

Outcome theorem_scan() {
  ScanResult a = scan(50, kDefaultGamma, PrecisionBudget(256));
  ScanResult c = scan(50, kDefaultGamma, PrecisionBudget(512));
  double drift = abs(a.min_c - c.min_c).log2_abs();
  bool stable = a.argmin == c.argmin && drift < -248;

  std::ostringstream out, err;
  int code = run_cli({"scan", "--max-height", "1", "--gamma", "0", "--output", "json"}, out, err);
  const PrecisionBudget b(256);
  ZetaTriple z(b);
  Real direct = Real::inf();
  for (auto [x1, x2] : {std::pair{1L, 0L}, {-1L, 0L}, {0L, 1L}, {0L, -1L}}) {
    Real v = dist_to_int(phi(1, x1, x2, z)) + dist_to_int(phi(2, x1, x2, z));
    if (v < direct) direct = v;
  }
  double cli_dev = 0;
  if (code == 0) {
    auto j = nlohmann::json::parse(out.str());
    cli_dev = abs(Real::parse(j["result"]["min_c"].get<std::string>(), 300) - direct).log2_abs();
  }
  bool ok = a.min_c.sign() > 0 && stable && code == 0 && cli_dev < -120;
  std::ostringstream s;
  s << "N=50 min_c=" << a.min_c.str(12) << " at (" << a.argmin.first << "," << a.argmin.second
    << "), drift under doubling " << l2(drift) << "; cli N=1 gamma=0 vs four-point " << l2(cli_dev);
  return {ok, s.str()};
}

Outcome contour_ab() {
  const PrecisionBudget b(128);
  GParams g(1, 1, 1, 1, {BigRational(-1, 2)}, {BigRational(0)});
  OmegaPoint z = omega_normalize(APComplex(BigRational(1, 2), BigRational(0), b.working_bits()));
  ConvergenceReport r = classify(g, z);
  GResult l0 = eval_G(g, z, Contour::L0, b);
  GResult l1 = eval_G(g, z, Contour::L1, b);
  double d = dev(l0.value, l1.value);
  bool ok = r.has(Condition::A1) && r.has(Condition::B2) && d <= -64;
  return {ok, "labels " + r.labels() + ", |L0 - L1| = " + l2(d) + " with " + std::to_string(l0.terms) + " nodes"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"exact partial fractions", partial_fractions},
      {"gamma-sum vanishing", gamma_sums},
      {"alpha polynomial equals f1", alpha_polynomial},
      {"dual-path agreement", dual_path},
      {"f5 identity via Meijer residues", f5_identity},
      {"Meijer cross-check and pole orders", meijer_crosscheck},
      {"derivative checks", derivatives},
      {"zeta forms at z = 1", zeta_at_one},
      {"theorem scan", theorem_scan},
      {"A/B contour agreement", contour_ab},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << "criterion " << std::setw(2) << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  "
              << criteria[i].first << " [" << std::fixed << std::setprecision(2) << secs << " s]  " << o.detail
              << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
