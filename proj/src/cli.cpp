#include "mf/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

#include "mf/auxfun.hpp"
#include "mf/coeff_tables.hpp"
#include "mf/errors.hpp"
#include "mf/linform.hpp"
#include "mf/meijer.hpp"

namespace mf {

using nlohmann::json;

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ValidationError*>(&e) || dynamic_cast<const std::invalid_argument*>(&e)) {
    return exit_code::usage;
  }
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const PoleError*>(&e)) return exit_code::domain;
  if (dynamic_cast<const NoConvergentContour*>(&e) || dynamic_cast<const ContourMismatch*>(&e)) {
    return exit_code::no_contour;
  }
  if (dynamic_cast<const PrecisionTooLow*>(&e)) return exit_code::precision;
  if (dynamic_cast<const AssertionError*>(&e)) return exit_code::verify_failed;
  return exit_code::budget;
}

namespace {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string command;
  json params = json::object();
  json result = json::object();
  json error_bound = nullptr;
  std::vector<Check> checks;

  [[nodiscard]] bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
  }
};

std::string fmt_log2(double e) {
  if (std::isinf(e)) return e < 0 ? "0" : "inf";
  std::ostringstream s;
  s << "2^" << std::fixed << std::setprecision(2) << e;
  return s.str();
}

json bound_json(double log2) {
  if (std::isinf(log2) && log2 < 0) return json{{"log2", nullptr}, {"text", "0"}};
  return json{{"log2", log2}, {"text", fmt_log2(log2)}};
}

json complex_json(const APComplex& z) {
  return {{"re", z.re().str()}, {"im", z.im().str()}, {"prec_bits", static_cast<long>(z.prec())}};
}

json poly_json(const RatPoly& p) { return {{"coeffs", to_json(p)}, {"text", p.str()}}; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

struct ExactComplex {
  BigRational re;
  BigRational im;
};

ExactComplex parse_complex(const std::string& text) {
  auto parts = split(text, ',');
  if (parts.empty() || parts.size() > 2) throw std::invalid_argument("complex literal must be 're' or 're,im': " + text);
  ExactComplex z;
  z.re = BigRational::parse(trim(parts[0]));
  if (parts.size() == 2) z.im = BigRational::parse(trim(parts[1]));
  return z;
}

std::vector<BigRational> parse_list(const std::string& text) {
  std::vector<BigRational> v;
  if (trim(text).empty()) return v;
  for (const auto& p : split(text, ',')) v.push_back(BigRational::parse(trim(p)));
  return v;
}

std::pair<long, long> parse_range(const std::string& text) {
  auto pos = text.find("..");
  try {
    if (pos == std::string::npos) {
      long v = std::stol(text);
      return {v, v};
    }
    long lo = std::stol(text.substr(0, pos));
    long hi = std::stol(text.substr(pos + 2));
    if (hi < lo) throw std::invalid_argument("empty range " + text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("malformed range '" + text + "', expected 'a' or 'a..b'");
  }
}

PrecisionBudget budget_of(const CliConfig& cfg) { return {cfg.precision_bits, 32, cfg.max_terms}; }

// ---------------------------------------------------------------------------
// Rendering

bool is_complex(const json& j) { return j.is_object() && j.contains("re") && j.contains("im"); }
bool is_rational(const json& j) { return j.is_object() && j.size() == 2 && j.contains("num") && j.contains("den"); }

std::string scalar_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "-";
  if (is_complex(j)) {
    std::string re = j.at("re").get<std::string>();
    std::string im = j.at("im").get<std::string>();
    if (im == "0" || im == "0.0" || im.find_first_not_of("0.e+-") == std::string::npos) return re;
    if (im.front() == '-') return re + " - " + im.substr(1) + "i";
    return re + " + " + im + "i";
  }
  if (is_rational(j)) {
    std::string den = j.at("den").get<std::string>();
    return den == "1" ? j.at("num").get<std::string>() : j.at("num").get<std::string>() + "/" + den;
  }
  return j.dump();
}

void flatten(const std::string& prefix, const json& j, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object() && !is_complex(j) && !is_rational(j)) {
    for (const auto& [k, v] : j.items()) flatten(prefix.empty() ? k : prefix + "." + k, v, rows);
    return;
  }
  if (j.is_array()) {
    std::string s;
    for (const auto& e : j) s += (s.empty() ? "" : ", ") + scalar_text(e);
    rows.emplace_back(prefix, "[" + s + "]");
    return;
  }
  rows.emplace_back(prefix, scalar_text(j));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void render(const Report& r, const CliConfig& cfg, std::ostream& out) {
  if (cfg.output == OutputFormat::Json) {
    json checks = json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"name", c.name}, {"status", c.pass ? "pass" : "fail"}, {"detail", c.detail}});
    }
    json doc{{"command", r.command},
             {"params", r.params},
             {"result", r.result},
             {"error_bound", r.error_bound},
             {"checks", checks}};
    out << doc.dump(2) << "\n";
    return;
  }
  if (cfg.output == OutputFormat::Csv) {
    if (r.command == "coeffs") {
      out << "k,alpha,beta,gamma\n";
      const auto& a = r.result.at("alpha");
      for (std::size_t k = 0; k < a.size(); ++k) {
        out << k << "," << csv_field(a[k].get<std::string>()) << ","
            << csv_field(r.result.at("beta")[k].get<std::string>()) << ","
            << csv_field(r.result.at("gamma")[k].get<std::string>()) << "\n";
      }
      return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten("", r.result, rows);
    if (!r.error_bound.is_null()) flatten("error_bound", r.error_bound, rows);
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_field(k) << "," << csv_field(v) << "\n";
    for (const auto& c : r.checks) {
      out << csv_field("check." + c.name) << "," << (c.pass ? "pass" : "fail") << "\n";
    }
    return;
  }
  out << r.command;
  for (const auto& [k, v] : r.params.items()) out << " " << k << "=" << scalar_text(v);
  out << "\n";
  std::vector<std::pair<std::string, std::string>> rows;
  flatten("", r.result, rows);
  for (const auto& [k, v] : rows) out << "  " << k << ": " << v << "\n";
  if (!r.error_bound.is_null()) out << "  error bound: " << r.error_bound.value("text", "-") << "\n";
  for (const auto& c : r.checks) {
    out << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// coeffs

Report cmd_coeffs(long nu, long delta) {
  RParams rp(nu, delta);
  const CoeffTable& t = coeff_table(nu, delta);
  Report r;
  r.command = "coeffs";
  r.params = {{"nu", nu}, {"delta", delta}};
  auto strings = [](const std::vector<BigRational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
  };
  r.result["alpha"] = strings(t.alpha);
  r.result["beta"] = strings(t.beta);
  r.result["gamma"] = strings(t.gamma);
  r.result["table"] = to_json(t);
  r.result["scale"] = rp.scale().get_str();
  const RatPoly f1 = f1_star_poly(nu, delta);
  const CoeffPolys cp = coeff_polys(t);
  const TailPolys tp = tail_polys(t);
  r.result["polynomials"] = {{"f1_star", poly_json(f1)},     {"alpha_star", poly_json(cp.alpha)},
                             {"beta_star", poly_json(cp.beta)}, {"gamma_star", poly_json(cp.gamma)},
                             {"phi_star", poly_json(tp.phi)},   {"psi_star", poly_json(tp.psi)},
                             {"xi_star", poly_json(tp.xi)}};
  BigRational gsum;
  for (const auto& g : t.gamma) gsum += g;
  r.checks.push_back({"gamma-sum-zero", gsum.is_zero(), "sum = " + gsum.str()});
  r.checks.push_back({"alpha-star-equals-f1", cp.alpha == f1, cp.alpha.str()});
  return r;
}

// ---------------------------------------------------------------------------
// eval

enum class Which { F1, F2, F3, F4, F5, F6, F5Vee };

Which parse_which(const std::string& s) {
  static const std::map<std::string, Which> names{{"f1", Which::F1}, {"f2", Which::F2},      {"f3", Which::F3},
                                                  {"f4", Which::F4}, {"f5", Which::F5},      {"f6", Which::F6},
                                                  {"f5v", Which::F5Vee}, {"f5vee", Which::F5Vee}};
  auto it = names.find(s);
  if (it == names.end()) throw std::invalid_argument("unknown function '" + s + "'");
  return it->second;
}

AuxValue eval_one(Which w, const AuxSpec& spec, AuxPath path) {
  switch (w) {
    case Which::F1: return f1_star(spec, path);
    case Which::F2: return f2_star(spec, path);
    case Which::F3: return f3_star(spec, path);
    case Which::F4: return f4_star(spec, path);
    case Which::F5: return f5_star(spec, path);
    case Which::F6: return f6_star(spec, path);
    case Which::F5Vee: return f5_vee(spec, path);
  }
  throw std::logic_error("unknown function");
}

/// The second route used by --path both.
AuxPath partner_path(Which w) {
  switch (w) {
    case Which::F1:
    case Which::F3:
    case Which::F5Vee: return AuxPath::Meijer;
    default: return AuxPath::Closed;
  }
}

json aux_json(const AuxValue& v) {
  return {{"value", complex_json(v.value)}, {"error_log2", v.error_log2}, {"terms", v.terms}};
}

Report cmd_eval(const std::string& which_name, long nu, long delta, const std::string& z_text,
                const std::string& path_name, const CliConfig& cfg) {
  const Which w = parse_which(which_name);
  RParams rp(nu, delta);
  const ExactComplex zq = parse_complex(z_text);
  const PrecisionBudget budget = budget_of(cfg);
  Report r;
  r.command = "eval";
  std::string path = path_name.empty() ? (w == Which::F1 ? "closed" : "series") : path_name;
  r.params = {{"which", which_name}, {"nu", nu}, {"delta", delta}, {"z", z_text}, {"path", path}};
  r.result["function"] = which_name;

  if (w == Which::F1 && zq.im.is_zero() && (path == "closed" || path == "series")) {
    BigRational v = f1_star(nu, delta, zq.re);
    r.result["path"] = "polynomial";
    r.result["exact"] = to_json(v);
    r.result["exact_text"] = v.str();
    r.result["value"] = complex_json(APComplex(Real(v, budget.working_bits())));
    r.result["terms"] = 0;
    r.error_bound = bound_json(-std::numeric_limits<double>::infinity());
    return r;
  }

  const AuxSpec spec(nu, delta, APComplex(zq.re, zq.im, budget.working_bits()), budget);
  if (path != "both") {
    const AuxPath p = parse_aux_path(path);
    AuxValue v = eval_one(w, spec, p);
    r.result["path"] = path;
    r.result["value"] = complex_json(v.value);
    r.result["terms"] = v.terms;
    r.error_bound = bound_json(v.error_log2);
    return r;
  }
  const AuxPath p1 = w == Which::F1 ? AuxPath::Closed : AuxPath::Series;
  const AuxPath p2 = partner_path(w);
  AuxValue a = eval_one(w, spec, p1);
  AuxValue b = eval_one(w, spec, p2);
  const double dev = abs(a.value - b.value).log2_abs();
  const std::string n1 = w == Which::F1 ? "polynomial" : to_string(p1);
  r.result["values"] = {{n1, aux_json(a)}, {to_string(p2), aux_json(b)}};
  r.result["max_deviation_log2"] = std::isinf(dev) ? json(nullptr) : json(dev);
  r.result["max_deviation"] = fmt_log2(dev);
  const double bound = std::max(a.error_log2, b.error_log2);
  r.error_bound = bound_json(bound);
  const long tol = 6 - cfg.precision_bits;
  r.checks.push_back({"paths-agree", dev <= static_cast<double>(tol),
                      "deviation " + fmt_log2(dev) + " vs tolerance " + fmt_log2(static_cast<double>(tol))});
  return r;
}

// ---------------------------------------------------------------------------
// meijer

Report cmd_meijer(long m, long n, long p, long q, const std::string& a_text, const std::string& b_text,
                  const std::string& z_text, const std::string& contour_name, const CliConfig& cfg,
                  std::ostream& err) {
  GParams params(m, n, p, q, parse_list(a_text), parse_list(b_text));
  const PrecisionBudget budget = budget_of(cfg);
  const ExactComplex zq = parse_complex(z_text);
  const OmegaPoint z = omega_normalize(APComplex(zq.re, zq.im, budget.working_bits()));
  const Contour contour = parse_contour(contour_name);
  Report r;
  r.command = "meijer";
  r.params = {{"m", m}, {"n", n}, {"p", p}, {"q", q}, {"a", a_text}, {"b", b_text}, {"z", z_text},
              {"contour", to_string(contour)}};
  const ConvergenceReport rep = classify(params, z);
  try {
    GResult g = eval_G(params, z, contour, budget);
    r.result["labels"] = g.report.labels();
    r.result["delta_star"] = to_json(g.report.delta_star);
    r.result["contour"] = to_string(g.contour);
    r.result["value"] = complex_json(g.value);
    r.result["terms"] = g.terms;
    if (!g.report.notes.empty()) r.result["notes"] = g.report.notes;
    r.error_bound = bound_json(g.error_log2);
  } catch (const NoConvergentContour&) {
    err << "labels: " << (rep.labels().empty() ? "(none)" : rep.labels()) << ", delta* = " << rep.delta_star.str()
        << "\n";
    throw;
  }
  return r;
}

// ---------------------------------------------------------------------------
// verify

std::string pair_tag(long nu, long delta) { return "nu=" + std::to_string(nu) + ",delta=" + std::to_string(delta); }

void suite_partial_fractions(long nu, long delta, std::mt19937_64& rng, std::vector<Check>& out) {
  const CoeffTable& t = coeff_table(nu, delta);
  const std::string tag = "partial-fractions/" + pair_tag(nu, delta);
  std::vector<BigRational> ts{BigRational(1)};
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 17);
  while (ts.size() < 21) {
    BigRational c(BigInt(num(rng)), BigInt(den(rng)));
    if (c.is_integer() && c <= BigRational(0) && c >= BigRational(-nu * delta)) continue;
    ts.push_back(c);
  }
  std::string bad;
  for (const auto& x : ts) {
    BigRational r0 = r0_eval(x, nu, delta);
    if (r0 * r0 * r0 != partial_fraction_eval(t, x, 0)) {
      bad = "t = " + x.str();
      break;
    }
  }
  out.push_back({tag + "/reconstruction", bad.empty(),
                 bad.empty() ? std::to_string(ts.size()) + " points exact" : "mismatch at " + bad});
  BigRational gsum;
  for (const auto& g : t.gamma) gsum += g;
  out.push_back({tag + "/gamma-sum-zero", gsum.is_zero(), "sum = " + gsum.str()});
  const RatPoly f1 = f1_star_poly(nu, delta);
  const RatPoly a = coeff_polys(t).alpha;
  out.push_back({tag + "/alpha-star-equals-f1", a == f1, a == f1 ? f1.str() : a.str() + " != " + f1.str()});
}

Check deviation_check(const std::string& name, const APComplex& lhs, const APComplex& rhs, long tol) {
  const double d = abs(lhs - rhs).log2_abs();
  return {name, d <= static_cast<double>(tol), "|diff| = " + fmt_log2(d)};
}

void suite_identities(long nu, long delta, const CliConfig& cfg, std::vector<Check>& out) {
  const PrecisionBudget budget = budget_of(cfg);
  const long tol = 6 - cfg.precision_bits;
  const std::string tag = "identities/" + pair_tag(nu, delta);
  const AuxSpec spec(nu, delta, APComplex(BigRational(2), BigRational(0), budget.working_bits()), budget);
  SeriesTriple s = series_f246(nu, delta, spec.z, budget);
  out.push_back(deviation_check(tag + "/f2-closed-form", s.f2, f2_star(spec, AuxPath::Closed).value, tol));
  out.push_back(deviation_check(tag + "/f4-closed-form", s.f4, f4_star(spec, AuxPath::Closed).value, tol));
  out.push_back(deviation_check(tag + "/f6-closed-form", s.f6, f6_star(spec, AuxPath::Closed).value, tol));
  const APComplex f3g = f3_star(spec, AuxPath::Meijer).value;
  out.push_back(deviation_check(tag + "/f3-log-relation", f3g, f3_star(spec, AuxPath::Series).value, tol));
  const APComplex f5 = f5_star(spec, AuxPath::Series).value;
  const APComplex f5v = f5_vee(spec, AuxPath::Meijer).value;
  const APComplex rhs = f5v + mul_i(f3g * Real::pi(budget.working_bits()));
  out.push_back(deviation_check(tag + "/f5-vee-relation", f5, rhs, tol));
}

void suite_meijer(long nu, long delta, const CliConfig& cfg, std::vector<Check>& out) {
  const PrecisionBudget budget = budget_of(cfg);
  const long tol = 6 - cfg.precision_bits;
  const std::string tag = "meijer-crosscheck/" + pair_tag(nu, delta);
  const Bits wp = budget.working_bits();
  const AuxSpec half(nu, delta, APComplex(BigRational(1, 2), BigRational(0), wp), budget);
  const BigRational exact = f1_star(nu, delta, BigRational(1, 2));
  out.push_back(deviation_check(tag + "/f1-polynomial", f1_star(half, AuxPath::Meijer).value,
                                APComplex(Real(exact, wp)), tol));
  const AuxSpec two(nu, delta, APComplex(BigRational(2), BigRational(0), wp), budget);
  const SeriesTriple s = series_f246(nu, delta, two.z, budget);
  out.push_back(deviation_check(tag + "/f2-series", f2_star(two, AuxPath::Meijer).value, s.f2, tol));
  const std::array<long, 4> ms{1, 4, 5, 6};
  const std::array<int, 4> expected{1, 1, 2, 3};
  std::string got;
  bool ok = true;
  for (std::size_t i = 0; i < ms.size(); ++i) {
    int top = 0;
    const Contour side = ms[i] == 1 ? Contour::L1 : Contour::L2;
    for (const auto& pole : enumerate_poles(aux_params(nu, delta, ms[i]), side, 12)) {
      top = std::max(top, pole.order);
    }
    got += (got.empty() ? "" : ",") + std::to_string(top);
    ok = ok && top == expected[i];
  }
  out.push_back({tag + "/pole-orders", ok, "max orders (" + got + "), expected (1,1,2,3)"});
}

Report cmd_verify(const std::string& suite, const std::string& nu_range, const std::string& delta_range,
                  const CliConfig& cfg) {
  static const std::vector<std::string> suites{"partial-fractions", "identities", "meijer-crosscheck", "all"};
  if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
    throw std::invalid_argument("unknown suite '" + suite + "'");
  }
  const auto [nu_lo, nu_hi] = parse_range(nu_range);
  const auto [d_lo, d_hi] = parse_range(delta_range);
  RParams check_lo(nu_lo, d_lo);
  Report r;
  r.command = "verify";
  r.params = {{"suite", suite}, {"nu", nu_range}, {"delta", delta_range}, {"seed", cfg.seed}};
  std::mt19937_64 rng(cfg.seed);
  for (long nu = nu_lo; nu <= nu_hi; ++nu) {
    for (long delta = d_lo; delta <= d_hi; ++delta) {
      if (suite == "partial-fractions" || suite == "all") suite_partial_fractions(nu, delta, rng, r.checks);
      if (suite == "identities" || suite == "all") suite_identities(nu, delta, cfg, r.checks);
      if (suite == "meijer-crosscheck" || suite == "all") suite_meijer(nu, delta, cfg, r.checks);
    }
  }
  std::stable_sort(r.checks.begin(), r.checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
  long passed = std::count_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
  r.result["checks_run"] = static_cast<long>(r.checks.size());
  r.result["checks_passed"] = passed;
  r.result["status"] = r.all_pass() ? "pass" : "fail";
  return r;
}

// ---------------------------------------------------------------------------
// scan

Report cmd_scan(long N, double gamma, std::optional<long> zeta_bits, const CliConfig& cfg) {
  const PrecisionBudget budget = budget_of(cfg);
  ScanResult s = scan(N, gamma, budget, zeta_bits);
  Report r;
  r.command = "scan";
  r.params = {{"max_height", N}, {"gamma", gamma}};
  r.result["min_c"] = s.min_c.str(40);
  r.result["argmin"] = {s.argmin.first, s.argmin.second};
  r.result["zeta_bits"] = s.zeta_bits;
  r.result["precision_bits"] = cfg.precision_bits;
  auto cor = corollary_values(budget);
  r.result["reference"] = {{"zeta3_over_zeta4", cor[0].str(40)},
                           {"zeta5_over_zeta4", cor[1].str(40)},
                           {"12zeta3zeta5_minus_9zeta4sq_over_zeta4", cor[2].str(40)}};
  r.checks.push_back({"min-c-positive", s.min_c.sign() > 0, s.min_c.str(12)});
  return r;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Auxiliary functions, Meijer G evaluation and linear forms in zeta values", "mf"};
  app.require_subcommand(1);
  CliConfig cfg;
  std::string output = "text";
  app.add_option("--output", output, "json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->envname("MF_OUTPUT");
  app.add_option("--precision-bits", cfg.precision_bits, "target bits (>= 64)")->envname("MF_PRECISION_BITS");
  app.add_option("--max-terms", cfg.max_terms, "term and node limit")->envname("MF_MAX_TERMS");
  app.add_option("--seed", cfg.seed, "seed for randomized checks")->envname("MF_SEED");

  long nu = 1;
  long delta = 2;
  auto* coeffs = app.add_subcommand("coeffs", "coefficient tables and polynomials");
  coeffs->add_option("--nu", nu)->required();
  coeffs->add_option("--delta", delta)->required();

  std::string which, z_text, path;
  auto* eval = app.add_subcommand("eval", "evaluate f1..f6 or f5v");
  eval->add_option("--which", which, "f1..f6 or f5v")->required();
  eval->add_option("--nu", nu)->required();
  eval->add_option("--delta", delta)->required();
  eval->add_option("--z", z_text, "re[,im]")->required();
  eval->add_option("--path", path, "series, closed, meijer or both")
      ->check(CLI::IsMember({"series", "closed", "meijer", "both"}));

  long m = 0, n = 0, p = 0, q = 0;
  std::string a_text, b_text, contour = "auto";
  auto* meijer = app.add_subcommand("meijer", "general Meijer G-function");
  meijer->add_option("--m", m)->required();
  meijer->add_option("--n", n)->required();
  meijer->add_option("--p", p)->required();
  meijer->add_option("--q", q)->required();
  meijer->add_option("--a", a_text, "comma separated rationals");
  meijer->add_option("--b", b_text, "comma separated rationals");
  meijer->add_option("--z", z_text, "re[,im]")->required();
  meijer->add_option("--contour", contour, "auto, L0, L1 or L2");

  std::string suite = "all", nu_range = "1", delta_range = "2";
  auto* verify = app.add_subcommand("verify", "identity and cross-check suites");
  verify->add_option("--suite", suite, "partial-fractions, identities, meijer-crosscheck or all");
  verify->add_option("--nu", nu_range, "a or a..b");
  verify->add_option("--delta", delta_range, "a or a..b");

  long height = 0;
  double gamma = kDefaultGamma;
  std::optional<long> zeta_bits;
  auto* scan_cmd = app.add_subcommand("scan", "minimum of (||phi1|| + ||phi2||) h^gamma");
  scan_cmd->add_option("--max-height", height, "N >= 1")->required()->check(CLI::PositiveNumber);
  scan_cmd->add_option("--gamma", gamma)->check(CLI::NonNegativeNumber);
  scan_cmd->add_option("--zeta-bits", zeta_bits, "override the zeta precision");

  for (auto* sub : {coeffs, eval, meijer, verify, scan_cmd}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }
  if (cfg.precision_bits < 64 || cfg.precision_bits > (1L << 20)) {
    err << "--precision-bits: " << cfg.precision_bits << " is outside [64, 1048576]\n";
    return exit_code::usage;
  }
  if (cfg.max_terms < 1) {
    err << "--max-terms: must be positive\n";
    return exit_code::usage;
  }
  cfg.output = output == "json" ? OutputFormat::Json : output == "csv" ? OutputFormat::Csv : OutputFormat::Text;

  try {
    Report r;
    if (*coeffs) {
      r = cmd_coeffs(nu, delta);
    } else if (*eval) {
      r = cmd_eval(which, nu, delta, z_text, path, cfg);
    } else if (*meijer) {
      r = cmd_meijer(m, n, p, q, a_text, b_text, z_text, contour, cfg, err);
    } else if (*verify) {
      r = cmd_verify(suite, nu_range, delta_range, cfg);
    } else {
      r = cmd_scan(height, gamma, zeta_bits, cfg);
    }
    r.params["precision_bits"] = cfg.precision_bits;
    render(r, cfg, out);
    if (!r.all_pass()) {
      auto first = std::find_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return !c.pass; });
      err << "first failure: " << first->name << ": " << first->detail << "\n";
      return exit_code::verify_failed;
    }
    return exit_code::ok;
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    err << "error: " << e.what() << "\n";
    if (code == exit_code::precision) err << "hint: raise --precision-bits or drop --zeta-bits\n";
    return code;
  }
}

}  // namespace mf
