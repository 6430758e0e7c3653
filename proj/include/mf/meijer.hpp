#pragma once

// Meijer G-function with rational parameters: convergence classification,
// pole enumeration with orders, numerical residues and the three contours.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mf/exact.hpp"
#include "mf/numerics.hpp"

namespace mf {

enum class Contour { Auto, L0, L1, L2 };

std::string to_string(Contour c);
Contour parse_contour(const std::string& s);

struct GParams {
  long m = 0;
  long n = 0;
  long p = 0;
  long q = 0;
  std::vector<BigRational> a;
  std::vector<BigRational> b;

  /// Validates sizes, ranges and that no a_j - b_k (j <= n, k <= m) is a positive integer.
  GParams(long m_, long n_, long p_, long q_, std::vector<BigRational> a_, std::vector<BigRational> b_);

  /// sum b - sum a
  [[nodiscard]] BigRational delta_star() const;
};

/// The integrand parameters of the four auxiliary G-functions, m in {1, 4, 5, 6}.
GParams aux_params(long nu, long delta, long m);

enum class Condition { A1, A2, B1, B2, B3, C1, C2, C3 };
std::string to_string(Condition c);

struct ConvergenceReport {
  std::set<Condition> holds;
  BigRational delta_star;
  std::string notes;

  [[nodiscard]] bool has(Condition c) const { return holds.count(c) != 0; }
  [[nodiscard]] bool any_a() const { return has(Condition::A1) || has(Condition::A2); }
  [[nodiscard]] bool any_b() const { return has(Condition::B1) || has(Condition::B2) || has(Condition::B3); }
  [[nodiscard]] bool any_c() const { return has(Condition::C1) || has(Condition::C2) || has(Condition::C3); }
  /// e.g. "A2,C2,C3"
  [[nodiscard]] std::string labels() const;
};

ConvergenceReport classify(const GParams& params, const OmegaPoint& z);
ConvergenceReport classify(const GParams& params, const APComplex& z);

struct PoleInfo {
  BigRational location;
  int order = 1;
  /// Generating Gamma factors, e.g. "b" for Gamma(b_k - s), "a" for Gamma(1 - a_j + s).
  std::string family;
  Contour contour = Contour::L1;
};

/// The first `limit` poles enclosed by L1 (ascending) or L2 (descending).
std::vector<PoleInfo> enumerate_poles(const GParams& params, Contour contour, long limit);

/// Residue of the G integrand at s0 by trapezoidal quadrature on a circle.
/// The radius defaults to min(1/4, R/2), R the distance to the nearest other singularity.
APComplex residue_at(const GParams& params, const OmegaPoint& z, const BigRational& s0, int order,
                     const PrecisionBudget& budget, std::optional<BigRational> radius = std::nullopt);

struct GResult {
  APComplex value;
  double error_log2 = 0;
  /// Residues summed or quadrature nodes used.
  long terms = 0;
  Contour contour = Contour::Auto;
  ConvergenceReport report;
};

GResult eval_G(const GParams& params, const OmegaPoint& z, Contour contour, const PrecisionBudget& budget);

}  // namespace mf
