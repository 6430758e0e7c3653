#pragma once

// The starred auxiliary functions f1*..f6* and f5-vee, evaluated by the residue
// series, by polylogarithm closed forms, or through the Meijer G evaluator.

#include <array>
#include <map>
#include <string>

#include "mf/coeff_tables.hpp"
#include "mf/numerics.hpp"

namespace mf {

enum class AuxPath { Series, Closed, Meijer };

std::string to_string(AuxPath p);
/// "series", "closed" or "meijer"; throws std::invalid_argument otherwise.
AuxPath parse_aux_path(const std::string& s);

struct AuxSpec {
  long nu = 1;
  long delta = 2;
  APComplex z;
  PrecisionBudget budget;

  AuxSpec(long nu_, long delta_, APComplex z_, PrecisionBudget budget_ = {});
  /// True when z is exactly 1.
  [[nodiscard]] bool at_one() const;
};

struct AuxValue {
  APComplex value;
  /// log2 of the a-priori absolute error bound.
  double error_log2 = 0;
  /// Series terms or residues consumed (0 for closed forms).
  long terms = 0;
  AuxPath path = AuxPath::Series;
};

/// f2*, f4*, f6* from a single pass over t = nu Delta + 1 .. T.
struct SeriesTriple {
  APComplex f2;
  APComplex f4;
  APComplex f6;
  long terms = 0;
  double error_log2 = 0;
};

/// OpenMP-parallel over fixed blocks of t, combined in block order.
SeriesTriple series_f246(long nu, long delta, const APComplex& z, const PrecisionBudget& budget);
/// Single loop reference for series_f246.
SeriesTriple series_f246_serial(long nu, long delta, const APComplex& z, const PrecisionBudget& budget);

/// Smallest T for which the truncated f2/f4/f6 series have tail below 2^-(target+1).
long series_cutoff(long nu, long delta, double abs_z, long target_bits);

/// Exact f1*(z) for rational z.
BigRational f1_star(long nu, long delta, const BigRational& z);
/// f1*(z) numerically; path Meijer uses the G^(1,3) residue sum (|z| <= 1 only).
AuxValue f1_star(const AuxSpec& spec, AuxPath path);

AuxValue f2_star(const AuxSpec& spec, AuxPath path);
AuxValue f4_star(const AuxSpec& spec, AuxPath path);
AuxValue f6_star(const AuxSpec& spec, AuxPath path);
/// Meijer uses G^(5,3); otherwise f2* log z + f4* with f2*, f4* on the given path.
AuxValue f3_star(const AuxSpec& spec, AuxPath path = AuxPath::Series);
/// f6* + f2* log^2 z / 2 + f4* log z.
AuxValue f5_star(const AuxSpec& spec, AuxPath path = AuxPath::Series);
/// Meijer uses G^(6,3) at -z; otherwise f2* (log^2(-z) + pi^2)/2 + f4* log(-z) + f6*.
AuxValue f5_vee(const AuxSpec& spec, AuxPath path = AuxPath::Series);

/// sum_s zeta_coeffs[s] zeta(s) + rational_part
struct ZetaLinearForm {
  long nu = 1;
  long delta = 2;
  std::map<int, BigRational> zeta_coeffs;
  BigRational rational_part;
};

/// Values of f2*, f4*, f6* at z = 1. Throws AssertionError unless gamma*(1) = 0.
std::array<ZetaLinearForm, 3> zeta_forms_at_one(long nu, long delta);

Real evaluate(const ZetaLinearForm& form, const PrecisionBudget& budget);

}  // namespace mf
