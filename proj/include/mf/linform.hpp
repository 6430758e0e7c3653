#pragma once

// The linear forms phi_1, phi_2 in zeta(3), zeta(4), zeta(5) and an exhaustive
// scan of (||phi_1|| + ||phi_2||) h^gamma over small integer vectors.

#include <array>
#include <optional>
#include <utility>

#include "mf/numerics.hpp"

namespace mf {

inline constexpr double kDefaultGamma = 43.464412;

/// entry(i, k) = 2ik - i - k + 2, i.e. [[2, 3], [3, 6]].
std::array<std::array<long, 2>, 2> form_coeffs();

/// zeta(3), zeta(4), zeta(5) at the budget's working precision.
struct ZetaTriple {
  Real z3, z4, z5;
  explicit ZetaTriple(const PrecisionBudget& budget);
};

Real phi(int i, long x1, long x2, const ZetaTriple& zetas);
Real phi(int i, long x1, long x2, const PrecisionBudget& budget);

/// Distance to the nearest integer, in [0, 1/2].
Real dist_to_int(const Real& x);

struct ScanResult {
  long N = 0;
  Real min_c;
  std::pair<long, long> argmin{0, 0};
  double gamma = kDefaultGamma;
  long zeta_bits = 0;
};

/// zeta(3)/zeta(4), zeta(5)/zeta(4) and (12 zeta(3) zeta(5) - 9 zeta(4)^2) / zeta(4).
std::array<Real, 3> corollary_values(const PrecisionBudget& budget);

/// Bits for the zeta values so the weighted distances are meaningful up to height N.
long scan_zeta_bits(long N, double gamma, long target_bits);

/// min over 0 < |x1| + |x2| <= N of (||phi_1|| + ||phi_2||) (|x1| + |x2|)^gamma, ties to the
/// lexicographically smallest (x1, x2). OpenMP over x1.
ScanResult scan(long N, double gamma, const PrecisionBudget& budget, std::optional<long> zeta_bits = std::nullopt);
/// Single-threaded reference for scan.
ScanResult scan_serial(long N, double gamma, const PrecisionBudget& budget,
                       std::optional<long> zeta_bits = std::nullopt);

}  // namespace mf
