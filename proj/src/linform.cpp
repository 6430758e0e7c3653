#include "mf/linform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mf/errors.hpp"

namespace mf {

std::array<std::array<long, 2>, 2> form_coeffs() {
  std::array<std::array<long, 2>, 2> m{};
  for (long i = 1; i <= 2; ++i) {
    for (long k = 1; k <= 2; ++k) m[i - 1][k - 1] = 2 * i * k - i - k + 2;
  }
  return m;
}

ZetaTriple::ZetaTriple(const PrecisionBudget& budget)
    : z3(zeta_int(3, budget)), z4(zeta_int(4, budget)), z5(zeta_int(5, budget)) {}

Real phi(int i, long x1, long x2, const ZetaTriple& zetas) {
  static const auto m = form_coeffs();
  if (i == 1) return zetas.z3 * (m[0][0] * x1) + zetas.z4 * (m[0][1] * x2);
  if (i == 2) return zetas.z4 * (m[1][0] * x1) + zetas.z5 * (m[1][1] * x2);
  throw std::invalid_argument("phi: i must be 1 or 2");
}

Real phi(int i, long x1, long x2, const PrecisionBudget& budget) { return phi(i, x1, x2, ZetaTriple(budget)); }

Real dist_to_int(const Real& x) { return abs(x - round(x)); }

std::array<Real, 3> corollary_values(const PrecisionBudget& budget) {
  ZetaTriple z(budget);
  Real c = (z.z3 * z.z5 * 12L - z.z4 * z.z4 * 9L) / z.z4;
  return {z.z3 / z.z4, z.z5 / z.z4, c};
}

long scan_zeta_bits(long N, double gamma, long target_bits) {
  const double ln = std::log2(static_cast<double>(N));
  return target_bits + static_cast<long>(std::ceil(gamma * ln)) + 16 +
         static_cast<long>(std::ceil(std::log2(18.0 * static_cast<double>(N))));
}

namespace {

struct Best {
  Real value = Real::inf();
  long x1 = 0;
  long x2 = 0;
  bool set = false;

  void offer(const Real& v, long a, long b) {
    if (!set || v < value || (v == value && (a < x1 || (a == x1 && b < x2)))) {
      value = v;
      x1 = a;
      x2 = b;
      set = true;
    }
  }
};

long resolve_bits(long N, double gamma, const PrecisionBudget& budget, std::optional<long> zeta_bits) {
  if (N < 1) throw ValidationError("scan: N must be at least 1");
  if (!std::isfinite(gamma) || gamma < 0) throw ValidationError("scan: gamma must be finite and >= 0");
  if (zeta_bits && *zeta_bits < 2) throw ValidationError("scan: zeta bits must be at least 2");
  return zeta_bits ? *zeta_bits : scan_zeta_bits(N, gamma, budget.target_bits);
}

struct ScanSetup {
  long zbits;
  PrecisionBudget zbudget;
  ZetaTriple zetas;
  std::vector<Real> weight;  // weight[h] = h^gamma

  ScanSetup(long N, double gamma, const PrecisionBudget& budget, std::optional<long> zeta_bits)
      : zbits(resolve_bits(N, gamma, budget, zeta_bits)),
        zbudget(zbits, budget.guard_bits, budget.max_terms),
        zetas(zbudget) {
    const Bits wp = zbudget.working_bits();
    const Real g(gamma, wp);
    weight.reserve(static_cast<std::size_t>(N + 1));
    weight.emplace_back(0L, wp);
    for (long h = 1; h <= N; ++h) weight.push_back(pow(Real(h, wp), g));
  }

  void visit(long x1, Best& best) const {
    const long N = static_cast<long>(weight.size()) - 1;
    const long rest = N - std::labs(x1);
    for (long x2 = -rest; x2 <= rest; ++x2) {
      if (x1 == 0 && x2 == 0) continue;
      Real d = dist_to_int(phi(1, x1, x2, zetas)) + dist_to_int(phi(2, x1, x2, zetas));
      best.offer(d * weight[static_cast<std::size_t>(std::labs(x1) + std::labs(x2))], x1, x2);
    }
  }

  ScanResult finish(long N, double gamma, const Best& best, long target_bits) const {
    // |error of phi_i| <= 9 N 2^-zbits
    const Bits wp = zbudget.working_bits();
    Real err = Real::two_pow(-zbits, wp) * (18L * N) * weight.back();
    if (!(err * 2L < best.value)) {
      throw PrecisionTooLow("scan: error bound 2^" + std::to_string(err.log2_abs()) +
                            " is not below half the minimum; raise the zeta precision (now " +
                            std::to_string(zbits) + " bits) or the target (now " + std::to_string(target_bits) +
                            ")");
    }
    ScanResult r;
    r.N = N;
    r.min_c = best.value;
    r.argmin = {best.x1, best.x2};
    r.gamma = gamma;
    r.zeta_bits = zbits;
    return r;
  }
};

}  // namespace

ScanResult scan(long N, double gamma, const PrecisionBudget& budget, std::optional<long> zeta_bits) {
  ScanSetup setup(N, gamma, budget, zeta_bits);
  Best best;
#pragma omp parallel
  {
    Best local;
#pragma omp for schedule(dynamic, 1) nowait
    for (long x1 = -N; x1 <= N; ++x1) setup.visit(x1, local);
#pragma omp critical(mf_scan_reduce)
    if (local.set) best.offer(local.value, local.x1, local.x2);
  }
  return setup.finish(N, gamma, best, budget.target_bits);
}

ScanResult scan_serial(long N, double gamma, const PrecisionBudget& budget, std::optional<long> zeta_bits) {
  ScanSetup setup(N, gamma, budget, zeta_bits);
  Best best;
  for (long x1 = -N; x1 <= N; ++x1) setup.visit(x1, best);
  return setup.finish(N, gamma, best, budget.target_bits);
}

}  // namespace mf
