#include "cusptorsion/dim3.hpp"

#include "cusptorsion/kostant.hpp"

namespace cusptorsion {

Real B_m(int m, const PrecisionContext& ctx) {
  if (m < 1) throw ValidationError("B(m) needs m >= 1");
  ScopedPrecision scope(ctx);
  Real total(0);
  for (int k = 0; k < m; ++k) {
    Real a0 = Real(m) / 2 - k;        // numerator shift
    Real a1 = a0 - 1;                 // denominator shift
    Real b2 = Real(2) * (1 + k) * (m - k);
    Real num = a0 + sqrt(a0 * a0 + b2);
    Real den = a1 + sqrt(a1 * a1 + b2);
    total += log(num / den);
  }
  return total;
}

Real b_ell(int l, const PrecisionContext& ctx) {
  if (l < 1) throw ValidationError("b(l) needs l >= 1");
  ScopedPrecision scope(ctx);
  const Real s = Real(l + 1) * (l + 1) + Real(l) * l;  // (l+1)^2 + l^2
  Real prod(1);
  for (int k = -l; k <= l - 1; ++k) {
    Real num = sqrt(s - Real(k) * k) - k - 1;
    Real den = sqrt(s - Real(k + 1) * (k + 1)) - k;
    prod *= sqrt(num / den);
  }
  return prod / (2 * l + 2);
}

Real c_ell(int l, const PrecisionContext& ctx) {
  if (l < 1) throw ValidationError("c(l) needs l >= 1");
  ScopedPrecision scope(ctx);
  const Real s = Real(l + 1) * (l + 1) + Real(l) * l;
  Real num(1), den(1);
  for (int j = 1; j <= l - 1; ++j) num *= sqrt(s - Real(j) * j) + l;
  for (int j = 1; j <= l; ++j) den *= sqrt(s - Real(j) * j) + l + 1;
  Real tail = sqrt((sqrt(s) + l) / (sqrt(s) + l + 1));
  return num / den * tail;
}

Real verify_int6b(int l_max, const PrecisionContext& ctx) {
  if (l_max < 2) throw ValidationError("identity check needs l_max >= 2");
  ScopedPrecision scope(ctx);
  const Real b2 = b_ell(2, ctx);
  const Real c2 = c_ell(2, ctx);
  Real max_dev(0);
  for (int l = 2; l <= l_max; ++l) {
    Real dev = abs(c_ell(l, ctx) / c2 - b_ell(l, ctx) / b2);
    max_dev = std::max(max_dev, dev);
  }
  return max_dev;
}

Real b_vs_B_check(int l, const PrecisionContext& ctx) {
  if (l < 1) throw ValidationError("check needs l >= 1");
  ScopedPrecision scope(ctx);
  return abs(b_ell(l, ctx) - exp(-B_m(2 * l, ctx) / 2) / (2 * l + 2));
}

Dim3Report defect_dim3(int m, int kappa, const PrecisionContext& ctx) {
  if (m < 1) throw ValidationError("defect needs m >= 1");
  ScopedPrecision scope(ctx);
  Dim3Report report;
  report.m = m;
  report.kappa = kappa;
  report.b_m = B_m(m, ctx);
  report.per_cusp_defect = log(Real(m) + 2) + report.b_m / 2;
  report.total_defect = -kappa * report.per_cusp_defect;

  // Cross-check against the spectral pipeline on the actual complex.
  RepBundle rep = build_sym_power_rep(m);
  CochainComplex cx = exterior_complex(rep);
  HarmonicDecomposition h = harmonic_spaces(cx, rep, ctx);
  std::vector<VqabEntry> vqab = vqab_decomposition(cx, rep, ctx);
  LambdaLadder ladder = sym_power_ladder(m);
  Real alpha_v = alpha(ladder, dims_from_harmonics(h), ctx);
  Real beta_v = beta(vqab, ctx);
  report.cross_check_residual = abs(report.per_cusp_defect - (alpha_v + beta_v) / 2);
  return report;
}

}  // namespace cusptorsion
