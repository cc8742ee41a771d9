#include "cusptorsion/defects.hpp"

namespace cusptorsion {

void validate(const CohomologyDims& dims) {
  if (dims.dims.size() < 3 || dims.dims.size() % 2 == 0)
    throw ValidationError("cohomology dims must cover degrees 0..2n");
  long alt = 0;
  for (size_t q = 0; q < dims.dims.size(); ++q) {
    if (dims.dims[q] < 0) throw ValidationError("negative cohomology dimension");
    alt += (q % 2 == 0 ? 1L : -1L) * dims.dims[q];
  }
  if (alt != 0) throw ValidationError("cohomology dims must have vanishing Euler characteristic");
  if (dims.plus_dim < 0 || dims.minus_dim < 0 ||
      dims.plus_dim + dims.minus_dim != dims.dims[static_cast<size_t>(dims.n())])
    throw ValidationError("middle-degree split must sum to dims[n]");
}

CohomologyDims dims_from_harmonics(const HarmonicDecomposition& h) {
  CohomologyDims dims;
  dims.dims = h.dims;
  dims.plus_dim = h.plus_dim;
  dims.minus_dim = h.minus_dim;
  return dims;
}

LambdaLadder ladder_from_harmonics(const HarmonicDecomposition& h) {
  const int degs = static_cast<int>(h.dims.size());
  if (degs < 3 || degs % 2 == 0) throw ValidationError("harmonic data must cover degrees 0..2n");
  const int n = (degs - 1) / 2;
  LambdaLadder ladder;
  ladder.n = n;
  ladder.lam.resize(static_cast<size_t>(degs));
  for (int q = 0; q < degs; ++q) {
    const auto& w = h.weights[static_cast<size_t>(q)];
    if (w.empty())
      throw ValidationError("degree " + std::to_string(q) + " has no harmonic part; no ladder");
    for (const WeightMult& wm : w)
      if (!wm.value.is_exact())
        throw ValidationError("irrational harmonic spectrum; no exact ladder");
    if (q != n) {
      if (w.size() != 1)
        throw ValidationError("degree " + std::to_string(q) +
                              " carries several weights; spectrum is not ladder-shaped");
      ladder.lam[static_cast<size_t>(q)] = *w[0].value.exact;
    }
  }
  const auto& mid = h.weights[static_cast<size_t>(n)];
  if (mid.size() == 1 && sgn(*mid[0].value.exact) == 0) {
    ladder.lam[static_cast<size_t>(n)] = 0;
    ladder.lam_plus = 0;
    ladder.lam_minus = 0;
  } else if (mid.size() == 2 && *mid[0].value.exact == -*mid[1].value.exact) {
    ladder.lam_plus = abs(*mid[1].value.exact);
    ladder.lam_minus = -ladder.lam_plus;
    ladder.lam[static_cast<size_t>(n)] = ladder.lam_plus;
  } else {
    throw ValidationError("middle-degree spectrum is not a +- pair");
  }
  for (int q = 0; q < n; ++q)
    if (ladder.at(q) != -ladder.at(2 * n - q))
      throw ValidationError("harmonic spectrum violates ladder antisymmetry");
  return ladder;
}

namespace {

int sign_pow(int q) { return q % 2 == 0 ? 1 : -1; }

void require_ladder(const LambdaLadder& ladder, const CohomologyDims& dims) {
  validate(dims);
  if (static_cast<int>(dims.dims.size()) != 2 * ladder.n + 1)
    throw ValidationError("ladder and dims disagree on n");
  for (int q = 0; q < ladder.n; ++q)
    if (sgn(ladder.at(q)) <= 0)
      throw ValidationError("lambda_" + std::to_string(q) + " must be positive (strong acyclicity)");
  if (sgn(ladder.lam_plus) <= 0)
    throw ValidationError("lambda^+ must be positive (strong acyclicity)");
}

Real log_two_lambda(const Rational& lam, const PrecisionContext& ctx) {
  ScopedPrecision scope(ctx);
  return log(2 * to_real(abs(lam)));
}

}  // namespace

Real a_term(const LambdaLadder& ladder, const CohomologyDims& dims, const PrecisionContext& ctx) {
  require_ladder(ladder, dims);
  ScopedPrecision scope(ctx);
  const int n = ladder.n;
  Real total(0);
  for (int q = 0; q < n; ++q) {
    if (dims.dims[q] == 0) continue;
    Real term = log_c(ladder.at(q), ctx) - (2 * q + 1) * log_two_lambda(ladder.at(q), ctx);
    total += sign_pow(q) * term * dims.dims[q] / 2;
  }
  for (int q = n + 1; q <= 2 * n; ++q) {
    if (dims.dims[q] == 0) continue;
    Real term = log_c(-ladder.at(q), ctx) + (2 * q + 1) * log_two_lambda(ladder.at(q), ctx);
    total += sign_pow(q) * term * dims.dims[q] / 2;
  }
  if (dims.dims[n] != 0)
    total += sign_pow(n) * log_c(ladder.lam_plus, ctx) * dims.dims[n] / 2;
  return total;
}

Real a_term_odd(const LambdaLadder& ladder, const CohomologyDims& dims,
                const PrecisionContext& ctx) {
  require_ladder(ladder, dims);
  const int n = ladder.n;
  if (n % 2 == 0) throw ValidationError("odd-n formula requires odd n");
  for (int q = 0; q <= 2 * n; ++q)
    if (dims.dims[q] != dims.dims[2 * n - q])
      throw ValidationError("odd-n formula requires palindromic dims");
  ScopedPrecision scope(ctx);
  Real total = sign_pow(n) * log_c(ladder.lam_plus, ctx) * dims.dims[n] / 2;
  for (int q = 0; q < n; ++q) {
    if (dims.dims[q] == 0) continue;
    Real term = log_c(ladder.at(q), ctx) + (2 * n - 2 * q) * log_two_lambda(ladder.at(q), ctx);
    total += sign_pow(q) * term * dims.dims[q];
  }
  return total;
}

Real b_term(const std::vector<VqabEntry>& vqab, const PrecisionContext& ctx) {
  ScopedPrecision scope(ctx);
  Real total(0);
  for (const VqabEntry& e : vqab) {
    if (e.b2.sign() <= 0) throw ValidationError("joint eigenvalue entries need b^2 > 0");
    Real a = e.a.as_real(ctx);
    Real b = sqrt(e.b2.as_real(ctx));
    Real root = sqrt(a * a + b * b);
    Real lg = a >= 0 ? log((a + root) / b) : -log((root - a) / b);
    total += sign_pow(e.q) * e.mult * lg;
  }
  return total;
}

Real alpha(const LambdaLadder& ladder, const CohomologyDims& dims, const PrecisionContext& ctx) {
  require_ladder(ladder, dims);
  ScopedPrecision scope(ctx);
  const int n = ladder.n;
  Real total(0);
  for (int q = 0; q <= 2 * n; ++q) {
    if (q == n || dims.dims[q] == 0) continue;
    int side = q < n ? -1 : 1;
    total += Real(sign_pow(q) * (2 * q + 1) * side * dims.dims[q]) *
             log_two_lambda(ladder.at(q), ctx) / 2;
  }
  return total;
}

Real alpha_odd(const LambdaLadder& ladder, const CohomologyDims& dims,
               const PrecisionContext& ctx) {
  require_ladder(ladder, dims);
  const int n = ladder.n;
  if (n % 2 == 0) throw ValidationError("odd-n formula requires odd n");
  for (int q = 0; q <= 2 * n; ++q)
    if (dims.dims[q] != dims.dims[2 * n - q])
      throw ValidationError("odd-n formula requires palindromic dims");
  ScopedPrecision scope(ctx);
  Real total(0);
  for (int q = 0; q < n; ++q) {
    if (dims.dims[q] == 0) continue;
    total += Real(2 * sign_pow(q) * (n - q) * dims.dims[q]) * log_two_lambda(ladder.at(q), ctx);
  }
  return total;
}

Real beta(const std::vector<VqabEntry>& vqab, const PrecisionContext& ctx) {
  return b_term(vqab, ctx);
}

Real fp_ratio(const LambdaLadder& ladder, const CohomologyDims& dims, int kappa,
              const PrecisionContext& ctx) {
  require_ladder(ladder, dims);
  ScopedPrecision scope(ctx);
  const int n = ladder.n;
  Real total(0);
  for (int q = 0; q < n; ++q)
    if (dims.dims[q] != 0) total += sign_pow(q) * log_c(ladder.at(q), ctx) * dims.dims[q] / 2;
  for (int q = n + 1; q <= 2 * n; ++q)
    if (dims.dims[q] != 0) total += sign_pow(q) * log_c(-ladder.at(q), ctx) * dims.dims[q] / 2;
  if (dims.dims[n] != 0)
    total += sign_pow(n) * log_c(ladder.lam_plus, ctx) * dims.dims[n] / 2;
  return total * kappa;
}

DefectReport total_defect(const Real& alpha_value, const Real& beta_value, int kappa) {
  DefectReport r;
  r.kappa = kappa;
  r.alpha = alpha_value;
  r.beta = beta_value;
  r.a_term = Real(0);
  r.b_term = Real(0);
  r.fp_ratio = Real(0);
  r.c_rho = (alpha_value + beta_value) / 2;
  r.total_defect = -kappa * r.c_rho;
  return r;
}

DefectReport make_defect_report(const LambdaLadder& ladder, const CohomologyDims& dims,
                                const std::vector<VqabEntry>& vqab, int kappa,
                                const PrecisionContext& ctx) {
  ScopedPrecision scope(ctx);
  DefectReport r = total_defect(alpha(ladder, dims, ctx), beta(vqab, ctx), kappa);
  r.a_term = a_term(ladder, dims, ctx);
  r.b_term = b_term(vqab, ctx);
  r.fp_ratio = fp_ratio(ladder, dims, kappa, ctx);
  // The cusp-degeneration bookkeeping collapses to
  //   kappa (alpha + beta) = kappa (A + B) - fp_ratio.
  Real lhs = kappa * (r.alpha + r.beta);
  Real rhs = kappa * (r.a_term + r.b_term) - r.fp_ratio;
  Real tol = pow10(-(ctx.digits - 8)) * std::max(Real(1), abs(rhs));
  if (abs(lhs - rhs) > tol)
    throw ConsistencyError("defect bookkeeping identity violated beyond tolerance");
  return r;
}

Real assemble_logT(const Real& log_tau_x, const Real& log_tau_z, const DefectReport& report) {
  return log_tau_x - log_tau_z / 2 + report.total_defect;
}

Real cusp_torsion_ff2(const Real& log_tau_z, int kappa, const LambdaLadder& ladder,
                      const CohomologyDims& dims, const std::vector<VqabEntry>& vqab,
                      const Real& c_n, int rank_e, const Real& vol_boundary,
                      const PrecisionContext& ctx) {
  require_ladder(ladder, dims);
  ScopedPrecision scope(ctx);
  const int n = ladder.n;
  Real total = -log_tau_z / 2;
  total -= Real(kappa) * (alpha(ladder, dims, ctx) + beta(vqab, ctx)) / 2;
  total += c_n * rank_e * vol_boundary;
  total -= Real(kappa * sign_pow(n) * dims.dims[n]) * log(to_real(ladder.lam_plus)) / 4;
  for (int q = 0; q <= 2 * n; ++q) {
    if (q == n || dims.dims[q] == 0) continue;
    total -= Real(kappa * sign_pow(q) * dims.dims[q]) * log(to_real(abs(ladder.at(q)))) / 4;
  }
  return total;
}

int cusp_count(const std::vector<CuspCharacter>& characters) {
  int count = 0;
  for (CuspCharacter c : characters)
    if (c == CuspCharacter::Trivial) ++count;
  return count;
}

std::vector<VqabEntry> sym_power_vqab(int m) {
  if (m < 0) throw ValidationError("symmetric power needs m >= 0");
  std::vector<VqabEntry> entries;
  for (int j = 0; j < m; ++j) {
    Rational b2 = Rational(2) * (j + 1) * (m - j);
    Rational half_m = make_rational(m, 2);
    entries.push_back({0, ScalarRQ::from_exact(Rational(j) - half_m + 1), ScalarRQ::from_exact(b2), 1});
    entries.push_back({1, ScalarRQ::from_exact(Rational(j) - half_m), ScalarRQ::from_exact(b2), 1});
  }
  return entries;
}

LambdaLadder sym_power_ladder(int m) {
  HighestWeight hw;
  hw.spec = {3, GroupFlavor::Spin};
  hw.k = {make_rational(m, 2), make_rational(m, 2)};
  return lambda_ladder(hw);
}

CohomologyDims sym_power_dims() {
  CohomologyDims dims;
  dims.dims = {1, 2, 1};
  dims.plus_dim = 1;
  dims.minus_dim = 1;
  return dims;
}

std::vector<GrowthRow> defect_growth_scan(int m_lo, int m_hi, int stride,
                                          const PrecisionContext& ctx) {
  if (m_lo > m_hi || stride < 1) throw ValidationError("growth scan needs a nonempty range");
  ScopedPrecision scope(ctx);
  std::vector<GrowthRow> rows;
  for (int m = m_lo; m <= m_hi; m += stride) {
    if (m < 1) continue;  // m = 0 is not strongly acyclic; skipped by contract
    GrowthRow row;
    row.m = m;
    row.alpha = alpha(sym_power_ladder(m), sym_power_dims(), ctx);
    row.beta = beta(sym_power_vqab(m), ctx);
    row.defect = (row.alpha + row.beta) / 2;
    row.ratio = m >= 2 ? Real(row.defect / (m * log(Real(m)))) : Real(0);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cusptorsion
