#pragma once

#include <vector>

#include "cusptorsion/kostant.hpp"
#include "cusptorsion/modeldet.hpp"
#include "cusptorsion/weights.hpp"

namespace cusptorsion {

/// Per-degree dimensions of the nil-cohomology, with the middle-degree split.
struct CohomologyDims {
  std::vector<int> dims;  // size 2n+1
  int plus_dim = 0, minus_dim = 0;

  int n() const { return (static_cast<int>(dims.size()) - 1) / 2; }
};

/// Throws unless plus+minus = dims[n] and the alternating sum vanishes.
void validate(const CohomologyDims& dims);

CohomologyDims dims_from_harmonics(const HarmonicDecomposition& h);

/// Reconstructs the eigenvalue ladder from the (W+n)-spectrum on harmonics:
/// away from the middle degree each harmonic space must carry a single exact
/// eigenvalue, the middle a +-pair; antisymmetry across the middle is
/// checked. ValidationError when the spectrum is not ladder-shaped.
LambdaLadder ladder_from_harmonics(const HarmonicDecomposition& h);

/// All torsion-defect constants for one weight, plus the two bookkeeping
/// sums whose difference reproduces them.
struct DefectReport {
  int kappa = 0;
  Real alpha, beta, a_term, b_term, fp_ratio;
  Real c_rho;         // (alpha+beta)/2
  Real total_defect;  // -kappa (alpha+beta)/2
};

/// The boundary contribution of the model-determinant computation on the
/// harmonic part: alternating sums of log c_lambda and log(2 lambda) terms.
Real a_term(const LambdaLadder& ladder, const CohomologyDims& dims, const PrecisionContext& ctx);

/// Same number via the simplified odd-n expression; requires odd n and
/// palindromic dims.
Real a_term_odd(const LambdaLadder& ladder, const CohomologyDims& dims, const PrecisionContext& ctx);

/// Contribution of the positive spectrum of K^2: alternating sum of
/// log((a+sqrt(a^2+b^2))/b) over the joint eigenspaces.
Real b_term(const std::vector<VqabEntry>& vqab, const PrecisionContext& ctx);

/// Defect constant from the harmonic part:
/// (1/2) sum_{q != n} (-1)^q (2q+1) sign(q-n) log(2|lambda_q|) dims[q].
Real alpha(const LambdaLadder& ladder, const CohomologyDims& dims, const PrecisionContext& ctx);

/// Odd-n closed form 2 sum_{q<n} (-1)^q (n-q) log(2 lambda_q) dims[q];
/// equals alpha under its preconditions.
Real alpha_odd(const LambdaLadder& ladder, const CohomologyDims& dims, const PrecisionContext& ctx);

/// Defect constant from the positive K^2 spectrum; same sum as b_term.
Real beta(const std::vector<VqabEntry>& vqab, const PrecisionContext& ctx);

/// Finite-part ratio term: kappa times the alternating log c_lambda sum.
Real fp_ratio(const LambdaLadder& ladder, const CohomologyDims& dims, int kappa,
              const PrecisionContext& ctx);

/// Assembles a report from precomputed alpha/beta.
DefectReport total_defect(const Real& alpha_value, const Real& beta_value, int kappa);

/// Full report: all constants plus the bookkeeping identity check
/// kappa (alpha+beta) = kappa (A+B) - fp_ratio, which must hold to
/// 10^(8-digits); ConsistencyError otherwise.
DefectReport make_defect_report(const LambdaLadder& ladder, const CohomologyDims& dims,
                                const std::vector<VqabEntry>& vqab, int kappa,
                                const PrecisionContext& ctx);

/// log tau(X) - (1/2) log tau(Z) + totalDefect.
Real assemble_logT(const Real& log_tau_x, const Real& log_tau_z, const DefectReport& report);

/// Regularized analytic torsion of the cusp ends, given the externally
/// supplied constant c_n and boundary volume.
Real cusp_torsion_ff2(const Real& log_tau_z, int kappa, const LambdaLadder& ladder,
                      const CohomologyDims& dims, const std::vector<VqabEntry>& vqab,
                      const Real& c_n, int rank_e, const Real& vol_boundary,
                      const PrecisionContext& ctx);

enum class CuspCharacter { Trivial, NonTrivial };

/// Number of cusps whose character is trivial (the ones contributing
/// cohomology).
int cusp_count(const std::vector<CuspCharacter>& characters);

struct GrowthRow {
  int m = 0;
  Real alpha, beta, defect;  // defect = per-cusp (alpha+beta)/2
  Real ratio;                // defect / (m log m)
};

/// Scan over the n=1 symmetric-power family using its closed-form spectral
/// data (ladder lambda = (m/2+1, m/2, -m/2-1), dims (1,2,1), and the joint
/// eigenvalues a = j-m/2+1, j-m/2 with b^2 = 2(j+1)(m-j)); rows skipped with
/// m < 1 are diagnostic, not errors.
std::vector<GrowthRow> defect_growth_scan(int m_lo, int m_hi, int stride,
                                          const PrecisionContext& ctx);

/// Synthesizes the closed-form joint-eigenvalue list of the symmetric-power
/// family without building the complex; used by the scan and by large-m
/// checks.
std::vector<VqabEntry> sym_power_vqab(int m);
LambdaLadder sym_power_ladder(int m);
CohomologyDims sym_power_dims();

}  // namespace cusptorsion
