#pragma once

#include "cusptorsion/defects.hpp"

namespace cusptorsion {

/// Closed-form sum B(m) over the spectral ladder of the symmetric-power
/// family: sum_{k=0}^{m-1} of the log of a ratio of shifted radicals sharing
/// the discriminant (m/2-k)^2, (m/2-k-1)^2 + 2(1+k)(m-k).
Real B_m(int m, const PrecisionContext& ctx);

/// Normalized even-power constant b(l) = (1/(2l+2)) prod_{k=-l}^{l-1} (...)^(1/2).
Real b_ell(int l, const PrecisionContext& ctx);

/// Companion product c(l) with the trailing square-root factor.
Real c_ell(int l, const PrecisionContext& ctx);

/// max_{2 <= l <= l_max} |c(l)/c(2) - b(l)/b(2)|.
Real verify_int6b(int l_max, const PrecisionContext& ctx);

/// |b(l) - exp(-B(2l)/2)/(2l+2)|.
Real b_vs_B_check(int l, const PrecisionContext& ctx);

struct Dim3Report {
  int m = 0;
  int kappa = 0;
  Real b_m;                  // B(m)
  Real per_cusp_defect;      // log(m+2) + B(m)/2
  Real total_defect;         // -kappa * per-cusp defect
  Real cross_check_residual; // |per-cusp defect - (alpha+beta)/2| via the full pipeline
};

/// Closed-form defect for the symmetric-power family, cross-checked against
/// the general spectral pipeline (complex construction, harmonic spaces,
/// joint eigenvalues, defect sums).
Dim3Report defect_dim3(int m, int kappa, const PrecisionContext& ctx);

}  // namespace cusptorsion
