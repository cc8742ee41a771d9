#pragma once

#include "cusptorsion/quadrature.hpp"
#include "cusptorsion/rational.hpp"
#include "cusptorsion/real.hpp"

namespace cusptorsion {

/// Exact value rat * pi^piPow with rat > 0; covers the weight-density
/// integral c_b = Gamma(b) Gamma(1/2) / Gamma(b + 1/2) at integer and
/// half-odd-integer b.
struct ExactConstant {
  Rational rat;
  int pi_pow = 0;  // 0 or 1

  Real value(const PrecisionContext& ctx) const;
  Real log_value(const PrecisionContext& ctx) const;
};

/// c_b for b > 0 with denominator 1 or 2.
/// Integer b: 4^b b! (b-1)! / (2b)!.  b = k+1/2: pi (2k)! / (4^k (k!)^2).
ExactConstant c_b_exact(const Rational& b);

/// c_b = int_R (1+X^2)^(-b-1/2) dX by tanh-sinh quadrature after X = tan(theta).
/// Agrees with c_b_exact to 10^(4-digits) whenever both apply.
Real c_b_numeric(const Real& b, const PrecisionContext& ctx);

/// log c_b for arbitrary b > 0: exact route when 2b is integral, else the
/// Gamma closed form evaluated at working precision.
Real log_c(const Rational& b, const PrecisionContext& ctx);
Real log_c(const Real& b, const PrecisionContext& ctx);

/// log det Delta(a) = log c_|a| - sign(a) log(2|a|); a = 0 is outside the
/// domain (zero mode) and rejected.
Real logdet_delta(const Real& a, const PrecisionContext& ctx);

/// log det(Delta(a)+b^2) - log det(Delta(-a)+b^2) = -2 log((a+sqrt(a^2+b^2))/b).
Real logdet_shifted_diff(const Real& a, const Real& b, const PrecisionContext& ctx);

/// Independent oracle for the shifted determinant difference: evaluates the
/// derivative at s=0 of the analytically continued zeta difference
///   F(s) = (2 Gamma(s+1/2) / (sqrt(pi) Gamma(s))) int_0^a (u^2+b^2)^(-s-1/2) du
/// by central finite differences with step 10^(-digits/4). Returns zeta'(0),
/// the negative of logdet_shifted_diff. Throws NumericError when the
/// Richardson residual exceeds 10^(-digits/4).
Real zeta_diff_numeric(const Real& a, const Real& b, const PrecisionContext& ctx);

}  // namespace cusptorsion
