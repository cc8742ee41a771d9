#include "cusptorsion/modeldet.hpp"

namespace cusptorsion {

Real ExactConstant::value(const PrecisionContext& ctx) const {
  ScopedPrecision scope(ctx);
  Real v = to_real(rat);
  if (pi_pow != 0) v *= pow(pi_value(), pi_pow);
  return v;
}

Real ExactConstant::log_value(const PrecisionContext& ctx) const {
  ScopedPrecision scope(ctx);
  return log(to_real(rat)) + pi_pow * log(pi_value());
}

ExactConstant c_b_exact(const Rational& b) {
  if (sgn(b) <= 0) throw ValidationError("c_b requires b > 0");
  if (b.get_den() == 1) {
    unsigned long v = b.get_num().get_ui();
    Rational rat(factorial(v) * factorial(v - 1));
    rat *= Rational(BigInt(1) << (2 * v));  // 4^b
    rat /= factorial(2 * v);
    rat.canonicalize();
    return {rat, 0};
  }
  if (b.get_den() == 2) {
    Rational shifted = b - Rational(1, 2);
    unsigned long k = shifted.get_num().get_ui();  // b = k + 1/2
    Rational rat(factorial(2 * k));
    rat /= Rational(BigInt(1) << (2 * k));
    rat /= Rational(factorial(k) * factorial(k));
    rat.canonicalize();
    return {rat, 1};
  }
  throw ValidationError("c_b_exact needs integral or half-integral b; use c_b_numeric");
}

Real c_b_numeric(const Real& b, const PrecisionContext& ctx) {
  if (b <= 0) throw ValidationError("c_b requires b > 0");
  ScopedPrecision scope(ctx);
  // X = tan(theta), theta = (pi/2) t: c_b = (pi/2) int_{-1}^{1} cos((pi/2)t)^{2b-1} dt.
  const Real half_pi = pi_value() / 2;
  const Real expo = 2 * b - 1;
  auto f = [&](const Real& t, const Real& dist) {
    // cos((pi/2)t) = sin((pi/2)(1-|t|)); the complement form stays accurate
    // at the endpoints where the integrand may be singular.
    Real c = sin(half_pi * dist);
    (void)t;
    return pow(c, expo);
  };
  QuadratureResult r = de_integrate(f, ctx);
  return half_pi * r.value;
}

Real log_c(const Rational& b, const PrecisionContext& ctx) {
  if (sgn(b) <= 0) throw ValidationError("log c_b requires b > 0");
  if (is_half_integer(b)) return c_b_exact(b).log_value(ctx);
  ScopedPrecision scope(ctx);
  return log_c(to_real(b), ctx);
}

Real log_c(const Real& b, const PrecisionContext& ctx) {
  if (b <= 0) throw ValidationError("log c_b requires b > 0");
  ScopedPrecision scope(ctx);
  return lgamma(b) + log(pi_value()) / 2 - lgamma(b + Real(1) / 2);
}

Real logdet_delta(const Real& a, const PrecisionContext& ctx) {
  if (a == 0) throw ValidationError("Delta(0) has a zero mode; log det undefined at a = 0");
  ScopedPrecision scope(ctx);
  int s = a > 0 ? 1 : -1;
  Real aa = abs(a);
  return log_c(aa, ctx) - s * log(2 * aa);
}

Real logdet_shifted_diff(const Real& a, const Real& b, const PrecisionContext& ctx) {
  if (b <= 0) throw ValidationError("shifted determinant difference requires b > 0");
  ScopedPrecision scope(ctx);
  Real root = sqrt(a * a + b * b);
  // For a < 0 the direct numerator cancels; use the conjugate form.
  Real lg = a >= 0 ? log((a + root) / b) : -log((root - a) / b);
  return -2 * lg;
}

namespace {

Real zeta_slope(const Real& a, const Real& b, const Real& s, const PrecisionContext& ctx) {
  auto integrand = [&](const Real& u) { return pow(u * u + b * b, -s - Real(1) / 2); };
  Real integral = de_integrate_ab(integrand, Real(0), a, ctx).value;
  Real prefactor = 2 * tgamma(s + Real(1) / 2) / (sqrt(pi_value()) * tgamma(s));
  return prefactor * integral;
}

}  // namespace

Real zeta_diff_numeric(const Real& a, const Real& b, const PrecisionContext& ctx) {
  if (b <= 0) throw ValidationError("zeta difference requires b > 0");
  ScopedPrecision scope(ctx);
  if (a == 0) return Real(0);
  const Real h = pow10(-ctx.digits / 4);
  auto central = [&](const Real& step) {
    return (zeta_slope(a, b, step, ctx) - zeta_slope(a, b, -step, ctx)) / (2 * step);
  };
  Real d1 = central(h);
  Real d2 = central(h / 2);
  if (abs(d2 - d1) > pow10(-ctx.digits / 4)) {
    throw NumericError("finite-difference residual too large in zeta'(0) evaluation");
  }
  return d1;
}

}  // namespace cusptorsion
