#include "cusptorsion/quadrature.hpp"

namespace cusptorsion {

namespace {

// Weighted integrand value at the node k*h: node t = tanh((pi/2) sinh(kh)),
// weight (pi/2) h cosh(kh) / cosh^2((pi/2) sinh(kh)).  The h factor is applied
// by the caller.
Real node_term(const std::function<Real(const Real&, const Real&)>& f, const Real& kh,
               const Real& half_pi, const Real& w_min) {
  Real u = half_pi * sinh(kh);
  Real ch = cosh(u);
  Real w = half_pi * cosh(kh) / (ch * ch);
  if (w < w_min) return Real(0);
  Real t = tanh(u);
  Real dist = 2 / (exp(2 * abs(u)) + 1);  // 1 - |t| without cancellation
  return w * f(t, dist);
}

}  // namespace

QuadratureResult de_integrate(const std::function<Real(const Real&, const Real&)>& f,
                              const PrecisionContext& ctx) {
  ScopedPrecision scope(ctx);
  const int digits = ctx.digits;
  const Real half_pi = pi_value() / 2;
  const Real ln10 = log(Real(10));
  // Truncate where the weight alone is negligible; the extra factor 2 leaves
  // room for integrands growing algebraically at the endpoints.
  const Real t_max = asinh(2 * (digits + 2 * kGuardDigits) * ln10 / pi_value());
  const Real w_min = pow10(-2 * (digits + 2 * kGuardDigits));
  const Real tol = pow10(-(digits + 6));

  Real h(1);
  Real sum = node_term(f, Real(0), half_pi, w_min);
  for (long k = 1; k * h <= t_max; ++k) {
    sum += node_term(f, k * h, half_pi, w_min);
    sum += node_term(f, -k * h, half_pi, w_min);
  }
  Real value = h * sum;

  const int max_level = 14;
  for (int level = 1; level <= max_level; ++level) {
    h /= 2;
    Real odd_sum(0);
    for (long k = 1; k * h <= t_max; k += 2) {
      odd_sum += node_term(f, k * h, half_pi, w_min);
      odd_sum += node_term(f, -k * h, half_pi, w_min);
    }
    Real refined = value / 2 + h * odd_sum;
    Real change = abs(refined - value);
    value = refined;
    if (change <= tol * std::max(Real(1), abs(value)) && level >= 3) {
      return {value, change, level};
    }
  }
  throw NumericError("tanh-sinh quadrature did not converge at " + std::to_string(digits) +
                     " digits");
}

QuadratureResult de_integrate_ab(const std::function<Real(const Real&)>& f, const Real& a,
                                 const Real& b, const PrecisionContext& ctx) {
  ScopedPrecision scope(ctx);
  if (a == b) return {Real(0), Real(0), 0};
  const Real mid = (a + b) / 2;
  const Real half_width = (b - a) / 2;
  auto g = [&](const Real& t, const Real&) { return f(mid + half_width * t); };
  QuadratureResult r = de_integrate(g, ctx);
  r.value *= half_width;
  r.error_estimate *= abs(half_width);
  return r;
}

}  // namespace cusptorsion
