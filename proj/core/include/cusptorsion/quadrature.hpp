#pragma once

#include <functional>

#include "cusptorsion/real.hpp"

namespace cusptorsion {

struct QuadratureResult {
  Real value;
  Real error_estimate;
  int levels = 0;
};

/// Integral over (-1,1) by the tanh-sinh (double exponential) rule.
/// The integrand receives the node t and its distance 1-|t| to the nearer
/// endpoint, computed without cancellation, so algebraically singular
/// endpoint behaviour can be evaluated accurately.
/// Throws NumericError when level doubling fails to converge.
QuadratureResult de_integrate(const std::function<Real(const Real&, const Real&)>& f,
                              const PrecisionContext& ctx);

/// Integral of a smooth integrand over [a, b] (affine map onto (-1,1)).
/// Orientation respected: a > b yields the negated integral.
QuadratureResult de_integrate_ab(const std::function<Real(const Real&)>& f, const Real& a,
                                 const Real& b, const PrecisionContext& ctx);

}  // namespace cusptorsion
