#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

#include "cusptorsion/rational.hpp"

namespace cusptorsion {

/// Arbitrary-precision real. Precision travels with each value; new values
/// pick up the thread's current default, which ScopedPrecision manages.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Decimal digits of working precision for all numeric evaluation.
struct PrecisionContext {
  int digits = 64;

  PrecisionContext() = default;
  explicit PrecisionContext(int d) : digits(d) {
    if (d < 16) throw ValidationError("precision must be at least 16 digits");
  }
};

/// Guard digits added on top of the requested precision so that tolerances
/// stated at `digits` are met after roundoff in long sums.
inline constexpr int kGuardDigits = 12;

/// Sets the default precision for the lifetime of the scope. The underlying
/// default is process-global, so concurrent scopes must carry equal digits;
/// every parallel path in this project shares one context.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(const PrecisionContext& ctx) : saved_(Real::default_precision()) {
    Real::default_precision(static_cast<unsigned>(ctx.digits + kGuardDigits));
  }
  ~ScopedPrecision() { Real::default_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  unsigned saved_;
};

/// Exact conversion at the current working precision.
Real to_real(const Rational& q);
/// Requires a purely real value.
Real to_real(const GQ& z);

Real pi_value();
Real pow10(int e);

/// Round-to-nearest decimal with `digits` significant digits, C locale.
std::string decimal_string(const Real& x, int digits);

/// Best rational p/q with q <= max_den such that |x - p/q| <= tol, if any.
/// Continued-fraction reconstruction; deterministic.
bool nearest_rational(const Real& x, const Real& tol, unsigned long max_den, Rational* out);

}  // namespace cusptorsion
