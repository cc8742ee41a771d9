#include "cusptorsion/real.hpp"

#include <boost/math/constants/constants.hpp>

namespace cusptorsion {

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const GQ& z) {
  if (!z.is_real()) throw InternalError("to_real on a non-real Gaussian rational");
  return to_real(z.re);
}

Real pi_value() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real pow10(int e) { return pow(Real(10), e); }

std::string decimal_string(const Real& x, int digits) {
  return x.str(digits, std::ios_base::fmtflags());
}

bool nearest_rational(const Real& x, const Real& tol, unsigned long max_den, Rational* out) {
  // Continued fractions with convergents p/q; stop once within tol. All
  // intermediate arithmetic runs at the precision x carries, independent of
  // the ambient default, so candidates are not lost to conversion roundoff.
  const mpfr_prec_t prec = mpfr_get_prec(x.backend().data());
  mpfr_t rem, fl, frac, cand, diff;
  mpfr_init2(rem, prec);
  mpfr_init2(fl, prec);
  mpfr_init2(frac, prec);
  mpfr_init2(cand, prec);
  mpfr_init2(diff, prec);
  mpfr_set(rem, x.backend().data(), MPFR_RNDN);

  BigInt pm1 = 1, qm1 = 0;  // p_{k-1}, q_{k-1}
  BigInt pm2 = 0, qm2 = 1;  // p_{k-2}, q_{k-2}
  bool found = false;
  for (int iter = 0; iter < 128 && !found; ++iter) {
    mpfr_floor(fl, rem);
    BigInt a;
    mpfr_get_z(a.get_mpz_t(), fl, MPFR_RNDN);
    BigInt p = a * pm1 + pm2;
    BigInt q = a * qm1 + qm2;
    if (q > BigInt(max_den)) break;
    Rational candidate = make_rational(p, q);
    mpfr_set_q(cand, candidate.get_mpq_t(), MPFR_RNDN);
    mpfr_sub(diff, x.backend().data(), cand, MPFR_RNDN);
    mpfr_abs(diff, diff, MPFR_RNDN);
    if (mpfr_cmp(diff, tol.backend().data()) <= 0) {
      *out = candidate;
      found = true;
      break;
    }
    pm2 = pm1;
    qm2 = qm1;
    pm1 = p;
    qm1 = q;
    mpfr_sub(frac, rem, fl, MPFR_RNDN);
    if (mpfr_zero_p(frac)) break;
    mpfr_ui_div(rem, 1, frac, MPFR_RNDN);
  }
  mpfr_clears(rem, fl, frac, cand, diff, static_cast<mpfr_ptr>(nullptr));
  return found;
}

}  // namespace cusptorsion
