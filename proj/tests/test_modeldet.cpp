#include <doctest.h>

#include "cusptorsion/modeldet.hpp"
#include "helpers.hpp"

using namespace cusptorsion;
using testutil::rat;

TEST_SUITE("modeldet") {

TEST_CASE("closed-form weight-density constants") {
  CHECK(c_b_exact(rat(1)).rat == rat(2));
  CHECK(c_b_exact(rat(1)).pi_pow == 0);
  CHECK(c_b_exact(rat(2)).rat == rat(4, 3));
  CHECK(c_b_exact(rat(1, 2)).rat == rat(1));
  CHECK(c_b_exact(rat(1, 2)).pi_pow == 1);
  CHECK(c_b_exact(rat(3, 2)).rat == rat(1, 2));  // pi/2
  CHECK_THROWS_AS(c_b_exact(rat(0)), ValidationError);
  CHECK_THROWS_AS(c_b_exact(rat(-1)), ValidationError);
  CHECK_THROWS_AS(c_b_exact(rat(1, 3)), ValidationError);
}

TEST_CASE("closed form agrees with the Gamma quotient") {
  // independent route: lgamma at working precision vs the rational formula
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  for (int twice_b = 1; twice_b <= 14; ++twice_b) {
    Rational b = make_rational(twice_b, 2);
    Real gamma_route = log_c(to_real(b), ctx);
    CHECK_SMALL(c_b_exact(b).log_value(ctx) - gamma_route, -66);
  }
}

TEST_CASE("quadrature route matches the closed form") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  for (int twice_b = 1; twice_b <= 20; ++twice_b) {
    Rational b = make_rational(twice_b, 2);
    CHECK(abs(c_b_numeric(to_real(b), ctx) - c_b_exact(b).value(ctx)) < pow10(-(64 - 4)));
  }
  // non-half-integral weight against the Gamma route
  Real v = c_b_numeric(Real(3) / 4, ctx);
  CHECK_SMALL(log(v) - log_c(rat(3, 4), ctx), -60);
  CHECK_THROWS_AS(c_b_numeric(Real(0), ctx), ValidationError);
}

TEST_CASE("log det of the model operator") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  CHECK_SMALL(logdet_delta(Real(1), ctx), -70);  // log 2 - log 2
  CHECK_SMALL(logdet_delta(Real(-1), ctx) - 2 * log(Real(2)), -70);
  CHECK_SMALL(logdet_delta(Real(1) / 2, ctx) - log(pi_value()), -70);
  CHECK_THROWS_AS(logdet_delta(Real(0), ctx), ValidationError);
}

TEST_CASE("shifted determinant difference closed form") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  CHECK(logdet_shifted_diff(Real(0), Real(7), ctx) == 0);
  CHECK_SMALL(logdet_shifted_diff(Real(3), Real(4), ctx) + 2 * log(Real(2)), -70);
  CHECK_SMALL(logdet_shifted_diff(Real(-3), Real(4), ctx) - 2 * log(Real(2)), -70);
  CHECK_THROWS_AS(logdet_shifted_diff(Real(1), Real(0), ctx), ValidationError);
  // antisymmetry in the shift
  for (int ai = -7; ai <= 7; ai += 3)
    for (int bi = 1; bi <= 5; bi += 2) {
      Real a(ai), b = Real(bi) / 2;
      CHECK_SMALL(logdet_shifted_diff(a, b, ctx) + logdet_shifted_diff(-a, b, ctx), -68);
    }
}

TEST_CASE("zeta derivative oracle") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  CHECK(zeta_diff_numeric(Real(0), Real(2), ctx) == 0);
  CHECK_SMALL(zeta_diff_numeric(Real(3), Real(4), ctx) - 2 * log(Real(2)), -6);
  CHECK_SMALL(zeta_diff_numeric(Real(1), Real(1), ctx) - 2 * log(1 + sqrt(Real(2))), -6);
  // oracle vs closed form on a sample of the acceptance grid
  for (int a : {-5, -2, 0, 1, 4})
    for (const Real& b : {Real(1) / 2, Real(2)}) {
      CHECK_SMALL(logdet_shifted_diff(Real(a), b, ctx) + zeta_diff_numeric(Real(a), b, ctx), -6);
    }
  CHECK_THROWS_AS(zeta_diff_numeric(Real(1), Real(-1), ctx), ValidationError);
}

TEST_CASE("vanishing-offset limit of the shifted difference") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  const Real a(2);
  for (const Real& b : {pow10(-3), pow10(-6)}) {
    Real drift = logdet_shifted_diff(a, b, ctx) + 2 * log(2 * a / b);
    CHECK(abs(drift) < 10 * b * b);
  }
}

TEST_CASE("reduced precision still meets its own tolerance") {
  PrecisionContext ctx(16);
  ScopedPrecision scope(ctx);
  CHECK(abs(c_b_numeric(Real(2), ctx) - to_real(rat(4, 3))) < pow10(-12));
  CHECK_SMALL(zeta_diff_numeric(Real(1), Real(2), ctx) +
                  logdet_shifted_diff(Real(1), Real(2), ctx),
              -4);
}

}  // TEST_SUITE
