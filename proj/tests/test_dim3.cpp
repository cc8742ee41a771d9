#include <doctest.h>

#include "cusptorsion/dim3.hpp"
#include "helpers.hpp"

using namespace cusptorsion;
using testutil::rat;

TEST_SUITE("dim3") {

TEST_CASE("closed-form sum at small orders") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  // m=1: single summand log((1/2+3/2)/(-1/2+3/2)) = log 2
  CHECK_SMALL(B_m(1, ctx) - log(Real(2)), -66);
  // m=2: both summands equal the log of the golden ratio
  CHECK_SMALL(B_m(2, ctx) - 2 * log((1 + sqrt(Real(5))) / 2), -66);
  CHECK_THROWS_AS(B_m(0, ctx), ValidationError);
}

TEST_CASE("closed-form sum is positive") {
  PrecisionContext ctx(32);
  ScopedPrecision scope(ctx);
  for (int m = 1; m <= 200; ++m) CHECK(B_m(m, ctx) > 0);
}

TEST_CASE("normalized even-power constants") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  // telescoping at l=1: (sqrt 5 - 1)/8
  CHECK_SMALL(b_ell(1, ctx) - (sqrt(Real(5)) - 1) / 8, -66);
  // l=2 through the closed-form sum relation
  CHECK_SMALL(b_ell(2, ctx) - exp(-B_m(4, ctx) / 2) / 6, -65);
  for (int l = 1; l <= 100; ++l) CHECK(b_ell(l, ctx) > 0);
}

TEST_CASE("companion product at l=1") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  Real s5 = sqrt(Real(5));
  Real expected = sqrt((s5 + 1) / (s5 + 2)) / 4;
  CHECK_SMALL(c_ell(1, ctx) - expected, -66);
  for (int l = 1; l <= 60; ++l) CHECK(c_ell(l, ctx) > 0);
}

TEST_CASE("ratio identity between the two products") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  // l = 2 is the normalization point
  CHECK_SMALL(c_ell(2, ctx) / c_ell(2, ctx) - b_ell(2, ctx) / b_ell(2, ctx), -70);
  CHECK(verify_int6b(3, ctx) < pow10(-50));
  CHECK(verify_int6b(64, ctx) < pow10(-50));
}

TEST_CASE("ratio identity deviation scales with the working precision") {
  Real dev16, dev32, dev64;
  {
    PrecisionContext ctx(16);
    ScopedPrecision scope(ctx);
    dev16 = verify_int6b(12, ctx);
    CHECK(dev16 < pow10(-10));
  }
  {
    PrecisionContext ctx(32);
    ScopedPrecision scope(ctx);
    dev32 = verify_int6b(12, ctx);
    CHECK(dev32 < pow10(-24));
  }
  {
    PrecisionContext ctx(64);
    ScopedPrecision scope(ctx);
    dev64 = verify_int6b(12, ctx);
    CHECK(dev64 < pow10(-55));
    // strictly improving: the identity is exact, not approximate
    CHECK(dev64 < dev32);
    CHECK(dev32 < dev16);
  }
}

TEST_CASE("even-power constant against the closed-form sum") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  CHECK_SMALL(b_vs_B_check(1, ctx), -60);
  for (int l = 2; l <= 50; ++l) CHECK(b_vs_B_check(l, ctx) < pow10(-50));
  PrecisionContext low(16);
  ScopedPrecision scope2(low);
  CHECK(b_vs_B_check(5, low) < pow10(-12));
}

TEST_CASE("defect report for the symmetric powers") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  Dim3Report r = defect_dim3(2, 1, ctx);
  CHECK_SMALL(r.per_cusp_defect - (log(Real(4)) + log((1 + sqrt(Real(5))) / 2)), -60);
  CHECK_SMALL(r.total_defect + r.per_cusp_defect, -60);
  CHECK(r.cross_check_residual < pow10(-50));

  Dim3Report none = defect_dim3(2, 0, ctx);
  CHECK(none.total_defect == 0);
  CHECK_SMALL(none.per_cusp_defect - r.per_cusp_defect, -66);

  Dim3Report m4 = defect_dim3(4, 1, ctx);
  CHECK(m4.cross_check_residual < pow10(-50));
  CHECK_THROWS_AS(defect_dim3(0, 1, ctx), ValidationError);
}

TEST_CASE("pipeline and closed form agree across a range") {
  PrecisionContext ctx(48);
  for (int m = 1; m <= 20; ++m) {
    Dim3Report r = defect_dim3(m, 1, ctx);
    ScopedPrecision scope(ctx);
    CHECK(r.cross_check_residual < pow10(-38));
  }
}

TEST_CASE("growth of the closed-form sum") {
  PrecisionContext ctx(16);
  ScopedPrecision scope(ctx);
  for (int m : {2, 10, 100, 500, 2000}) {
    Real ratio = B_m(m, ctx) / (m * log(Real(m)));
    CHECK(ratio > 0);
    CHECK(ratio <= 2);
  }
}

}  // TEST_SUITE
