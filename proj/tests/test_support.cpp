#include <doctest.h>

#include <random>

#include "cusptorsion/matrix.hpp"
#include "cusptorsion/quadrature.hpp"
#include "helpers.hpp"

using namespace cusptorsion;
using testutil::rat;

TEST_SUITE("support") {

TEST_CASE("rational parse and format") {
  CHECK(parse_rational("3/4") == rat(3, 4));
  CHECK(parse_rational("-6/8") == rat(-3, 4));
  CHECK(parse_rational("7") == rat(7));
  CHECK(format_rational(rat(-6, 8)) == "-3/4");
  CHECK_THROWS_AS(parse_rational("1.5"), ValidationError);
  CHECK_THROWS_AS(parse_rational("a/b"), ValidationError);
  CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
}

TEST_CASE("gaussian rational parse and format round trip") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    GQ z(rat(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 6)),
         rat(static_cast<long>(rng() % 21) - 10, 1 + static_cast<long>(rng() % 6)));
    CHECK(parse_gaussian(format_gaussian(z)) == z);
  }
  CHECK(format_gaussian(GQ(rat(1, 2), rat(-3, 4))) == "1/2-3/4*i");
  CHECK(format_gaussian(GQ(rat(0), rat(2, 3))) == "2/3*i");
  CHECK(parse_gaussian("-1+2*i") == GQ(rat(-1), rat(2)));
  GQ q = parse_gaussian("1/2-3/4*i");
  CHECK(q / q == GQ(1));
}

TEST_CASE("kernel, rank, det over Q(i)") {
  Matrix<GQ> a(2, 3);
  a(0, 0) = GQ(1);
  a(0, 1) = GQ(2);
  a(0, 2) = GQ(3);
  a(1, 0) = GQ(2);
  a(1, 1) = GQ(4);
  a(1, 2) = GQ(6);
  CHECK(rank_of(a) == 1);
  Matrix<GQ> k = kernel_basis(a);
  CHECK(k.cols() == 2);
  CHECK((a * k).is_zero());

  Matrix<GQ> b(2, 2);
  b(0, 0) = GQ(rat(0), rat(1));  // i
  b(0, 1) = GQ(1);
  b(1, 0) = GQ(-1);
  b(1, 1) = GQ(rat(0), rat(1));
  // det = i*i - (1)(-1) = -1 + 1 = 0
  CHECK(det(b).is_zero());
  b(1, 1) = GQ(rat(0), rat(2));
  CHECK(det(b) == GQ(rat(-1)));
}

TEST_CASE("solve and operator restriction") {
  Matrix<GQ> u(3, 2);
  u(0, 0) = GQ(1);
  u(1, 1) = GQ(1);
  u(2, 0) = GQ(2);
  u(2, 1) = GQ(-1);
  Matrix<GQ> op = Matrix<GQ>::identity(3).scaled(GQ(rat(5)));
  Matrix<GQ> c = restrict_operator(op, u);
  CHECK(c.rows() == 2);
  CHECK(c(0, 0) == GQ(rat(5)));
  CHECK(c(0, 1) == GQ(0));
  CHECK(c(1, 1) == GQ(rat(5)));
}

TEST_CASE("real elimination with pivoting") {
  PrecisionContext ctx(32);
  ScopedPrecision scope(ctx);
  Matrix<Real> a(3, 3);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = Real(static_cast<double>(rng() % 19) - 9);
  Real tol = pow10(-20);
  int r = rank_of(a, tol);
  CHECK(r >= 2);  // random integer matrix; singular only by accident
  Matrix<Real> k = kernel_basis(a, tol);
  CHECK(k.cols() == 3 - r);
}

TEST_CASE("nearest rational reconstruction") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  Rational out;
  CHECK(nearest_rational(to_real(rat(22, 7)), pow10(-40), 1000, &out));
  CHECK(out == rat(22, 7));
  CHECK(nearest_rational(Real(3), pow10(-40), 1000, &out));
  CHECK(out == rat(3));
  CHECK_FALSE(nearest_rational(sqrt(Real(2)), pow10(-40), 1 << 20, &out));
}

TEST_CASE("double exponential quadrature") {
  PrecisionContext ctx(64);
  ScopedPrecision scope(ctx);
  // int_{-1}^{1} dt/(1+t^2) = pi/2
  auto f = [](const Real& t, const Real&) { return 1 / (1 + t * t); };
  QuadratureResult r = de_integrate(f, ctx);
  CHECK_SMALL(r.value - pi_value() / 2, -60);
  // smooth integral on [0,3]
  auto g = [](const Real& u) { return exp(-u); };
  QuadratureResult s = de_integrate_ab(g, Real(0), Real(3), ctx);
  CHECK_SMALL(s.value - (1 - exp(Real(-3))), -60);
  // orientation
  QuadratureResult sr = de_integrate_ab(g, Real(3), Real(0), ctx);
  CHECK_SMALL(sr.value + s.value, -60);
  // endpoint singularity: int_{-1}^1 (1-t)^(-1/2) dt = 2 sqrt 2
  auto h = [](const Real& t, const Real& dist) {
    return t > 0 ? 1 / sqrt(dist) : 1 / sqrt(1 - t);
  };
  QuadratureResult e = de_integrate(h, ctx);
  CHECK_SMALL(e.value - 2 * sqrt(Real(2)), -55);
}

TEST_CASE("squared section determinant of a rational map") {
  Matrix<Rational> j(2, 4);
  j(0, 0) = 1;
  j(1, 1) = 1;
  j(0, 2) = -1;
  j(1, 3) = -1;
  CHECK(psv2(j) == rat(4));  // two singular values sqrt(2)
  Matrix<Rational> z(2, 3);
  CHECK(psv2(z) == rat(1));
  Matrix<Rational> one(1, 1);
  one(0, 0) = rat(3);
  CHECK(psv2(one) == rat(9));
}

}  // TEST_SUITE
