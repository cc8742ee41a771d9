#include <doctest.h>

#include <random>

#include "cusptorsion/weights.hpp"
#include "helpers.hpp"

using namespace cusptorsion;
using testutil::rat;

namespace {

HighestWeight hw_of(int d, GroupFlavor f, std::vector<Rational> k) {
  HighestWeight hw;
  hw.spec = {d, f};
  hw.k = std::move(k);
  return hw;
}

// dominance-respecting random weight; strongly acyclic when force_acyclic
HighestWeight random_weight(std::mt19937_64& rng, bool force_acyclic) {
  int d = 3 + 2 * static_cast<int>(rng() % 4);  // 3,5,7,9
  int n = (d - 1) / 2;
  GroupFlavor flavor = rng() % 2 ? GroupFlavor::Spin : GroupFlavor::SO0;
  bool half = flavor == GroupFlavor::Spin && rng() % 2;
  HighestWeight hw;
  hw.spec = {d, flavor};
  Rational prev(static_cast<long>(12 + rng() % 10));
  if (half) prev += rat(1, 2);
  for (int i = 0; i < n; ++i) {
    hw.k.push_back(prev);
    prev -= Rational(static_cast<long>(rng() % 3));
  }
  Rational last = prev - Rational(static_cast<long>(rng() % 3));
  if (rng() % 2) last = -last;
  if (abs(last) > prev) last = sgn(last) < 0 ? -prev : prev;
  if (force_acyclic && sgn(last) == 0) last = half ? rat(1, 2) : Rational(1);
  if (!force_acyclic && !half && rng() % 3 == 0) last = 0;
  hw.k.push_back(last);
  return hw;
}

}  // namespace

TEST_SUITE("weights") {

TEST_CASE("validation rules") {
  CHECK_THROWS_AS(validate(hw_of(4, GroupFlavor::SO0, {rat(1), rat(0)})), ValidationError);
  CHECK_THROWS_AS(validate(hw_of(3, GroupFlavor::SO0, {rat(1)})), ValidationError);
  CHECK_THROWS_AS(validate(hw_of(3, GroupFlavor::SO0, {rat(1), rat(2)})), ValidationError);
  CHECK_THROWS_AS(validate(hw_of(3, GroupFlavor::SO0, {rat(1, 2), rat(1, 2)})), ValidationError);
  CHECK_NOTHROW(validate(hw_of(3, GroupFlavor::Spin, {rat(1, 2), rat(-1, 2)})));
  // mixed integrality rejected for both flavors
  CHECK_THROWS_AS(validate(hw_of(7, GroupFlavor::SO0, {rat(3), rat(2), rat(2), rat(1, 2)})),
                  ValidationError);
  CHECK_THROWS_AS(validate(hw_of(7, GroupFlavor::Spin, {rat(3), rat(2), rat(2), rat(1, 2)})),
                  ValidationError);
  CHECK_NOTHROW(
      validate(hw_of(7, GroupFlavor::Spin, {rat(7, 2), rat(5, 2), rat(5, 2), rat(1, 2)})));
}

TEST_CASE("ladder of the symmetric-power family") {
  // m = 4: lambda_0 = m/2+1 = 3, middle +-2, top -3
  HighestWeight hw = hw_of(3, GroupFlavor::Spin, {rat(2), rat(2)});
  LambdaLadder lad = lambda_ladder(hw);
  CHECK(lad.at(0) == rat(3));
  CHECK(lad.lam_plus == rat(2));
  CHECK(lad.lam_minus == rat(-2));
  CHECK(lad.at(2) == rat(-3));
}

TEST_CASE("ladder middle degeneration at k_{n+1} = 0") {
  LambdaLadder lad = lambda_ladder(hw_of(3, GroupFlavor::SO0, {rat(1), rat(0)}));
  CHECK(lad.lam_plus == rat(0));
  CHECK(lad.lam_minus == rat(0));
}

TEST_CASE("ladder for d=5") {
  LambdaLadder lad = lambda_ladder(hw_of(5, GroupFlavor::SO0, {rat(2), rat(1), rat(1)}));
  CHECK(lad.at(0) == rat(4));
  CHECK(lad.at(1) == rat(2));
  CHECK(lad.lam_plus == rat(1));
  CHECK(lad.at(3) == rat(-2));
  CHECK(lad.at(4) == rat(-4));
}

TEST_CASE("negative middle entry picks the positive branch") {
  LambdaLadder lad = lambda_ladder(hw_of(3, GroupFlavor::SO0, {rat(2), rat(-2)}));
  CHECK(lad.at(1) == rat(-2));
  CHECK(lad.lam_plus == rat(2));
  CHECK(lad.lam_minus == rat(-2));
}

TEST_CASE("strong acyclicity is the nonvanishing of the last entry") {
  CHECK(is_strongly_acyclic(hw_of(3, GroupFlavor::Spin, {rat(1, 2), rat(1, 2)})));
  CHECK(is_strongly_acyclic(hw_of(3, GroupFlavor::Spin, {rat(5), rat(5)})));
  CHECK_FALSE(is_strongly_acyclic(hw_of(3, GroupFlavor::SO0, {rat(1), rat(0)})));
  CHECK(is_strongly_acyclic(hw_of(7, GroupFlavor::Spin, {rat(7, 2), rat(5, 2), rat(5, 2), rat(1, 2)})));
}

TEST_CASE("Weyl dimension formula") {
  // Sym^m of the 2-dimensional space has dimension m+1
  for (int m = 0; m <= 12; ++m) {
    HighestWeight hw = hw_of(3, GroupFlavor::Spin, {rat(m, 2), rat(m, 2)});
    CHECK(weyl_dim(hw) == BigInt(m + 1));
  }
  // trivial representation
  CHECK(weyl_dim(hw_of(7, GroupFlavor::SO0, {rat(0), rat(0), rat(0), rat(0)})) == BigInt(1));
  // defining representation of the rank-3 type-D algebra
  CHECK(weyl_dim(hw_of(5, GroupFlavor::SO0, {rat(1), rat(0), rat(0)})) == BigInt(6));
}

TEST_CASE("Weyl dimension is even in the last entry") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 200; ++i) {
    HighestWeight hw = random_weight(rng, true);
    HighestWeight flipped = hw;
    flipped.k.back() = -flipped.k.back();
    CHECK(weyl_dim(hw) == weyl_dim(flipped));
  }
}

TEST_CASE("gap inequalities") {
  CHECK(ladder_gap_check(lambda_ladder(hw_of(3, GroupFlavor::SO0, {rat(2), rat(1)}))));
  CHECK(ladder_gap_check(lambda_ladder(hw_of(5, GroupFlavor::SO0, {rat(2), rat(1), rat(1)}))));
  CHECK_THROWS_AS(ladder_gap_check(lambda_ladder(hw_of(3, GroupFlavor::SO0, {rat(1), rat(0)}))),
                  ValidationError);
}

TEST_CASE("antisymmetry, positivity and gaps over random dominant weights") {
  std::mt19937_64 rng(99);
  int acyclic_seen = 0;
  for (int i = 0; i < 10000; ++i) {
    HighestWeight hw = random_weight(rng, false);
    validate(hw);
    LambdaLadder lad = lambda_ladder(hw);
    const int n = lad.n;
    for (int q = 0; q <= 2 * n; ++q)
      if (q != n) CHECK(lad.at(q) + lad.at(2 * n - q) == 0);
    CHECK(lad.lam_plus == -lad.lam_minus);
    CHECK(lad.lam_plus == abs(hw.k.back()));
    if (is_strongly_acyclic(hw)) {
      ++acyclic_seen;
      for (int q = 0; q < n; ++q) CHECK(sgn(lad.at(q)) > 0);
      CHECK(sgn(lad.lam_plus) > 0);
      CHECK(ladder_gap_check(lad));
    }
  }
  CHECK(acyclic_seen > 5000);
}

TEST_CASE("weight record round trip") {
  HighestWeight hw = parse_weight_record("d=7 flavor=Spin k=7/2,5/2,5/2,1/2");
  CHECK(hw.spec.d == 7);
  CHECK(hw.spec.flavor == GroupFlavor::Spin);
  CHECK(hw.k[3] == rat(1, 2));
  CHECK(format_weight_record(hw) == "d=7 flavor=Spin k=7/2,5/2,5/2,1/2");
  CHECK(parse_weight_record("d=3 k=1,0").spec.flavor == GroupFlavor::SO0);
  CHECK_THROWS_AS(parse_weight_record("d=3 k=1,2"), ValidationError);
  CHECK_THROWS_AS(parse_weight_record("k=1,0"), ValidationError);
  CHECK_THROWS_AS(parse_weight_record("d=3 flavor=Pin k=1,0"), ValidationError);
}

}  // TEST_SUITE
