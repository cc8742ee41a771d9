#include <doctest.h>

#include <map>
#include <set>
#include <tuple>
#include <random>
#include <sstream>

#include "cusptorsion/defects.hpp"
#include "cusptorsion/kostant.hpp"
#include "cusptorsion/weights.hpp"
#include "helpers.hpp"

using namespace cusptorsion;
using testutil::rat;
using testutil::random_strip_bundle;

namespace {

Matrix<GQ> k2_matrix(const CochainComplex& cx, int q) {
  Matrix<GQ> k2(cx.dims[q], cx.dims[q]);
  if (q + 1 < cx.degrees()) k2 = cx.dstar[q + 1] * cx.d[q];
  if (q > 0) k2 = k2 + cx.d[q - 1] * cx.dstar[q];
  return k2;
}

Matrix<GQ> wn_matrix(const CochainComplex& cx, const RepBundle& rep, int q) {
  Matrix<GQ> w = wop_matrix(cx, rep, q);
  for (int i = 0; i < w.rows(); ++i) w(i, i) += GQ(Rational(cx.n));
  return w;
}

// exact dimension of ker(W+n-a) cap ker(K^2-b2) in the full degree-q space
int joint_eigen_dim(const CochainComplex& cx, const RepBundle& rep, int q, const Rational& a,
                    const Rational& b2) {
  Matrix<GQ> wa = wn_matrix(cx, rep, q);
  for (int i = 0; i < wa.rows(); ++i) wa(i, i) -= GQ(a);
  Matrix<GQ> kb = k2_matrix(cx, q);
  for (int i = 0; i < kb.rows(); ++i) kb(i, i) -= GQ(b2);
  return kernel_basis(vstack(wa, kb)).cols();
}

RepBundle conjugated(const RepBundle& rep, const Matrix<GQ>& p) {
  Matrix<GQ> pinv = invert(p);
  RepBundle out = rep;
  for (auto& ni : out.N) ni = pinv * (ni * p);
  out.H = pinv * (out.H * p);
  out.gram = p.conj_transpose() * (out.gram * p);
  return out;
}

std::multiset<std::tuple<int, Rational, Rational, int>> exact_vqab_multiset(
    const std::vector<VqabEntry>& entries) {
  std::multiset<std::tuple<int, Rational, Rational, int>> out;
  for (const VqabEntry& e : entries) {
    REQUIRE(e.a.is_exact());
    REQUIRE(e.b2.is_exact());
    out.insert({e.q, *e.a.exact, *e.b2.exact, e.mult});
  }
  return out;
}

}  // namespace

TEST_SUITE("kostant") {

TEST_CASE("symmetric power bundle basics") {
  RepBundle rep0 = build_sym_power_rep(0);
  CHECK(rep0.dimV == 1);
  CHECK(rep0.N[0].is_zero());
  CHECK(rep0.N[1].is_zero());
  CHECK(rep0.H.is_zero());

  RepBundle rep1 = build_sym_power_rep(1);
  CHECK(rep1.H(0, 0) == GQ(rat(-1, 2)));
  CHECK(rep1.H(1, 1) == GQ(rat(1, 2)));
  CHECK(rep1.N[0](1, 0) == GQ(1));  // raising with coefficient m-k = 1
  CHECK(rep1.N[1](1, 0) == GQ(rat(0), rat(1)));
  CHECK(is_admissible(rep1));
}

TEST_CASE("bundle validation rejects broken structure") {
  RepBundle rep = build_sym_power_rep(2);
  RepBundle bad = rep;
  bad.N[1](0, 2) = GQ(1);  // lowers weight; breaks [H,N]=N
  CHECK_THROWS_AS(validate_rep(bad), ValidationError);
  RepBundle bad2 = rep;
  bad2.N[1] = Matrix<GQ>(3, 3);
  bad2.N[1](1, 0) = GQ(1);
  bad2.N[1](2, 0) = GQ(1);  // not a multiple of N1 on the strip: breaks [H,N]=N
  CHECK_THROWS_AS(validate_rep(bad2), ValidationError);
  RepBundle bad3 = rep;
  bad3.gram(0, 1) = GQ(1);  // not Hermitian
  CHECK_THROWS_AS(validate_rep(bad3), ValidationError);
}

TEST_CASE("non-commuting actions are rejected") {
  RepBundle rep;
  rep.n = 1;
  rep.dimV = 3;
  Matrix<GQ> n1(3, 3), n2(3, 3), h(3, 3);
  n1(1, 0) = GQ(1);
  n2(2, 1) = GQ(1);  // [n1, n2] != 0 on the chain 0->1->2
  h(0, 0) = GQ(0);
  h(1, 1) = GQ(1);
  h(2, 2) = GQ(2);
  rep.N = {n1, n2};
  rep.H = h;
  rep.gram = Matrix<GQ>::identity(3);
  CHECK_THROWS_AS(validate_rep(rep), ValidationError);
}

TEST_CASE("exterior complex dimensions and the differential pattern") {
  RepBundle rep = build_sym_power_rep(2);
  CochainComplex cx = exterior_complex(rep);
  CHECK(cx.dims == std::vector<int>{3, 6, 3});

  // first-degree image of the lowest vector: coefficients m-k in both
  // generator directions
  RepBundle rep1 = build_sym_power_rep(1);
  CochainComplex cx1 = exterior_complex(rep1);
  CHECK(cx1.d[0](1, 0) == GQ(1));                    // e1 (x) v1 entry
  CHECK(cx1.d[0](2 + 1, 0) == GQ(rat(0), rat(1)));   // e2 (x) v1 entry, coefficient i
}

TEST_CASE("trivial action gives a zero differential and full harmonics") {
  RepBundle rep = build_sym_power_rep(0);
  CochainComplex cx = exterior_complex(rep);
  CHECK(cx.d[0].is_zero());
  CHECK(cx.d[1].is_zero());
  HarmonicDecomposition h = harmonic_spaces(cx, rep);
  CHECK(h.dims == std::vector<int>{1, 2, 1});
  CHECK(vqab_decomposition(cx, rep).empty());
}

TEST_CASE("Kostant Laplacian spectrum on degree 0 for m=2") {
  RepBundle rep = build_sym_power_rep(2);
  CochainComplex cx = exterior_complex(rep);
  Matrix<GQ> k2 = k2_matrix(cx, 0);
  // 2(k+1)(m-k) on v_k
  for (int k = 0; k <= 2; ++k)
    for (int j = 0; j <= 2; ++j)
      CHECK(k2(k, j) == (k == j ? GQ(rat(2 * (k + 1) * (2 - k))) : GQ(0)));
}

TEST_CASE("harmonic spaces of the symmetric powers") {
  for (int m = 1; m <= 6; ++m) {
    RepBundle rep = build_sym_power_rep(m);
    CochainComplex cx = exterior_complex(rep);
    HarmonicDecomposition h = harmonic_spaces(cx, rep);
    CHECK(h.dims == std::vector<int>{1, 2, 1});
    CHECK(h.plus_dim == 1);
    CHECK(h.minus_dim == 1);
    // generators: v_m in degree 0, v_0 in top degree
    CHECK(h.bases[0].cols() == 1);
    for (int r = 0; r < m; ++r) CHECK(h.bases[0](r, 0).is_zero());
    CHECK_FALSE(h.bases[0](m, 0).is_zero());
    CHECK(h.bases[2].cols() == 1);
    for (int r = 1; r <= m; ++r) CHECK(h.bases[2](r, 0).is_zero());
    CHECK_FALSE(h.bases[2](0, 0).is_zero());
  }
}

TEST_CASE("weight spectrum on harmonics matches the eigenvalue ladder") {
  for (int m = 1; m <= 50; ++m) {
    RepBundle rep = build_sym_power_rep(m);
    CochainComplex cx = exterior_complex(rep);
    HarmonicDecomposition h = harmonic_spaces(cx, rep);
    LambdaLadder lad = sym_power_ladder(m);
    REQUIRE(h.weights[0].size() == 1);
    CHECK(*h.weights[0][0].value.exact == lad.at(0));
    REQUIRE(h.weights[1].size() == 2);
    CHECK(*h.weights[1][0].value.exact == lad.lam_minus);
    CHECK(*h.weights[1][1].value.exact == lad.lam_plus);
    REQUIRE(h.weights[2].size() == 1);
    CHECK(*h.weights[2][0].value.exact == lad.at(2));
  }
}

TEST_CASE("joint eigenvalue lists of the symmetric powers") {
  for (int m : {1, 2, 3, 4, 7, 10}) {
    RepBundle rep = build_sym_power_rep(m);
    CochainComplex cx = exterior_complex(rep);
    auto got = exact_vqab_multiset(vqab_decomposition(cx, rep));
    auto expected = exact_vqab_multiset(sym_power_vqab(m));
    CHECK(got == expected);
  }
}

TEST_CASE("exact structural identities for random bundles") {
  std::mt19937_64 rng(4242);
  PrecisionContext ctx(48);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    RepBundle rep = trial % 4 == 0 ? build_sym_power_rep(static_cast<int>(rng() % 7))
                                   : random_strip_bundle(rng);
    CochainComplex cx = exterior_complex(rep);
    const int degs = cx.degrees();
    for (int q = 0; q + 1 < degs; ++q) {
      Matrix<GQ> w_here = wn_matrix(cx, rep, q);
      Matrix<GQ> w_up = wn_matrix(cx, rep, q + 1);
      CHECK((w_up * cx.d[q]) == (cx.d[q] * w_here));              // [W, d] = 0
      CHECK((cx.dstar[q + 1] * w_up) == (w_here * cx.dstar[q + 1]));  // [W, d*] = 0
    }
    for (int q = 0; q < degs; ++q) {
      Matrix<GQ> w = wn_matrix(cx, rep, q);
      Matrix<GQ> k2 = k2_matrix(cx, q);
      CHECK((w * k2) == (k2 * w));  // [W, K^2] = 0
    }
    HarmonicDecomposition h = harmonic_spaces(cx, rep, ctx);
    long euler = 0;
    for (int q = 0; q < degs; ++q) euler += (q % 2 == 0 ? 1 : -1) * h.dims[q];
    CHECK(euler == 0);
    ++checked;
  }
  CHECK(checked == 40);
}

TEST_CASE("joint eigenspaces pair across adjacent degrees") {
  // dim of each (W+n, K^2) eigenspace off the kernel equals the entry at q
  // plus the image of the entry from q-1
  std::mt19937_64 rng(515);
  for (int trial = 0; trial < 12; ++trial) {
    RepBundle rep = trial % 3 == 0 ? build_sym_power_rep(2 + static_cast<int>(rng() % 4))
                                   : random_strip_bundle(rng);
    if (!is_admissible(rep)) continue;
    CochainComplex cx = exterior_complex(rep);
    std::vector<VqabEntry> entries = vqab_decomposition(cx, rep);
    std::map<std::tuple<int, Rational, Rational>, int> mult;
    for (const VqabEntry& e : entries) {
      REQUIRE(e.a.is_exact());
      REQUIRE(e.b2.is_exact());
      CHECK(sgn(*e.b2.exact) > 0);
      mult[{e.q, *e.a.exact, *e.b2.exact}] += e.mult;
    }
    std::set<std::pair<Rational, Rational>> keys;
    for (const VqabEntry& e : entries) keys.insert({*e.a.exact, *e.b2.exact});
    for (const auto& [a, b2] : keys) {
      for (int q = 0; q < cx.degrees(); ++q) {
        int expected = 0;
        auto here = mult.find({q, a, b2});
        if (here != mult.end()) expected += here->second;
        auto below = mult.find({q - 1, a, b2});
        if (below != mult.end()) expected += below->second;
        CHECK(joint_eigen_dim(cx, rep, q, a, b2) == expected);
      }
    }
  }
}

TEST_CASE("middle-degree duality for the symmetric powers") {
  for (int m = 1; m <= 12; ++m) {
    RepBundle rep = build_sym_power_rep(m);
    CochainComplex cx = exterior_complex(rep);
    HarmonicDecomposition h = harmonic_spaces(cx, rep);
    for (int q = 0; q < cx.degrees(); ++q) CHECK(h.dims[q] == h.dims[2 * cx.n - q]);
  }
}

TEST_CASE("dense fallback agrees with the graded fast path") {
  std::mt19937_64 rng(77);
  for (int m : {1, 2, 3}) {
    RepBundle rep = build_sym_power_rep(m);
    // random rational change of basis destroys diagonality of H but not the
    // spectra
    Matrix<GQ> p = Matrix<GQ>::identity(m + 1);
    for (int i = 0; i < m + 1; ++i)
      for (int j = 0; j < m + 1; ++j)
        if (i != j && rng() % 2) p(i, j) = GQ(rat(static_cast<long>(rng() % 3) - 1));
    if (det(p).is_zero()) continue;
    RepBundle conj = conjugated(rep, p);
    CHECK(is_admissible(conj));
    CochainComplex cx = exterior_complex(rep);
    CochainComplex cxc = exterior_complex(conj);
    HarmonicDecomposition h1 = harmonic_spaces(cx, rep);
    HarmonicDecomposition h2 = harmonic_spaces(cxc, conj);
    CHECK(h1.dims == h2.dims);
    for (int q = 0; q < cx.degrees(); ++q) {
      REQUIRE(h1.weights[q].size() == h2.weights[q].size());
      for (size_t i = 0; i < h1.weights[q].size(); ++i) {
        CHECK(scalar_eq(h1.weights[q][i].value, h2.weights[q][i].value));
        CHECK(h1.weights[q][i].mult == h2.weights[q][i].mult);
      }
    }
    CHECK(exact_vqab_multiset(vqab_decomposition(cx, rep)) ==
          exact_vqab_multiset(vqab_decomposition(cxc, conj)));
  }
}

TEST_CASE("bundle file round trip and canonical form") {
  RepBundle rep = build_sym_power_rep(2);
  std::string canon = canonical_rep_bundle(rep);
  std::istringstream in(canon);
  RepBundle back = parse_rep_bundle(in);
  CHECK(canonical_rep_bundle(back) == canon);
  CHECK(back.N[0] == rep.N[0]);
  CHECK(back.gram == rep.gram);

  // whitespace-insensitive parse, canonical output has none
  std::istringstream spaced("n = 1\ndimV = 1\nN[1] = 0\nN[2] = 0\nH = 0\n");
  RepBundle tiny = parse_rep_bundle(spaced);
  CHECK(tiny.gram(0, 0) == GQ(1));  // default gram
  CHECK(canonical_rep_bundle(tiny) == "n=1\ndimV=1\nN[1]=0\nN[2]=0\nH=0\ngram=1\n");

  std::istringstream bad("n=1\ndimV=2\nN[1]=0,0;0,0\nN[2]=0,0;0,0\nH=0,0;0,0\njunk=1\n");
  CHECK_THROWS_AS(parse_rep_bundle(bad), ValidationError);
}

TEST_CASE("irrational spectra fall back to clustered numerics") {
  // two weight-0 sources with overlapping raising images and a lopsided
  // gram: the restriction blocks are 2x2 with non-square discriminants
  RepBundle rep;
  rep.n = 1;
  rep.dimV = 4;  // v0, v1 at weight 0; va, vb at weight 1
  Matrix<GQ> n1(4, 4), n2(4, 4), h(4, 4), g(4, 4);
  n1(2, 0) = GQ(1);
  n1(3, 1) = GQ(1);
  n2(3, 0) = GQ(1);
  n2(2, 1) = GQ(1);
  n2(3, 1) = GQ(1);
  h(2, 2) = GQ(1);
  h(3, 3) = GQ(1);
  g(0, 0) = GQ(1);
  g(1, 1) = GQ(1);
  g(2, 2) = GQ(1);
  g(3, 3) = GQ(2);
  rep.N = {n1, n2};
  rep.H = h;
  rep.gram = g;
  CochainComplex cx = exterior_complex(rep);
  PrecisionContext ctx(48);
  std::vector<VqabEntry> entries = vqab_decomposition(cx, rep, ctx);
  REQUIRE(entries.size() == 4);
  ScopedPrecision scope(ctx);
  // independent oracle: the blocks have trace 8 with determinants 11 and 10,
  // so the eigenvalues are 4 -+ sqrt(5) and 4 -+ sqrt(6)
  Real s5 = sqrt(Real(5)), s6 = sqrt(Real(6));
  CHECK(entries[0].q == 0);
  CHECK_FALSE(entries[0].b2.is_exact());
  CHECK_SMALL(entries[0].b2.approx - (4 - s5), -36);
  CHECK_SMALL(entries[1].b2.approx - (4 + s5), -36);
  CHECK(entries[2].q == 1);
  CHECK_SMALL(entries[2].b2.approx - (4 - s6), -36);
  CHECK_SMALL(entries[3].b2.approx - (4 + s6), -36);
  for (const VqabEntry& e : entries) {
    CHECK(e.a.is_exact());  // the grading stays exact on the fast path
    CHECK(e.mult == 1);
  }
  // the defect sum consumes numeric entries; the middle-degree terms vanish
  // since a = 0 there, leaving the two degree-0 logs
  Real lo = sqrt(4 - s5), hi = sqrt(4 + s5);
  Real expected = log((1 + sqrt(1 + lo * lo)) / lo) + log((1 + sqrt(1 + hi * hi)) / hi);
  CHECK_SMALL(beta(entries, ctx) - expected, -36);
}

TEST_CASE("non-admissible bundles are rejected by the joint decomposition") {
  RepBundle rep = build_sym_power_rep(2);
  rep.gram = Matrix<GQ>::identity(3);
  rep.gram(0, 1) = GQ(rat(1, 4));
  rep.gram(1, 0) = GQ(rat(1, 4));  // Hermitian, couples weights, H not self-adjoint
  CochainComplex cx = exterior_complex(rep);
  CHECK_FALSE(is_admissible(rep));
  CHECK_THROWS_AS(vqab_decomposition(cx, rep), ValidationError);
}

}  // TEST_SUITE
