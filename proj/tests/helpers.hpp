#pragma once

#include <doctest.h>

#include <random>

#include "cusptorsion/kostant.hpp"
#include "cusptorsion/real.hpp"

namespace testutil {

inline cusptorsion::Real tol10(int e) { return cusptorsion::pow10(e); }

// |x| < 10^e under the given precision context
#define CHECK_SMALL(x, e) CHECK(abs(x) < testutil::tol10(e))

inline cusptorsion::Rational rat(long n, long d = 1) { return cusptorsion::make_rational(n, d); }

// Random bundle built from commuting "ladder strips": each strip is a chain
// of weight spaces raised by each generator with its own coefficients, and
// the whole space is a direct sum of strips. Guarantees commuting raising
// operators and [H, N] = N exactly.
inline cusptorsion::RepBundle random_strip_bundle(std::mt19937_64& rng, int n = 1) {
  using namespace cusptorsion;
  int strips = 1 + static_cast<int>(rng() % 2);
  std::vector<int> length(static_cast<size_t>(strips));
  int dimv = 0;
  for (int& l : length) {
    l = 1 + static_cast<int>(rng() % 4);
    dimv += l;
  }
  RepBundle rep;
  rep.n = n;
  rep.dimV = dimv;
  rep.H = Matrix<GQ>(dimv, dimv);
  rep.gram = Matrix<GQ>(dimv, dimv);
  rep.N.assign(static_cast<size_t>(2 * n), Matrix<GQ>(dimv, dimv));
  int base = 0;
  for (int s = 0; s < strips; ++s) {
    Rational w0 = make_rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2));
    for (int t = 0; t < length[static_cast<size_t>(s)]; ++t) {
      rep.H(base + t, base + t) = GQ(w0 + t);
      rep.gram(base + t, base + t) = GQ(rat(1 + static_cast<long>(rng() % 4)));
    }
    for (int g = 0; g < 2 * n; ++g) {
      // scalar multiple of the strip's raising chain per generator; scalars
      // commute, so the family commutes
      GQ scale(rat(static_cast<long>(rng() % 5) - 2), rat(static_cast<long>(rng() % 3) - 1));
      for (int t = 0; t + 1 < length[static_cast<size_t>(s)]; ++t)
        rep.N[static_cast<size_t>(g)](base + t + 1, base + t) = scale * GQ(rat(1 + t));
    }
    base += length[static_cast<size_t>(s)];
  }
  return rep;
}

}  // namespace testutil
