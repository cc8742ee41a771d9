#include "cusptorsion/spectral.hpp"

#include <algorithm>
#include <map>

namespace cusptorsion {

bool scalar_less(const ScalarRQ& a, const ScalarRQ& b) {
  if (a.exact && b.exact) return *a.exact < *b.exact;
  return a.approx < b.approx;
}

bool scalar_eq(const ScalarRQ& a, const ScalarRQ& b) {
  if (a.exact && b.exact) return *a.exact == *b.exact;
  return a.approx == b.approx;
}

Matrix<Rational> embed_real(const Matrix<GQ>& m) {
  Matrix<Rational> e(2 * m.rows(), 2 * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      const GQ& z = m(i, j);
      e(i, j) = z.re;
      e(i, m.cols() + j) = -z.im;
      e(m.rows() + i, j) = z.im;
      e(m.rows() + i, m.cols() + j) = z.re;
    }
  return e;
}

namespace {

Matrix<Real> to_real_matrix(const Matrix<Rational>& m) {
  Matrix<Real> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = to_real(m(i, j));
  return r;
}

Real frobenius(const Matrix<Real>& m) {
  Real s(0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return sqrt(s);
}

// Lower-triangular Cholesky factor of a symmetric positive definite matrix.
Matrix<Real> cholesky(const Matrix<Real>& g) {
  const int n = g.rows();
  Matrix<Real> l(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      Real s = g(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0) throw InternalError("Cholesky pivot not positive; gram not positive definite");
        l(i, i) = sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return l;
}

// Solves L^T X = B for upper-triangular L^T (L lower-triangular).
Matrix<Real> solve_lt(const Matrix<Real>& l, const Matrix<Real>& b) {
  const int n = l.rows();
  Matrix<Real> x(n, b.cols());
  for (int c = 0; c < b.cols(); ++c) {
    for (int i = n - 1; i >= 0; --i) {
      Real s = b(i, c);
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * x(k, c);
      x(i, c) = s / l(i, i);
    }
  }
  return x;
}

// S = L^T C L^{-T}, symmetric when C is self-adjoint for the gram L L^T.
Matrix<Real> symmetrized_form(const Matrix<Real>& l, const Matrix<Real>& c) {
  Matrix<Real> linv_t = solve_lt(l, Matrix<Real>::identity(l.rows()));
  Matrix<Real> s = l.transpose() * (c * linv_t);
  Matrix<Real> st = s.transpose();
  Matrix<Real> sym(s.rows(), s.cols());
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j) sym(i, j) = (s(i, j) + st(i, j)) / 2;
  return sym;
}

struct NumericSetup {
  Matrix<Real> l;       // Cholesky factor of the embedded block gram
  Matrix<GQ> c;         // exact restriction matrix
  Matrix<Real> s;       // symmetrized form of c
};

NumericSetup numeric_setup(const ApplyFn& apply, const Matrix<GQ>& basis, const Matrix<GQ>& gram) {
  NumericSetup setup;
  setup.c = solve_exact(basis, apply(basis));
  Matrix<GQ> gb = basis.conj_transpose() * (gram * basis);
  setup.l = cholesky(to_real_matrix(embed_real(gb)));
  setup.s = symmetrized_form(setup.l, to_real_matrix(embed_real(setup.c)));
  return setup;
}

std::vector<std::pair<int, int>> cluster_ranges(const std::vector<Real>& sorted, const Real& tol) {
  std::vector<std::pair<int, int>> ranges;
  int start = 0;
  for (int i = 1; i <= static_cast<int>(sorted.size()); ++i) {
    if (i == static_cast<int>(sorted.size()) || sorted[i] - sorted[i - 1] > tol) {
      ranges.emplace_back(start, i);
      start = i;
    }
  }
  return ranges;
}

Real cluster_mean(const std::vector<Real>& v, int lo, int hi) {
  Real s(0);
  for (int i = lo; i < hi; ++i) s += v[i];
  return s / (hi - lo);
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  if (sgn(q) == 0) return Rational(0);
  const BigInt& num = q.get_num();
  const BigInt& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  BigInt rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  return make_rational(rn, rd);
}

Matrix<GQ> minus_scalar(Matrix<GQ> c, const Rational& a) {
  for (int i = 0; i < c.rows(); ++i) c(i, i) -= GQ(a);
  return c;
}

}  // namespace

void jacobi_eigen(Matrix<Real> s, std::vector<Real>* values, Matrix<Real>* vectors,
                  const PrecisionContext& ctx) {
  const int n = s.rows();
  Matrix<Real> v = Matrix<Real>::identity(n);
  const Real tol = pow10(-(ctx.digits + kGuardDigits - 2));
  Real scale = frobenius(s);
  if (scale == 0) scale = 1;
  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    Real off(0);
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
    off = sqrt(2 * off);
    if (off <= tol * scale) break;
    if (sweep == max_sweeps - 1) throw NumericError("Jacobi eigensolver failed to converge");
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (abs(s(p, q)) <= tol * scale / (n * n)) continue;
        Real theta = (s(q, q) - s(p, p)) / (2 * s(p, q));
        Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(1 + theta * theta));
        Real c = 1 / sqrt(1 + t * t);
        Real sn = t * c;
        for (int k = 0; k < n; ++k) {
          Real skp = s(k, p), skq = s(k, q);
          s(k, p) = c * skp - sn * skq;
          s(k, q) = sn * skp + c * skq;
        }
        for (int k = 0; k < n; ++k) {
          Real spk = s(p, k), sqk = s(q, k);
          s(p, k) = c * spk - sn * sqk;
          s(q, k) = sn * spk + c * sqk;
        }
        for (int k = 0; k < n; ++k) {
          Real vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) { return s(a, a) < s(b, b); });
  values->resize(n);
  Matrix<Real> sorted_v(n, n);
  for (int i = 0; i < n; ++i) {
    (*values)[i] = s(order[i], order[i]);
    for (int k = 0; k < n; ++k) sorted_v(k, i) = v(k, order[i]);
  }
  *vectors = sorted_v;
}

std::vector<std::pair<Real, int>> split_values_numeric(const ApplyFn& apply,
                                                       const Matrix<GQ>& basis,
                                                       const Matrix<GQ>& gram,
                                                       const PrecisionContext& ctx) {
  ScopedPrecision scope(ctx);
  if (basis.cols() == 0) return {};
  NumericSetup setup = numeric_setup(apply, basis, gram);
  std::vector<Real> values;
  Matrix<Real> vectors;
  jacobi_eigen(setup.s, &values, &vectors, ctx);
  Real scale = 1;
  for (const Real& v : values) scale = std::max(scale, abs(v));
  const Real tol = pow10(-ctx.digits / 2) * scale;
  std::vector<std::pair<Real, int>> out;
  for (auto [lo, hi] : cluster_ranges(values, tol)) {
    if ((hi - lo) % 2 != 0)
      throw NumericError("eigenvalue cluster with odd embedded multiplicity; clustering ambiguity");
    out.emplace_back(cluster_mean(values, lo, hi), (hi - lo) / 2);
  }
  return out;
}

std::optional<std::vector<ExactEigenPiece>> try_exact_split(const ApplyFn& apply,
                                                            const Matrix<GQ>& basis,
                                                            const Matrix<GQ>& gram,
                                                            const PrecisionContext& ctx) {
  const int r = basis.cols();
  if (r == 0) return std::vector<ExactEigenPiece>{};
  Matrix<GQ> c = solve_exact(basis, apply(basis));

  std::vector<Rational> candidates;
  auto add_candidate = [&](const Rational& v) {
    if (std::find(candidates.begin(), candidates.end(), v) == candidates.end())
      candidates.push_back(v);
  };

  bool diagonal = true;
  for (int i = 0; i < r && diagonal; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j && !c(i, j).is_zero()) {
        diagonal = false;
        break;
      }

  if (diagonal) {
    for (int i = 0; i < r; ++i)
      if (c(i, i).is_real()) add_candidate(c(i, i).re);
  } else if (r == 2) {
    GQ tr = c(0, 0) + c(1, 1);
    GQ dt = c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
    if (tr.is_real() && dt.is_real()) {
      Rational disc = tr.re * tr.re - 4 * dt.re;
      if (auto root = exact_sqrt(disc)) {
        add_candidate((tr.re + *root) / 2);
        add_candidate((tr.re - *root) / 2);
      }
    }
  } else {
    // Numerically locate the spectrum, reconstruct rational candidates, and
    // certify them below with exact kernels.
    std::vector<std::pair<Real, int>> numeric;
    try {
      numeric = split_values_numeric(apply, basis, gram, ctx);
    } catch (const NumericError&) {
      return std::nullopt;
    }
    const Real tol = pow10(-ctx.digits / 2);
    for (const auto& [value, mult] : numeric) {
      Rational cand;
      if (nearest_rational(value, tol, 1ul << 24, &cand)) add_candidate(cand);
    }
  }

  std::sort(candidates.begin(), candidates.end());
  std::vector<ExactEigenPiece> pieces;
  int total = 0;
  for (const Rational& a : candidates) {
    Matrix<GQ> ker = kernel_basis(minus_scalar(c, a));
    if (ker.cols() == 0) continue;
    pieces.push_back({a, basis * ker});
    total += ker.cols();
  }
  if (total != r) return std::nullopt;
  return pieces;
}

std::vector<JointPiece> joint_split_numeric(const ApplyFn& apply_a, const ApplyFn& apply_b,
                                            const Matrix<GQ>& basis, const Matrix<GQ>& gram,
                                            const PrecisionContext& ctx) {
  ScopedPrecision scope(ctx);
  if (basis.cols() == 0) return {};
  NumericSetup sa = numeric_setup(apply_a, basis, gram);
  Matrix<GQ> cb = solve_exact(basis, apply_b(basis));
  Matrix<Real> sb = symmetrized_form(sa.l, to_real_matrix(embed_real(cb)));

  std::vector<Real> values;
  Matrix<Real> vectors;
  jacobi_eigen(sa.s, &values, &vectors, ctx);
  Real scale = 1;
  for (const Real& v : values) scale = std::max(scale, abs(v));
  const Real tol = pow10(-ctx.digits / 2) * scale;
  const Real sb_scale = std::max(Real(1), frobenius(sb));

  std::vector<JointPiece> out;
  for (auto [lo, hi] : cluster_ranges(values, tol)) {
    const int csize = hi - lo;
    std::vector<int> cols(csize);
    for (int i = 0; i < csize; ++i) cols[i] = lo + i;
    Matrix<Real> y = vectors.columns(cols);
    // Invariance of the cluster span under the second operator certifies the
    // clustering: a spurious merge or split shows up as a large residual.
    Matrix<Real> sby = sb * y;
    Matrix<Real> m = y.transpose() * sby;
    Matrix<Real> resid = sby - y * m;
    if (frobenius(resid) > pow10(-ctx.digits / 2) * sb_scale)
      throw NumericError("clustering ambiguity: cluster span is not invariant under the companion operator");
    std::vector<Real> bvals;
    Matrix<Real> bvecs;
    jacobi_eigen(m, &bvals, &bvecs, ctx);
    Real bscale = 1;
    for (const Real& v : bvals) bscale = std::max(bscale, abs(v));
    const Real btol = pow10(-ctx.digits / 2) * bscale;
    for (auto [blo, bhi] : cluster_ranges(bvals, btol)) {
      if ((bhi - blo) % 2 != 0)
        throw NumericError("joint eigenvalue cluster with odd embedded multiplicity");
      out.push_back({cluster_mean(values, lo, hi), cluster_mean(bvals, blo, bhi), (bhi - blo) / 2});
    }
  }
  return out;
}

}  // namespace cusptorsion
