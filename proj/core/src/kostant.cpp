#include "cusptorsion/kostant.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace cusptorsion {

namespace {

// Subsets of {0..n2-1} of each size, lexicographically, with bitmask lookup.
struct SubsetTable {
  std::vector<std::vector<unsigned>> by_size;  // masks
  std::vector<int> index_of_mask;

  explicit SubsetTable(int n2) {
    if (n2 < 0 || n2 > 20) throw ValidationError("number of generators out of supported range");
    by_size.resize(n2 + 1);
    index_of_mask.assign(1u << n2, -1);
    // ascending-mask (colex) order within each size class; callers only need
    // a fixed order shared between builder and lookups
    for (unsigned mask = 0; mask < (1u << n2); ++mask)
      by_size[static_cast<size_t>(__builtin_popcount(mask))].push_back(mask);
    for (int q = 0; q <= n2; ++q)
      for (size_t s = 0; s < by_size[q].size(); ++s) index_of_mask[by_size[q][s]] = static_cast<int>(s);
  }
};

int wedge_sign(unsigned mask, int i) {
  // sign of e_i ^ e_S: parity of |{s in S : s < i}|
  unsigned below = mask & ((1u << i) - 1u);
  return (__builtin_popcount(below) % 2 == 0) ? 1 : -1;
}

// (I_t (x) g) . m with m.rows() = t * g.rows()
Matrix<GQ> kron_left(const Matrix<GQ>& g, const Matrix<GQ>& m) {
  const int k = g.rows();
  const int t = m.rows() / k;
  Matrix<GQ> out(m.rows(), m.cols());
  for (int b = 0; b < t; ++b)
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) {
        const GQ& grs = g(r, s);
        if (grs.is_zero()) continue;
        for (int c = 0; c < m.cols(); ++c) {
          const GQ& v = m(b * k + s, c);
          if (v.is_zero()) continue;
          out(b * k + r, c) += grs * v;
        }
      }
  return out;
}

// m . (I_t (x) g) with m.cols() = t * g.rows()
Matrix<GQ> kron_right(const Matrix<GQ>& m, const Matrix<GQ>& g) {
  const int k = g.rows();
  const int t = m.cols() / k;
  Matrix<GQ> out(m.rows(), m.cols());
  for (int b = 0; b < t; ++b)
    for (int s = 0; s < k; ++s)
      for (int c = 0; c < k; ++c) {
        const GQ& gsc = g(s, c);
        if (gsc.is_zero()) continue;
        for (int r = 0; r < m.rows(); ++r) {
          const GQ& v = m(r, b * k + s);
          if (v.is_zero()) continue;
          out(r, b * k + c) += v * gsc;
        }
      }
  return out;
}

bool is_hermitian(const Matrix<GQ>& g) {
  if (g.rows() != g.cols()) return false;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j <= i; ++j)
      if (g(i, j) != g(j, i).conj()) return false;
  return true;
}

// For a Hermitian matrix: all elimination pivots real and positive.
bool is_positive_definite(Matrix<GQ> g) {
  const int n = g.rows();
  for (int col = 0; col < n; ++col) {
    const GQ piv = g(col, col);
    if (!piv.is_real() || sgn(piv.re) <= 0) return false;
    for (int r = col + 1; r < n; ++r) {
      const GQ f = g(r, col) / piv;
      if (f.is_zero()) continue;
      for (int j = col; j < n; ++j) g(r, j) -= f * g(col, j);
    }
  }
  return true;
}

}  // namespace

std::vector<Matrix<GQ>> koszul_differentials(int num_ops, int dimv,
                                             const std::vector<Matrix<GQ>>& ops) {
  SubsetTable table(num_ops);
  std::vector<Matrix<GQ>> d;
  d.reserve(num_ops);
  for (int q = 0; q < num_ops; ++q) {
    const auto& dom = table.by_size[q];
    const auto& codom = table.by_size[q + 1];
    Matrix<GQ> dq(static_cast<int>(codom.size()) * dimv, static_cast<int>(dom.size()) * dimv);
    for (size_t s = 0; s < dom.size(); ++s) {
      unsigned mask = dom[s];
      for (int i = 0; i < num_ops; ++i) {
        if (mask & (1u << i)) continue;
        unsigned target = mask | (1u << i);
        int t = table.index_of_mask[target];
        GQ sign(wedge_sign(mask, i));
        const Matrix<GQ>& op = ops[static_cast<size_t>(i)];
        for (int r = 0; r < dimv; ++r)
          for (int c = 0; c < dimv; ++c) {
            const GQ& v = op(r, c);
            if (v.is_zero()) continue;
            dq(t * dimv + r, static_cast<int>(s) * dimv + c) += sign * v;
          }
      }
    }
    d.push_back(std::move(dq));
  }
  return d;
}

void validate_rep(const RepBundle& rep) {
  if (rep.n < 1) throw ValidationError("bundle needs n >= 1");
  if (rep.dimV < 1) throw ValidationError("bundle needs dimV >= 1");
  if (static_cast<int>(rep.N.size()) != rep.num_generators())
    throw ValidationError("bundle needs exactly 2n action matrices");
  auto check_shape = [&](const Matrix<GQ>& m, const std::string& name) {
    if (m.rows() != rep.dimV || m.cols() != rep.dimV)
      throw ValidationError(name + " must be dimV x dimV");
  };
  for (size_t i = 0; i < rep.N.size(); ++i) check_shape(rep.N[i], "N[" + std::to_string(i + 1) + "]");
  check_shape(rep.H, "H");
  check_shape(rep.gram, "gram");
  for (size_t i = 0; i < rep.N.size(); ++i)
    for (size_t j = i + 1; j < rep.N.size(); ++j)
      if (!(rep.N[i] * rep.N[j] == rep.N[j] * rep.N[i]))
        throw ValidationError("action matrices N[" + std::to_string(i + 1) + "], N[" +
                              std::to_string(j + 1) + "] do not commute");
  for (size_t i = 0; i < rep.N.size(); ++i) {
    Matrix<GQ> comm = rep.H * rep.N[i] - rep.N[i] * rep.H;
    if (!(comm == rep.N[i]))
      throw ValidationError("[H, N[" + std::to_string(i + 1) + "]] != N[" + std::to_string(i + 1) + "]");
  }
  if (!is_hermitian(rep.gram)) throw ValidationError("gram must be Hermitian");
  if (!is_positive_definite(rep.gram)) throw ValidationError("gram must be positive definite");
}

bool is_admissible(const RepBundle& rep) {
  if (!is_hermitian(rep.gram) || !is_positive_definite(rep.gram)) return false;
  // H self-adjoint for gram: gram H = H^dagger gram
  return rep.gram * rep.H == rep.H.conj_transpose() * rep.gram;
}

RepBundle build_sym_power_rep(int m) {
  if (m < 0) throw ValidationError("symmetric power needs m >= 0");
  RepBundle rep;
  rep.n = 1;
  rep.dimV = m + 1;
  Matrix<GQ> n1(m + 1, m + 1), n2(m + 1, m + 1), h(m + 1, m + 1), gram(m + 1, m + 1);
  for (int k = 0; k < m; ++k) {
    n1(k + 1, k) = GQ(Rational(m - k));
    n2(k + 1, k) = GQ(Rational(0), Rational(m - k));  // i times the first generator
  }
  for (int j = 0; j <= m; ++j) {
    h(j, j) = GQ(Rational(j) - make_rational(m, 2));
    gram(j, j) = GQ(make_rational(BigInt(1), binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(j))));
  }
  rep.N = {std::move(n1), std::move(n2)};
  rep.H = std::move(h);
  rep.gram = std::move(gram);
  return rep;
}

CochainComplex exterior_complex(const RepBundle& rep) {
  validate_rep(rep);
  CochainComplex cx;
  cx.n = rep.n;
  cx.dimV = rep.dimV;
  const int n2 = rep.num_generators();
  cx.dims.resize(n2 + 1);
  for (int q = 0; q <= n2; ++q) {
    BigInt c = binomial(static_cast<unsigned long>(n2), static_cast<unsigned long>(q));
    cx.dims[q] = static_cast<int>(c.get_ui()) * rep.dimV;
  }
  cx.d = koszul_differentials(n2, rep.dimV, rep.N);
  for (int q = 0; q + 1 < n2; ++q) {
    if (!(cx.d[q + 1] * cx.d[q]).is_zero()) throw InternalError("d^2 != 0 in exterior complex");
  }
  Matrix<GQ> gram_inv = invert(rep.gram);
  cx.dstar.resize(n2 + 1);
  for (int q = 1; q <= n2; ++q) {
    // adjoint of d[q-1] : q-1 -> q for the inner products I (x) gram
    cx.dstar[q] = kron_left(gram_inv, kron_right(cx.d[q - 1].conj_transpose(), rep.gram));
  }
  return cx;
}

Matrix<GQ> wop_matrix(const CochainComplex& cx, const RepBundle& rep, int q) {
  const int t = cx.dims[q] / rep.dimV;
  Matrix<GQ> w(cx.dims[q], cx.dims[q]);
  for (int b = 0; b < t; ++b)
    for (int r = 0; r < rep.dimV; ++r)
      for (int c = 0; c < rep.dimV; ++c) {
        GQ v = rep.H(r, c);
        if (r == c) v -= GQ(Rational(q));
        if (!v.is_zero()) w(b * rep.dimV + r, b * rep.dimV + c) = v;
      }
  return w;
}

Matrix<GQ> degree_gram(const CochainComplex& cx, const RepBundle& rep, int q) {
  const int t = cx.dims[q] / rep.dimV;
  Matrix<GQ> g(cx.dims[q], cx.dims[q]);
  for (int b = 0; b < t; ++b)
    for (int r = 0; r < rep.dimV; ++r)
      for (int c = 0; c < rep.dimV; ++c) {
        const GQ& v = rep.gram(r, c);
        if (!v.is_zero()) g(b * rep.dimV + r, b * rep.dimV + c) = v;
      }
  return g;
}

namespace {

// Exact weight grading, available when H is diagonal with rational entries
// and gram does not couple distinct weights. Then every operator in sight
// splits into small blocks indexed by degree and weight.
struct WeightGrading {
  bool available = false;
  std::vector<Rational> v_weight;  // per V basis index

  // block of degree-q coordinates with W-eigenvalue mu (v-weight mu + q)
  std::vector<int> block(const CochainComplex& cx, int dimv, int q, const Rational& mu) const {
    std::vector<int> idx;
    const int t = cx.dims[q] / dimv;
    for (int b = 0; b < t; ++b)
      for (int j = 0; j < dimv; ++j)
        if (v_weight[static_cast<size_t>(j)] == mu + q) idx.push_back(b * dimv + j);
    return idx;
  }

  std::vector<Rational> mus(const CochainComplex& cx, int dimv, int q) const {
    (void)cx;
    (void)dimv;
    std::vector<Rational> out;
    for (const Rational& w : v_weight) {
      Rational mu = w - q;
      if (std::find(out.begin(), out.end(), mu) == out.end()) out.push_back(mu);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

WeightGrading weight_grading(const RepBundle& rep) {
  WeightGrading g;
  for (int i = 0; i < rep.dimV; ++i)
    for (int j = 0; j < rep.dimV; ++j)
      if (i != j && !rep.H(i, j).is_zero()) return g;
  for (int i = 0; i < rep.dimV; ++i) {
    if (!rep.H(i, i).is_real()) return g;
  }
  g.v_weight.resize(static_cast<size_t>(rep.dimV));
  for (int i = 0; i < rep.dimV; ++i) g.v_weight[static_cast<size_t>(i)] = rep.H(i, i).re;
  for (int i = 0; i < rep.dimV; ++i)
    for (int j = 0; j < rep.dimV; ++j)
      if (g.v_weight[i] != g.v_weight[j] && !rep.gram(i, j).is_zero()) return g;
  g.available = true;
  return g;
}

Matrix<GQ> identity_basis(int n) { return Matrix<GQ>::identity(n); }

// Embeds block-local columns into full degree coordinates.
Matrix<GQ> embed_columns(const Matrix<GQ>& local, const std::vector<int>& idx, int full_dim) {
  Matrix<GQ> out(full_dim, local.cols());
  for (size_t r = 0; r < idx.size(); ++r)
    for (int c = 0; c < local.cols(); ++c) out(idx[r], c) = local(static_cast<int>(r), c);
  return out;
}


void sort_weight_mults(std::vector<WeightMult>* w) {
  std::sort(w->begin(), w->end(),
            [](const WeightMult& a, const WeightMult& b) { return scalar_less(a.value, b.value); });
}

}  // namespace

HarmonicDecomposition harmonic_spaces(const CochainComplex& cx, const RepBundle& rep,
                                      const PrecisionContext& ctx) {
  const int degs = cx.degrees();
  const int n = cx.n;
  HarmonicDecomposition h;
  h.dims.assign(static_cast<size_t>(degs), 0);
  h.weights.resize(static_cast<size_t>(degs));
  h.bases.resize(static_cast<size_t>(degs));

  std::vector<int> ker_d(static_cast<size_t>(degs), 0);   // dim ker d_q
  std::vector<int> rank_d(static_cast<size_t>(degs), 0);  // rank d_q (0 for q = 2n)

  const WeightGrading grading = weight_grading(rep);
  if (grading.available) {
    for (int q = 0; q < degs; ++q) {
      std::vector<std::pair<Matrix<GQ>, Rational>> pieces;  // local kernel + weight
      int total_cols = 0;
      for (const Rational& mu : grading.mus(cx, rep.dimV, q)) {
        std::vector<int> idx = grading.block(cx, rep.dimV, q, mu);
        if (idx.empty()) continue;
        Matrix<GQ> stacked(0, static_cast<int>(idx.size()));
        if (q + 1 < degs) {
          std::vector<int> up = grading.block(cx, rep.dimV, q + 1, mu);
          Matrix<GQ> dq = cx.d[q].submatrix(up, idx);
          rank_d[q] += rank_of(dq);
          stacked = dq;
        }
        if (q > 0) {
          std::vector<int> down = grading.block(cx, rep.dimV, q - 1, mu);
          Matrix<GQ> ds = cx.dstar[q].submatrix(down, idx);
          stacked = stacked.rows() ? vstack(stacked, ds) : ds;
        }
        Matrix<GQ> ker = stacked.rows() ? kernel_basis(stacked)
                                        : identity_basis(static_cast<int>(idx.size()));
        // dim ker d_q per block: kernel of the d part alone
        if (q + 1 < degs) {
          std::vector<int> up = grading.block(cx, rep.dimV, q + 1, mu);
          ker_d[q] += static_cast<int>(idx.size()) - rank_of(cx.d[q].submatrix(up, idx));
        } else {
          ker_d[q] += static_cast<int>(idx.size());
        }
        if (ker.cols() == 0) continue;
        h.weights[q].push_back({ScalarRQ::from_exact(mu + n), ker.cols()});
        pieces.emplace_back(embed_columns(ker, idx, cx.dims[q]), mu);
        total_cols += ker.cols();
      }
      Matrix<GQ> basis(cx.dims[q], total_cols);
      int at = 0;
      for (const auto& [emb, mu] : pieces) {
        for (int c = 0; c < emb.cols(); ++c)
          for (int r = 0; r < cx.dims[q]; ++r) basis(r, at + c) = emb(r, c);
        at += emb.cols();
      }
      h.bases[q] = basis;
      h.dims[q] = total_cols;
      sort_weight_mults(&h.weights[q]);
    }
  } else {
    for (int q = 0; q < degs; ++q) {
      Matrix<GQ> stacked(0, cx.dims[q]);
      if (q + 1 < degs) stacked = cx.d[q];
      if (q > 0) stacked = stacked.rows() ? vstack(stacked, cx.dstar[q]) : cx.dstar[q];
      Matrix<GQ> ker = stacked.rows() ? kernel_basis(stacked) : identity_basis(cx.dims[q]);
      h.bases[q] = ker;
      h.dims[q] = ker.cols();
      ker_d[q] = q + 1 < degs ? cx.dims[q] - rank_of(cx.d[q]) : cx.dims[q];
      if (q + 1 < degs) rank_d[q] = rank_of(cx.d[q]);
      if (ker.cols() > 0) {
        Matrix<GQ> w = wop_matrix(cx, rep, q);
        for (int i = 0; i < w.rows(); ++i) w(i, i) += GQ(Rational(n));
        ApplyFn apply = [&](const Matrix<GQ>& cols) { return w * cols; };
        Matrix<GQ> gq = degree_gram(cx, rep, q);
        if (auto exact = try_exact_split(apply, ker, gq, ctx)) {
          for (const auto& piece : *exact)
            h.weights[q].push_back({ScalarRQ::from_exact(piece.value), piece.mult()});
        } else {
          for (const auto& [val, mult] : split_values_numeric(apply, ker, gq, ctx))
            h.weights[q].push_back({ScalarRQ::from_real(val), mult});
        }
        sort_weight_mults(&h.weights[q]);
      }
    }
  }

  for (int q = 0; q < degs; ++q) {
    int expected = ker_d[q] - (q > 0 ? rank_d[q - 1] : 0);
    if (h.dims[q] != expected)
      throw InternalError("harmonic dimension violates rank bookkeeping in degree " +
                          std::to_string(q));
  }
  for (const WeightMult& wm : h.weights[static_cast<size_t>(n)]) {
    if (wm.value.sign() > 0) h.plus_dim += wm.mult;
    if (wm.value.sign() < 0) h.minus_dim += wm.mult;
  }
  return h;
}

std::vector<VqabEntry> vqab_decomposition(const CochainComplex& cx, const RepBundle& rep,
                                          const PrecisionContext& ctx) {
  if (!is_admissible(rep))
    throw ValidationError("joint spectral decomposition requires an admissible bundle "
                          "(positive definite gram with self-adjoint H)");
  const int degs = cx.degrees();
  const Real positive_floor = pow10(-ctx.digits / 2);
  std::vector<VqabEntry> out;

  auto push_exact = [&](int q, const Rational& a, const Rational& b2, int mult) {
    if (sgn(b2) < 0) throw InternalError("negative K^2 eigenvalue");
    if (sgn(b2) == 0) return;  // harmonic part
    out.push_back({q, ScalarRQ::from_exact(a), ScalarRQ::from_exact(b2), mult});
  };

  const WeightGrading grading = weight_grading(rep);
  if (grading.available) {
    for (int q = 0; q < degs; ++q) {
      const Matrix<GQ> gram_q = degree_gram(cx, rep, q);
      for (const Rational& mu : grading.mus(cx, rep.dimV, q)) {
        std::vector<int> idx = grading.block(cx, rep.dimV, q, mu);
        if (idx.empty()) continue;
        std::vector<int> up =
            q + 1 < degs ? grading.block(cx, rep.dimV, q + 1, mu) : std::vector<int>{};
        std::vector<int> down = q > 0 ? grading.block(cx, rep.dimV, q - 1, mu) : std::vector<int>{};
        Matrix<GQ> u;
        if (q > 0) {
          Matrix<GQ> ds = cx.dstar[q].submatrix(down, idx);
          u = kernel_basis(ds);
        } else {
          u = identity_basis(static_cast<int>(idx.size()));
        }
        if (u.cols() == 0) continue;
        // K^2 on the block: dstar d + d dstar, assembled from submatrices
        Matrix<GQ> k2(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
        if (q + 1 < degs) k2 = cx.dstar[q + 1].submatrix(idx, up) * cx.d[q].submatrix(up, idx);
        if (q > 0) {
          Matrix<GQ> part = cx.d[q - 1].submatrix(idx, down) * cx.dstar[q].submatrix(down, idx);
          k2 = k2.rows() ? k2 + part : part;
        }
        ApplyFn apply = [&](const Matrix<GQ>& cols) { return k2 * cols; };
        Matrix<GQ> gram_block = gram_q.submatrix(idx, idx);
        Rational a = mu + cx.n;
        if (auto exact = try_exact_split(apply, u, gram_block, ctx)) {
          for (const auto& piece : *exact) push_exact(q, a, piece.value, piece.mult());
        } else {
          for (const auto& [b2, mult] : split_values_numeric(apply, u, gram_block, ctx)) {
            if (b2 < -positive_floor) throw InternalError("negative K^2 eigenvalue");
            if (b2 <= positive_floor) continue;
            out.push_back({q, ScalarRQ::from_exact(a), ScalarRQ::from_real(b2), mult});
          }
        }
      }
    }
  } else {
    for (int q = 0; q < degs; ++q) {
      Matrix<GQ> u = q > 0 ? kernel_basis(cx.dstar[q]) : identity_basis(cx.dims[q]);
      if (u.cols() == 0) continue;
      Matrix<GQ> k2(cx.dims[q], cx.dims[q]);
      if (q + 1 < degs) k2 = cx.dstar[q + 1] * cx.d[q];
      if (q > 0) {
        Matrix<GQ> part = cx.d[q - 1] * cx.dstar[q];
        k2 = k2.rows() ? k2 + part : part;
      }
      Matrix<GQ> w = wop_matrix(cx, rep, q);
      for (int i = 0; i < w.rows(); ++i) w(i, i) += GQ(Rational(cx.n));
      ApplyFn apply_w = [&](const Matrix<GQ>& cols) { return w * cols; };
      ApplyFn apply_k = [&](const Matrix<GQ>& cols) { return k2 * cols; };
      Matrix<GQ> gq = degree_gram(cx, rep, q);

      bool exact_done = false;
      if (auto wsplit = try_exact_split(apply_w, u, gq, ctx)) {
        exact_done = true;
        for (const auto& wpiece : *wsplit) {
          auto ksplit = try_exact_split(apply_k, wpiece.vectors, gq, ctx);
          if (!ksplit) {
            exact_done = false;
            break;
          }
          for (const auto& kpiece : *ksplit) push_exact(q, wpiece.value, kpiece.value, kpiece.mult());
        }
        if (!exact_done) {
          // drop the partial exact output for this degree and redo numerically
          std::erase_if(out, [q](const VqabEntry& e) { return e.q == q; });
        }
      }
      if (!exact_done) {
        for (const JointPiece& piece : joint_split_numeric(apply_w, apply_k, u, gq, ctx)) {
          if (piece.b2 < -positive_floor) throw InternalError("negative K^2 eigenvalue");
          if (piece.b2 <= positive_floor) continue;
          out.push_back({q, ScalarRQ::from_real(piece.a), ScalarRQ::from_real(piece.b2), piece.mult});
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const VqabEntry& x, const VqabEntry& y) {
    if (x.q != y.q) return x.q < y.q;
    if (!scalar_eq(x.a, y.a)) return scalar_less(x.a, y.a);
    return scalar_less(x.b2, y.b2);
  });
  return out;
}

namespace {

Matrix<GQ> parse_square_matrix(const std::string& text, int dim, const std::string& name) {
  Matrix<GQ> m(dim, dim);
  std::istringstream rows(text);
  std::string row;
  int r = 0;
  while (std::getline(rows, row, ';')) {
    if (r >= dim) throw ValidationError(name + ": too many rows");
    std::istringstream cols(row);
    std::string cell;
    int c = 0;
    while (std::getline(cols, cell, ',')) {
      if (c >= dim) throw ValidationError(name + ": too many columns in row " + std::to_string(r));
      m(r, c) = parse_gaussian(cell);
      ++c;
    }
    if (c != dim) throw ValidationError(name + ": row " + std::to_string(r) + " has " +
                                        std::to_string(c) + " entries, expected " + std::to_string(dim));
    ++r;
  }
  if (r != dim) throw ValidationError(name + ": expected " + std::to_string(dim) + " rows");
  return m;
}

std::string format_square_matrix(const Matrix<GQ>& m) {
  std::string s;
  for (int r = 0; r < m.rows(); ++r) {
    if (r) s += ";";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) s += ",";
      s += format_gaussian(m(r, c));
    }
  }
  return s;
}

}  // namespace

RepBundle parse_rep_bundle(std::istream& in) {
  std::map<std::string, std::string> fields;
  std::string line;
  while (std::getline(in, line)) {
    // strip whitespace everywhere (canonical form has none)
    std::string stripped;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    if (stripped.empty() || stripped[0] == '#') continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos) throw ValidationError("bundle line without '=': " + line);
    std::string key = stripped.substr(0, eq);
    if (fields.count(key)) throw ValidationError("duplicate bundle field " + key);
    fields[key] = stripped.substr(eq + 1);
  }
  auto need = [&](const std::string& key) -> const std::string& {
    auto it = fields.find(key);
    if (it == fields.end()) throw ValidationError("bundle missing field " + key);
    return it->second;
  };
  RepBundle rep;
  try {
    rep.n = std::stoi(need("n"));
    rep.dimV = std::stoi(need("dimV"));
  } catch (const std::invalid_argument&) {
    throw ValidationError("bundle n/dimV must be integers");
  }
  if (rep.n < 1 || rep.n > 10) throw ValidationError("bundle n out of range");
  if (rep.dimV < 1) throw ValidationError("bundle dimV out of range");
  for (int i = 1; i <= 2 * rep.n; ++i) {
    std::string key = "N[" + std::to_string(i) + "]";
    rep.N.push_back(parse_square_matrix(need(key), rep.dimV, key));
  }
  rep.H = parse_square_matrix(need("H"), rep.dimV, "H");
  if (fields.count("gram")) {
    rep.gram = parse_square_matrix(fields["gram"], rep.dimV, "gram");
  } else {
    rep.gram = Matrix<GQ>::identity(rep.dimV);
  }
  for (const auto& [key, value] : fields) {
    (void)value;
    if (key == "n" || key == "dimV" || key == "H" || key == "gram") continue;
    if (key.rfind("N[", 0) == 0) {
      int idx = std::stoi(key.substr(2));
      if (idx >= 1 && idx <= 2 * rep.n) continue;
    }
    throw ValidationError("unknown bundle field " + key);
  }
  validate_rep(rep);
  return rep;
}

std::string canonical_rep_bundle(const RepBundle& rep) {
  std::string s;
  s += "n=" + std::to_string(rep.n) + "\n";
  s += "dimV=" + std::to_string(rep.dimV) + "\n";
  for (size_t i = 0; i < rep.N.size(); ++i)
    s += "N[" + std::to_string(i + 1) + "]=" + format_square_matrix(rep.N[i]) + "\n";
  s += "H=" + format_square_matrix(rep.H) + "\n";
  s += "gram=" + format_square_matrix(rep.gram) + "\n";
  return s;
}

}  // namespace cusptorsion
