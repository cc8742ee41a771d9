#include "cusptorsion/rtorsion.hpp"

#include <array>
#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "cusptorsion/kostant.hpp"

namespace cusptorsion {

Rational psv2(const Matrix<Rational>& a) {
  Matrix<Rational> r = a;
  EchelonInfo info = rref_inplace(r);
  if (info.rank == 0) return Rational(1);
  // Q: columns spanning the row space (transposed nonzero rows of the rref).
  Matrix<Rational> q(a.cols(), info.rank);
  for (int i = 0; i < info.rank; ++i)
    for (int j = 0; j < a.cols(); ++j) q(j, i) = r(i, j);
  Matrix<Rational> at_a = a.transpose() * a;
  Rational num = det(q.transpose() * (at_a * q));
  Rational den = det(q.transpose() * q);
  return num / den;
}

namespace {

template <typename T>
std::vector<int> greedy_section(Matrix<T> a, const T& tol) {
  std::vector<bool> used_row(static_cast<size_t>(a.rows()), false);
  std::vector<bool> used_col(static_cast<size_t>(a.cols()), false);
  std::vector<int> cols;
  while (true) {
    int best_r = -1, best_c = -1;
    double best = -1;
    for (int c = 0; c < a.cols(); ++c) {
      if (used_col[static_cast<size_t>(c)]) continue;
      for (int r = 0; r < a.rows(); ++r) {
        if (used_row[static_cast<size_t>(r)]) continue;
        if (FieldOps<T>::is_zero(a(r, c), tol)) continue;
        double s = FieldOps<T>::approx_size(a(r, c));
        if (s > best) {
          best = s;
          best_r = r;
          best_c = c;
        }
      }
    }
    if (best_r < 0) break;
    used_row[static_cast<size_t>(best_r)] = true;
    used_col[static_cast<size_t>(best_c)] = true;
    cols.push_back(best_c);
    const T piv = a(best_r, best_c);
    for (int r = 0; r < a.rows(); ++r) {
      if (used_row[static_cast<size_t>(r)]) continue;
      const T f = a(r, best_c) / piv;
      if (FieldOps<T>::is_zero(f, tol)) continue;
      for (int c = 0; c < a.cols(); ++c) a(r, c) = a(r, c) - f * a(best_r, c);
    }
  }
  std::sort(cols.begin(), cols.end());
  return cols;
}

template <typename T>
T abs_value(const T& v) {
  return abs(v);
}

template <typename T>
T torsion_impl(const BasedComplex<T>& cx, const std::vector<std::vector<int>>* sections,
               const T& tol) {
  const int degs = cx.degrees();
  if (degs < 1) throw ValidationError("empty complex");
  if (cx.diff.size() + 1 != cx.dims.size())
    throw ValidationError("complex needs one differential per adjacent degree pair");
  for (int q = 0; q + 1 < degs; ++q) {
    if (cx.diff[q].rows() != cx.dims[q + 1] || cx.diff[q].cols() != cx.dims[q])
      throw ValidationError("differential shape mismatch in degree " + std::to_string(q));
  }
  for (int q = 0; q + 2 < degs; ++q) {
    Matrix<T> dd = cx.diff[q + 1] * cx.diff[q];
    for (int i = 0; i < dd.rows(); ++i)
      for (int j = 0; j < dd.cols(); ++j)
        if (!FieldOps<T>::is_zero(dd(i, j), tol))
          throw ValidationError("d^2 != 0 between degrees " + std::to_string(q) + " and " +
                                std::to_string(q + 2));
  }

  std::vector<std::vector<int>> chosen(static_cast<size_t>(degs > 0 ? degs - 1 : 0));
  std::vector<int> rank(static_cast<size_t>(degs), 0);  // rank of d_q
  for (int q = 0; q + 1 < degs; ++q) {
    if (sections) {
      chosen[q] = (*sections)[q];
      Matrix<T> img = cx.diff[q].columns(chosen[q]);
      if (rank_of(img, tol) != static_cast<int>(chosen[q].size()))
        throw ValidationError("supplied section does not map to independent image vectors");
      if (rank_of(cx.diff[q], tol) != static_cast<int>(chosen[q].size()))
        throw ValidationError("supplied section has the wrong size");
    } else {
      chosen[q] = greedy_section(cx.diff[q], tol);
    }
    rank[q] = static_cast<int>(chosen[q].size());
  }

  for (int q = 0; q < degs; ++q) {
    int h = q < static_cast<int>(cx.coh_bases.size()) ? cx.coh_bases[q].cols() : 0;
    int r_prev = q > 0 ? rank[q - 1] : 0;
    int r_here = q + 1 < degs ? rank[q] : 0;
    if (r_prev + h + r_here != cx.dims[q])
      throw ValidationError("rank bookkeeping fails in degree " + std::to_string(q) +
                            ": expected dim = rank_prev + coh + rank, got " +
                            std::to_string(cx.dims[q]) + " vs " +
                            std::to_string(r_prev + h + r_here));
    if (h > 0) {
      if (cx.coh_bases[q].rows() != cx.dims[q])
        throw ValidationError("cohomology basis shape mismatch in degree " + std::to_string(q));
      if (q + 1 < degs) {
        Matrix<T> dh = cx.diff[q] * cx.coh_bases[q];
        for (int i = 0; i < dh.rows(); ++i)
          for (int j = 0; j < dh.cols(); ++j)
            if (!FieldOps<T>::is_zero(dh(i, j), tol))
              throw ValidationError("cohomology basis columns are not cocycles in degree " +
                                    std::to_string(q));
      }
    }
  }

  T tau(1);
  for (int q = 0; q < degs; ++q) {
    Matrix<T> m(cx.dims[q], cx.dims[q]);
    int at = 0;
    if (q > 0) {
      Matrix<T> img = cx.diff[q - 1].columns(chosen[q - 1]);
      for (int c = 0; c < img.cols(); ++c, ++at)
        for (int r = 0; r < cx.dims[q]; ++r) m(r, at) = img(r, c);
    }
    if (q < static_cast<int>(cx.coh_bases.size())) {
      const Matrix<T>& h = cx.coh_bases[q];
      for (int c = 0; c < h.cols(); ++c, ++at)
        for (int r = 0; r < cx.dims[q]; ++r) m(r, at) = h(r, c);
    }
    if (q + 1 < degs) {
      for (int c : chosen[q]) {
        m(c, at) = T(1);
        ++at;
      }
    }
    if (at != cx.dims[q]) throw InternalError("torsion basis assembly mismatch");
    if (cx.dims[q] == 0) continue;
    T dq = det(m, tol);
    if (FieldOps<T>::is_zero(dq, tol))
      throw ValidationError("change of basis singular in degree " + std::to_string(q) +
                            " (cohomology basis does not project to a basis)");
    // degree-q determinant enters with exponent (-1)^(q+1): the two-term
    // complex 0 -> R -(c)-> R -> 0 then yields |c|.
    if (q % 2 == 1)
      tau = tau * abs_value(dq);
    else
      tau = tau / abs_value(dq);
  }
  return tau;
}

}  // namespace

Rational torsion(const BasedComplex<Rational>& cx, const std::vector<std::vector<int>>* sections) {
  return torsion_impl(cx, sections, Rational(0));
}

Real torsion(const BasedComplex<Real>& cx, const PrecisionContext& ctx,
             const std::vector<std::vector<int>>* sections) {
  ScopedPrecision scope(ctx);
  double scale = 1;
  for (const auto& d : cx.diff)
    for (int i = 0; i < d.rows(); ++i)
      for (int j = 0; j < d.cols(); ++j)
        scale = std::max(scale, FieldOps<Real>::approx_size(d(i, j)));
  Real tol = pow10(-(ctx.digits / 2)) * Real(scale);
  return torsion_impl(cx, sections, tol);
}

std::vector<std::vector<int>> all_sections(const Matrix<Rational>& d) {
  const int r = rank_of(d);
  std::vector<std::vector<int>> out;
  std::vector<int> subset;
  // enumerate r-subsets of columns whose image has full rank
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(subset.size()) == r) {
      if (rank_of(d.columns(subset)) == r) out.push_back(subset);
      return;
    }
    for (int c = start; c < d.cols(); ++c) {
      subset.push_back(c);
      rec(c + 1);
      subset.pop_back();
    }
  };
  rec(0);
  return out;
}

LESData make_mv_les(int n, const std::vector<int>& z_dims_in) {
  if (n < 1) throw ValidationError("long exact sequence needs n >= 1");
  if (static_cast<int>(z_dims_in.size()) != 2 * n + 1)
    throw ValidationError("need cut-locus dimensions for degrees 0..2n");
  if (z_dims_in[static_cast<size_t>(n)] % 2 != 0)
    throw ValidationError("middle cut-locus dimension must be even");
  const int top = 2 * n + 1;
  std::vector<int> z = z_dims_in;
  z.push_back(0);
  std::vector<int> x(static_cast<size_t>(top + 1), 0);
  for (int q = 0; q <= top; ++q) {
    if (q == n)
      x[static_cast<size_t>(q)] = z[static_cast<size_t>(q)] / 2;
    else if (q > n && q <= 2 * n)
      x[static_cast<size_t>(q)] = z[static_cast<size_t>(q)];
  }
  return make_mv_les_explicit(n, z, x);
}

LESData make_mv_les_explicit(int n, const std::vector<int>& z_dims_in,
                             const std::vector<int>& x_dims_in) {
  if (n < 1) throw ValidationError("long exact sequence needs n >= 1");
  const int top = 2 * n + 1;  // dimension of the double
  if (static_cast<int>(z_dims_in.size()) != top + 1 ||
      static_cast<int>(x_dims_in.size()) != top + 1)
    throw ValidationError("need dimensions for degrees 0..2n+1");
  if (z_dims_in.back() != 0) throw ValidationError("top cut-locus dimension must be 0");
  for (int q = 0; q <= top; ++q) {
    if (z_dims_in[static_cast<size_t>(q)] < 0 || x_dims_in[static_cast<size_t>(q)] < 0)
      throw ValidationError("negative dimension");
    if (x_dims_in[static_cast<size_t>(q)] > z_dims_in[static_cast<size_t>(q)])
      throw ValidationError("half-space classes must restrict injectively to the cut locus");
  }
  LESData data;
  data.n = n;
  data.z_dims = z_dims_in;
  data.x_dims = x_dims_in;
  data.m_dims.assign(static_cast<size_t>(top) + 1, 0);
  for (int q = 0; q <= top; ++q) {
    int from_below = q > 0 ? data.z_dims[q - 1] - data.x_dims[q - 1] : 0;
    data.m_dims[q] = data.x_dims[q] + from_below;
  }

  BasedComplex<Rational>& cx = data.complex;
  for (int q = 0; q <= top; ++q) {
    cx.dims.push_back(data.m_dims[q]);
    cx.dims.push_back(2 * data.x_dims[q]);
    cx.dims.push_back(data.z_dims[q]);
  }
  cx.coh_bases.assign(cx.dims.size(), Matrix<Rational>());
  for (size_t i = 0; i < cx.dims.size(); ++i) cx.coh_bases[i] = Matrix<Rational>(cx.dims[i], 0);

  for (int q = 0; q <= top; ++q) {
    const int l = data.x_dims[q];
    const int z = data.z_dims[q];
    const int m_next = q < top ? data.m_dims[q + 1] : 0;
    const int img_part = q > 0 ? data.z_dims[q - 1] - data.x_dims[q - 1] : 0;

    Matrix<Rational> i_map(2 * l, data.m_dims[q]);
    for (int j = 0; j < l; ++j) {
      i_map(j, img_part + j) = 1;
      i_map(l + j, img_part + j) = 1;
    }
    cx.diff.push_back(std::move(i_map));

    Matrix<Rational> j_map(z, 2 * l);
    for (int j = 0; j < l; ++j) {
      j_map(j, j) = 1;
      j_map(j, l + j) = -1;
    }
    cx.diff.push_back(std::move(j_map));

    if (q < top) {
      Matrix<Rational> bd(m_next, z);
      for (int j = 0; j < z - l; ++j) bd(j, l + j) = 1;
      cx.diff.push_back(std::move(bd));
    }
  }
  return data;
}

MvReport mv_torsion_check(const LESData& data) {
  MvReport report;
  report.tau = torsion(data.complex);
  const int top = 2 * data.n + 1;
  bool ok = report.tau == 1;
  for (int q = 0; q <= top; ++q) {
    report.factor2_i.push_back(psv2(data.i_map(q)));
    report.factor2_j.push_back(psv2(data.j_map(q)));
    if (q < top) report.factor2_bd.push_back(psv2(data.bd_map(q)));
    Rational expected = BigInt(1) << data.x_dims[q];
    ok = ok && report.factor2_i.back() == expected && report.factor2_j.back() == expected;
    if (q < top) ok = ok && report.factor2_bd.back() == 1;
  }
  report.pass = ok;
  return report;
}

Real milnor_glue(const Real& tau_x, const Real& tau_z, bool n_odd) {
  if (tau_z <= 0) throw ValidationError("cut-locus torsion must be positive");
  if (n_odd && abs(tau_z - 1) > pow10(-12))
    throw ValidationError("odd middle dimension forces cut-locus torsion 1");
  return tau_x * tau_x / tau_z;
}

std::vector<int> group_cohomology_lattice(const std::vector<Matrix<GQ>>& gens,
                                          const std::vector<GQ>& twist) {
  const int num = static_cast<int>(gens.size());
  if (num == 0) throw ValidationError("need at least one lattice generator");
  if (twist.size() != gens.size()) throw ValidationError("one twist scalar per generator");
  const int k = gens[0].rows();
  for (const auto& g : gens)
    if (g.rows() != k || g.cols() != k) throw ValidationError("generator shape mismatch");
  for (size_t i = 0; i < gens.size(); ++i) {
    if (FieldOps<GQ>::is_zero(det(gens[i]), GQ()))
      throw ValidationError("generator " + std::to_string(i + 1) + " is singular");
    if (twist[i].norm2() != 1)
      throw ValidationError("twist scalars must have unit modulus");
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!(gens[i] * gens[j] == gens[j] * gens[i]))
        throw ValidationError("lattice generators must commute");
  }
  std::vector<Matrix<GQ>> ops;
  ops.reserve(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    Matrix<GQ> a = gens[i].scaled(twist[i]);
    for (int r = 0; r < k; ++r) a(r, r) -= GQ(1);
    ops.push_back(std::move(a));
  }
  std::vector<Matrix<GQ>> d = koszul_differentials(num, k, ops);
  std::vector<int> dims(static_cast<size_t>(num + 1));
  for (int q = 0; q <= num; ++q) {
    BigInt c = binomial(static_cast<unsigned long>(num), static_cast<unsigned long>(q));
    dims[q] = static_cast<int>(c.get_ui()) * k;
  }
  std::vector<int> ranks(static_cast<size_t>(num), 0);
  for (int q = 0; q < num; ++q) ranks[q] = rank_of(d[q]);
  std::vector<int> h(static_cast<size_t>(num + 1));
  for (int q = 0; q <= num; ++q)
    h[q] = dims[q] - (q < num ? ranks[q] : 0) - (q > 0 ? ranks[q - 1] : 0);
  return h;
}

VanEstReport vanest_compare(int m, const GQ& z1, const GQ& z2, const std::array<GQ, 2>& twist) {
  if (m < 0) throw ValidationError("symmetric power needs m >= 0");
  // nondegenerate lattice: Im(conj(z1) z2) != 0
  GQ pairing = z1.conj() * z2;
  if (sgn(pairing.im) == 0) throw ValidationError("lattice generators are colinear");

  auto unipotent = [m](const GQ& z) {
    Matrix<GQ> g(m + 1, m + 1);
    for (int k = 0; k <= m; ++k) {
      GQ zpow(1);
      for (int i = 0; k + i <= m; ++i) {
        g(k + i, k) = GQ(Rational(binomial(static_cast<unsigned long>(m - k),
                                           static_cast<unsigned long>(i)))) *
                      zpow;
        zpow *= z;
      }
    }
    return g;
  };

  VanEstReport report;
  report.group_dims = group_cohomology_lattice({unipotent(z1), unipotent(z2)},
                                               {twist[0], twist[1]});
  RepBundle rep = build_sym_power_rep(m);
  CochainComplex cx = exterior_complex(rep);
  report.kostant_dims = harmonic_spaces(cx, rep).dims;
  report.twist_trivial = twist[0] == GQ(1) && twist[1] == GQ(1);
  report.group_acyclic = true;
  for (int h : report.group_dims)
    if (h != 0) report.group_acyclic = false;
  report.match = report.group_dims == report.kostant_dims;
  return report;
}

namespace {

bool looks_decimal(const std::string& s) {
  for (char c : s)
    if (c == '.' || c == 'e' || c == 'E') return true;
  return false;
}

template <typename T>
Matrix<T> parse_rect(const std::string& text, int rows, int cols, const std::string& name,
                     const std::function<T(const std::string&)>& cell) {
  Matrix<T> m(rows, cols);
  std::istringstream rs(text);
  std::string row;
  int r = 0;
  while (std::getline(rs, row, ';')) {
    if (r >= rows) throw ValidationError(name + ": too many rows");
    std::istringstream cs(row);
    std::string item;
    int c = 0;
    while (std::getline(cs, item, ',')) {
      if (c >= cols) throw ValidationError(name + ": too many columns");
      m(r, c) = cell(item);
      ++c;
    }
    if (c != cols) throw ValidationError(name + ": wrong column count");
    ++r;
  }
  if (r != rows) throw ValidationError(name + ": wrong row count");
  return m;
}

int count_cols(const std::string& text) {
  std::istringstream rs(text);
  std::string row;
  if (!std::getline(rs, row, ';')) return 0;
  int c = 1;
  for (char ch : row)
    if (ch == ',') ++c;
  return c;
}

}  // namespace

ParsedBasedComplex parse_based_complex(std::istream& in, const PrecisionContext& ctx) {
  std::map<std::string, std::string> fields;
  std::string line;
  std::vector<int> dims;
  while (std::getline(in, line)) {
    std::string stripped;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c))) stripped += c;
    if (stripped.empty() || stripped[0] == '#') continue;
    size_t eq = stripped.find('=');
    if (eq == std::string::npos) throw ValidationError("complex line without '=': " + line);
    fields[stripped.substr(0, eq)] = stripped.substr(eq + 1);
  }
  {
    auto it = fields.find("dims");
    if (it == fields.end()) throw ValidationError("complex file missing dims=...");
    std::istringstream ds(it->second);
    std::string item;
    while (std::getline(ds, item, ',')) dims.push_back(std::stoi(item));
  }
  if (dims.empty()) throw ValidationError("complex needs at least one degree");

  bool exact = true;
  for (const auto& [key, value] : fields) {
    if (key == "dims") continue;
    if (looks_decimal(value)) exact = false;
  }

  ParsedBasedComplex out;
  out.exact = exact;
  ScopedPrecision scope(ctx);

  auto build = [&](auto tag) {
    using T = decltype(tag);
    std::function<T(const std::string&)> cell;
    if constexpr (std::is_same_v<T, Rational>) {
      cell = [](const std::string& s) { return parse_rational(s); };
    } else {
      cell = [](const std::string& s) {
        try {
          return Real(s);
        } catch (const std::exception&) {
          throw ValidationError("malformed numeric entry '" + s + "'");
        }
      };
    }
    BasedComplex<T> cx;
    cx.dims = dims;
    for (size_t q = 0; q + 1 < dims.size(); ++q) {
      std::string key = "d[" + std::to_string(q) + "]";
      auto it = fields.find(key);
      if (it == fields.end()) {
        cx.diff.push_back(Matrix<T>(dims[q + 1], dims[q]));
      } else {
        cx.diff.push_back(parse_rect<T>(it->second, dims[q + 1], dims[q], key, cell));
      }
    }
    for (size_t q = 0; q < dims.size(); ++q) {
      std::string key = "coh[" + std::to_string(q) + "]";
      auto it = fields.find(key);
      if (it == fields.end()) {
        cx.coh_bases.push_back(Matrix<T>(dims[q], 0));
      } else {
        int cols = count_cols(it->second);
        cx.coh_bases.push_back(parse_rect<T>(it->second, dims[q], cols, key, cell));
      }
    }
    return cx;
  };

  if (exact)
    out.rational = build(Rational());
  else
    out.real = build(Real());

  for (const auto& [key, value] : fields) {
    (void)value;
    if (key == "dims") continue;
    bool known = false;
    for (size_t q = 0; q + 1 < dims.size(); ++q)
      if (key == "d[" + std::to_string(q) + "]") known = true;
    for (size_t q = 0; q < dims.size(); ++q)
      if (key == "coh[" + std::to_string(q) + "]") known = true;
    if (!known) throw ValidationError("unknown complex field " + key);
  }
  return out;
}

}  // namespace cusptorsion
