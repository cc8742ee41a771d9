#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cusptorsion/rational.hpp"
#include "cusptorsion/real.hpp"

namespace cusptorsion {

template <typename T>
struct FieldOps;

template <>
struct FieldOps<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& v, const Rational&) { return sgn(v) == 0; }
  static Rational conj(const Rational& v) { return v; }
  static double approx_size(const Rational& v) { return std::fabs(v.get_d()); }
};

template <>
struct FieldOps<GQ> {
  static constexpr bool exact = true;
  static bool is_zero(const GQ& v, const GQ&) { return v.is_zero(); }
  static GQ conj(const GQ& v) { return v.conj(); }
  static double approx_size(const GQ& v) { return v.norm2().get_d(); }
};

template <>
struct FieldOps<Real> {
  static constexpr bool exact = false;
  static bool is_zero(const Real& v, const Real& tol) { return abs(v) <= tol; }
  static Real conj(const Real& v) { return v; }
  static double approx_size(const Real& v) { return std::fabs(static_cast<double>(v)); }
};

/// Dense row-major matrix over an exact field or arbitrary-precision reals.
template <typename T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

  bool is_zero() const {
    for (const T& v : a_)
      if (!FieldOps<T>::is_zero(v, T(0))) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix conj_transpose() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) m(j, i) = FieldOps<T>::conj((*this)(i, j));
    return m;
  }

  Matrix operator*(const Matrix& b) const {
    if (cols_ != b.rows_) throw InternalError("matrix shape mismatch in product");
    Matrix c(rows_, b.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const T& aik = (*this)(i, k);
        if (FieldOps<T>::is_zero(aik, T(0))) continue;  // inputs are typically sparse
        for (int j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (FieldOps<T>::is_zero(bkj, T(0))) continue;
          c(i, j) += aik * bkj;
        }
      }
    return c;
  }

  Matrix operator+(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw InternalError("matrix shape mismatch in sum");
    Matrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] + b.a_[i];
    return c;
  }

  Matrix operator-(const Matrix& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw InternalError("matrix shape mismatch in difference");
    Matrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] - b.a_[i];
    return c;
  }

  Matrix scaled(const T& s) const {
    Matrix c(rows_, cols_);
    for (size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] * s;
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  Matrix submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < cols.size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = (*this)(rows[i], cols[j]);
    return m;
  }

  Matrix columns(const std::vector<int>& cols) const {
    Matrix m(rows_, static_cast<int>(cols.size()));
    for (int i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols.size(); ++j) m(i, static_cast<int>(j)) = (*this)(i, cols[j]);
    return m;
  }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

template <typename T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw InternalError("hstack row mismatch");
  Matrix<T> m(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw InternalError("vstack column mismatch");
  Matrix<T> m(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

struct EchelonInfo {
  int rank = 0;
  std::vector<int> pivot_cols;
};

/// Reduced row echelon form in place. Exact fields pick the first usable
/// pivot; Real uses partial pivoting against `tol`.
template <typename T>
EchelonInfo rref_inplace(Matrix<T>& m, const T& tol = T(0)) {
  EchelonInfo info;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int piv = -1;
    if constexpr (FieldOps<T>::exact) {
      for (int r = row; r < m.rows(); ++r)
        if (!FieldOps<T>::is_zero(m(r, col), tol)) {
          piv = r;
          break;
        }
    } else {
      double best = 0;
      for (int r = row; r < m.rows(); ++r) {
        double s = FieldOps<T>::approx_size(m(r, col));
        if (!FieldOps<T>::is_zero(m(r, col), tol) && s > best) {
          best = s;
          piv = r;
        }
      }
    }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    T inv = T(1) / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) = m(row, j) * inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == row) continue;
      const T f = m(r, col);
      if (FieldOps<T>::is_zero(f, tol)) {
        m(r, col) = T(0);
        continue;
      }
      for (int j = col; j < m.cols(); ++j) m(r, j) = m(r, j) - f * m(row, j);
      m(r, col) = T(0);
    }
    info.pivot_cols.push_back(col);
    ++row;
  }
  info.rank = row;
  return info;
}

template <typename T>
int rank_of(Matrix<T> m, const T& tol = T(0)) {
  return rref_inplace(m, tol).rank;
}

/// Columns form a basis of the null space.
template <typename T>
Matrix<T> kernel_basis(Matrix<T> m, const T& tol = T(0)) {
  const int n = m.cols();
  EchelonInfo info = rref_inplace(m, tol);
  std::vector<bool> is_pivot(n, false);
  for (int c : info.pivot_cols) is_pivot[c] = true;
  Matrix<T> k(n, n - info.rank);
  int out = 0;
  for (int free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    k(free_col, out) = T(1);
    for (int r = 0; r < info.rank; ++r) k(info.pivot_cols[r], out) = -m(r, free_col);
    ++out;
  }
  return k;
}

/// Determinant by fraction-preserving elimination with row swaps.
template <typename T>
T det(Matrix<T> m, const T& tol = T(0)) {
  if (m.rows() != m.cols()) throw InternalError("determinant of non-square matrix");
  T result(1);
  for (int col = 0; col < m.cols(); ++col) {
    int piv = -1;
    if constexpr (FieldOps<T>::exact) {
      for (int r = col; r < m.rows(); ++r)
        if (!FieldOps<T>::is_zero(m(r, col), tol)) {
          piv = r;
          break;
        }
    } else {
      double best = 0;
      for (int r = col; r < m.rows(); ++r) {
        double s = FieldOps<T>::approx_size(m(r, col));
        if (!FieldOps<T>::is_zero(m(r, col), tol) && s > best) {
          best = s;
          piv = r;
        }
      }
    }
    if (piv < 0) return T(0);
    if (piv != col) {
      for (int j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(col, j));
      result = -result;
    }
    result = result * m(col, col);
    T inv = T(1) / m(col, col);
    for (int r = col + 1; r < m.rows(); ++r) {
      const T f = m(r, col) * inv;
      if (FieldOps<T>::is_zero(f, tol)) continue;
      for (int j = col; j < m.cols(); ++j) m(r, j) = m(r, j) - f * m(col, j);
    }
  }
  return result;
}

/// Solves A X = B exactly for full-column-rank A; throws if inconsistent.
template <typename T>
Matrix<T> solve_exact(const Matrix<T>& a, const Matrix<T>& b, const T& tol = T(0)) {
  Matrix<T> aug = hstack(a, b);
  EchelonInfo info = rref_inplace(aug, tol);
  if (info.rank != a.cols()) throw InternalError("solve_exact: matrix does not have full column rank");
  for (int i = 0; i < info.rank; ++i)
    if (info.pivot_cols[i] != i) throw InternalError("solve_exact: pivot structure corrupt");
  for (int r = info.rank; r < aug.rows(); ++r)
    for (int j = a.cols(); j < aug.cols(); ++j)
      if (!FieldOps<T>::is_zero(aug(r, j), tol)) throw InternalError("solve_exact: inconsistent system");
  Matrix<T> x(a.cols(), b.cols());
  for (int i = 0; i < a.cols(); ++i)
    for (int j = 0; j < b.cols(); ++j) x(i, j) = aug(i, a.cols() + j);
  return x;
}

template <typename T>
Matrix<T> invert(const Matrix<T>& a, const T& tol = T(0)) {
  if (a.rows() != a.cols()) throw InternalError("inverse of non-square matrix");
  return solve_exact(a, Matrix<T>::identity(a.rows()), tol);
}

/// Matrix C with op . U = U . C for an invariant column span U.
template <typename T>
Matrix<T> restrict_operator(const Matrix<T>& op, const Matrix<T>& u, const T& tol = T(0)) {
  return solve_exact(u, op * u, tol);
}

/// Squared product of the nonzero singular values of a rational matrix,
/// as an exact rational: det(Q^T A^T A Q) / det(Q^T Q) for Q a basis of the
/// row space.
Rational psv2(const Matrix<Rational>& a);

}  // namespace cusptorsion
