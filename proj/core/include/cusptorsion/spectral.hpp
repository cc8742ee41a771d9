#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "cusptorsion/matrix.hpp"
#include "cusptorsion/real.hpp"

namespace cusptorsion {

/// Spectral datum that is an exact rational whenever certification succeeded,
/// and a working-precision real otherwise.
struct ScalarRQ {
  std::optional<Rational> exact;
  Real approx;

  static ScalarRQ from_exact(Rational v) {
    ScalarRQ s;
    s.approx = to_real(v);
    s.exact = std::move(v);
    return s;
  }
  static ScalarRQ from_real(Real v) {
    ScalarRQ s;
    s.approx = std::move(v);
    return s;
  }

  bool is_exact() const { return exact.has_value(); }
  Real as_real(const PrecisionContext& ctx) const {
    if (exact) {
      ScopedPrecision scope(ctx);
      return to_real(*exact);
    }
    return approx;
  }
  int sign() const { return exact ? sgn(*exact) : approx.sign(); }
};

bool scalar_less(const ScalarRQ& a, const ScalarRQ& b);
bool scalar_eq(const ScalarRQ& a, const ScalarRQ& b);

using ApplyFn = std::function<Matrix<GQ>(const Matrix<GQ>&)>;

struct ExactEigenPiece {
  Rational value;
  Matrix<GQ> vectors;  // columns, in the coordinates of the supplied basis' ambient space

  int mult() const { return vectors.cols(); }
};

/// Certified exact eigendecomposition of a self-adjoint operator restricted
/// to the invariant span of `basis`. Candidate eigenvalues come from a
/// closed form (dimension <= 2, or an already-diagonal restriction) or from
/// a high-precision symmetric eigensolve followed by rational
/// reconstruction; each candidate is then verified by an exact kernel
/// computation. Returns nullopt when the verified multiplicities do not
/// exhaust the space (irrational spectrum).
std::optional<std::vector<ExactEigenPiece>> try_exact_split(const ApplyFn& apply,
                                                            const Matrix<GQ>& basis,
                                                            const Matrix<GQ>& gram,
                                                            const PrecisionContext& ctx);

/// Joint spectrum of two commuting self-adjoint operators on the span of
/// `basis`, at working precision with eigenvalue clustering at
/// 10^(-digits/2). Clusters failing a joint-invariance residual check raise
/// NumericError.
struct JointPiece {
  Real a;   // eigenvalue of the first operator
  Real b2;  // eigenvalue of the second operator
  int mult;
};
std::vector<JointPiece> joint_split_numeric(const ApplyFn& apply_a, const ApplyFn& apply_b,
                                            const Matrix<GQ>& basis, const Matrix<GQ>& gram,
                                            const PrecisionContext& ctx);

/// Eigenvalues (with multiplicity) of one self-adjoint operator on the span
/// of `basis`, numeric path.
std::vector<std::pair<Real, int>> split_values_numeric(const ApplyFn& apply,
                                                       const Matrix<GQ>& basis,
                                                       const Matrix<GQ>& gram,
                                                       const PrecisionContext& ctx);

/// Cyclic Jacobi eigendecomposition of a symmetric matrix at working
/// precision. Eigenvalues ascending; eigenvector columns match.
void jacobi_eigen(Matrix<Real> s, std::vector<Real>* values, Matrix<Real>* vectors,
                  const PrecisionContext& ctx);

/// Real embedding of a Q(i) matrix: z = x+iy maps to [[x,-y],[y,x]] blocks.
Matrix<Rational> embed_real(const Matrix<GQ>& m);

}  // namespace cusptorsion
