#pragma once

#include <iosfwd>
#include <vector>

#include "cusptorsion/matrix.hpp"
#include "cusptorsion/spectral.hpp"

namespace cusptorsion {

/// Finite-dimensional data of an abelian 2n-dimensional nilpotent algebra
/// acting on a k-dimensional complex space: the 2n action matrices for an
/// orthonormal real basis of the algebra, the grading operator H with
/// [H, N_i] = N_i, and an inner product on the space.
struct RepBundle {
  int n = 1;
  int dimV = 1;
  std::vector<Matrix<GQ>> N;  // 2n matrices, dimV x dimV
  Matrix<GQ> H;               // dimV x dimV
  Matrix<GQ> gram;            // Hermitian positive definite

  int num_generators() const { return 2 * n; }
};

/// Checks the structural relations: pairwise commuting N_i, [H, N_i] = N_i,
/// Hermitian gram, consistent shapes. Exact, tolerance zero.
void validate_rep(const RepBundle& rep);

/// gram Hermitian positive definite and H self-adjoint for gram; that is the
/// finitely checkable part of admissibility, and all the spectral machinery
/// needs.
bool is_admissible(const RepBundle& rep);

/// Symmetric power Sym^m of the defining 2-dimensional representation, as a
/// bundle for n = 1. Basis v_0..v_m of weight j - m/2; the two generators act
/// by the unit and imaginary directions of the complexified algebra, and the
/// inner product carries the inverse-binomial weights that make the grading
/// self-adjoint and the raising/lowering actions mutually adjoint.
RepBundle build_sym_power_rep(int m);

/// Chevalley-Eilenberg complex Lambda^q n^* (x) V with its differential,
/// gram-adjoint, and enough indexing data to slice by grading weight.
struct CochainComplex {
  int n = 1;
  int dimV = 1;
  std::vector<int> dims;           // q = 0..2n
  std::vector<Matrix<GQ>> d;       // d[q]: degree q -> q+1, q = 0..2n-1
  std::vector<Matrix<GQ>> dstar;   // dstar[q]: degree q -> q-1, q = 1..2n ([0] unused)

  int degrees() const { return 2 * n + 1; }
};

/// Builds the complex; throws ValidationError when rep fails its structural
/// relations and InternalError if d^2 != 0 afterwards (a bug, not bad input).
CochainComplex exterior_complex(const RepBundle& rep);

/// Weight operator on degree q: blockdiag(H) - q. Commutes with d and dstar.
Matrix<GQ> wop_matrix(const CochainComplex& cx, const RepBundle& rep, int q);

/// Inner product matrix on degree q (identity-of-forms tensor gram).
Matrix<GQ> degree_gram(const CochainComplex& cx, const RepBundle& rep, int q);

/// One joint eigenspace of (W+n, K^2) inside ker dstar with K^2 = b^2 > 0.
struct VqabEntry {
  int q = 0;
  ScalarRQ a;
  ScalarRQ b2;
  int mult = 1;
};

struct WeightMult {
  ScalarRQ value;
  int mult = 1;
};

struct HarmonicDecomposition {
  std::vector<int> dims;                        // dim ker L per degree
  int plus_dim = 0, minus_dim = 0;              // middle-degree split by sign of W+n
  std::vector<std::vector<WeightMult>> weights; // (W+n)-spectrum on harmonics per degree
  std::vector<Matrix<GQ>> bases;                // exact harmonic bases per degree
  std::vector<VqabEntry> vqab;
};

/// Harmonic spaces ker L = ker d cap ker dstar per degree, with the
/// (W+n)-spectrum on them. Exact; fails loudly if the kernel dimension
/// disagrees with rank bookkeeping (dim ker d_q - rank d_{q-1}).
HarmonicDecomposition harmonic_spaces(const CochainComplex& cx, const RepBundle& rep,
                                      const PrecisionContext& ctx = PrecisionContext());

/// Joint (W+n, K^2) decomposition of ker dstar away from the harmonic part;
/// exact whenever the spectra certify as rational, else clustered numerics.
/// Requires an admissible bundle.
std::vector<VqabEntry> vqab_decomposition(const CochainComplex& cx, const RepBundle& rep,
                                          const PrecisionContext& ctx = PrecisionContext());

/// Koszul/Chevalley-Eilenberg differentials for any family of commuting
/// operators on a dimv-dimensional space: degree-q space Lambda^q (x) V,
/// d(e_S (x) v) = sum_i e_i ^ e_S (x) ops[i] v.
std::vector<Matrix<GQ>> koszul_differentials(int num_ops, int dimv,
                                             const std::vector<Matrix<GQ>>& ops);

/// Bundle file format: `n=..`, `dimV=..`, `N[i]=row;row;..` with complex
/// rational entries `a/b+c/d*i`, `H=..`, optional `gram=..`.
RepBundle parse_rep_bundle(std::istream& in);
std::string canonical_rep_bundle(const RepBundle& rep);

}  // namespace cusptorsion
