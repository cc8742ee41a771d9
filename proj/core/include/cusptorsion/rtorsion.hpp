#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cusptorsion/matrix.hpp"
#include "cusptorsion/real.hpp"

namespace cusptorsion {

/// Finite cochain complex written in distinguished bases: diff[q] maps
/// degree q to q+1. coh_bases[q] columns are chosen cohomology
/// representatives (empty where the cohomology vanishes).
template <typename T>
struct BasedComplex {
  std::vector<int> dims;
  std::vector<Matrix<T>> diff;       // size dims.size()-1
  std::vector<Matrix<T>> coh_bases;  // size dims.size(); 0-column matrices allowed

  int degrees() const { return static_cast<int>(dims.size()); }
};

/// Milnor torsion of a based complex. For each degree a section of the
/// differential is chosen greedily (largest pivot first); the degree-q
/// change-of-basis determinant D_q from (image basis | cohomology basis |
/// section lift) to the distinguished basis enters as |D_q|^(+-1) with the
/// sign fixed so that 0 -> R -(c)-> R -> 0 gives |c|. Changing the degree-q
/// basis by A multiplies the result by |det A|^((-1)^q).
///
/// `sections`, when supplied, overrides the greedy choice (used by the
/// exhaustive cross-check); each entry lists the chosen column indices.
Rational torsion(const BasedComplex<Rational>& cx,
                 const std::vector<std::vector<int>>* sections = nullptr);
Real torsion(const BasedComplex<Real>& cx, const PrecisionContext& ctx,
             const std::vector<std::vector<int>>* sections = nullptr);

/// All column subsets that map to a basis of the image, for the section
/// independence cross-check (small complexes only).
std::vector<std::vector<int>> all_sections(const Matrix<Rational>& d);

/// Mayer-Vietoris long exact sequence of the doubling, written in the bases
/// that the gluing construction produces: per degree q the nodes are
/// H^q(double), H^q(half) + H^q(half), H^q(cut locus), with the restriction
/// map i, difference map j, and connecting map to degree q+1.
struct LESData {
  int n = 1;
  std::vector<int> z_dims;  // dim H^q(cut locus), q = 0..2n+1 (top entry 0)
  std::vector<int> x_dims;  // dim H^q(half)
  std::vector<int> m_dims;  // dim H^q(double)
  BasedComplex<Rational> complex;

  int i_node(int q) const { return 3 * q; }
  const Matrix<Rational>& i_map(int q) const { return complex.diff[static_cast<size_t>(3 * q)]; }
  const Matrix<Rational>& j_map(int q) const { return complex.diff[static_cast<size_t>(3 * q + 1)]; }
  const Matrix<Rational>& bd_map(int q) const { return complex.diff[static_cast<size_t>(3 * q + 2)]; }
};

/// Builds the based long exact sequence for given cut-locus dimensions
/// z_dims[q], q = 0..2n (z_dims[n] must be even; the half-space dimensions
/// follow: 0 below the middle, half at the middle, equal above).
LESData make_mv_les(int n, const std::vector<int>& z_dims);

/// Same construction with independently chosen half-space dimensions
/// x_dims[q] <= z_dims[q], both over q = 0..2n+1 (top cut-locus entry 0).
LESData make_mv_les_explicit(int n, const std::vector<int>& z_dims,
                             const std::vector<int>& x_dims);

struct MvReport {
  Rational tau;                        // torsion of the based sequence; expected 1
  std::vector<Rational> factor2_i;     // squared section determinant of i_q
  std::vector<Rational> factor2_j;     // same for j_q; expected 2^{dim H^q(half)}
  std::vector<Rational> factor2_bd;    // same for the connecting map; expected 1
  bool pass = false;
};

/// Torsion of the sequence plus the per-degree section determinants,
/// all exact.
MvReport mv_torsion_check(const LESData& data);

/// Gluing rule tau(double) = tau(half)^2 / tau(cut). With the odd-n flag the
/// cut-locus torsion must be 1 and is enforced.
Real milnor_glue(const Real& tau_x, const Real& tau_z, bool n_odd);

/// Cohomology dimensions of the rank-2n lattice acting on V through the
/// commuting invertible matrices gens[i] twisted by unit scalars twist[i],
/// from the Koszul complex of the operators twist[i] gens[i] - 1. Exact.
std::vector<int> group_cohomology_lattice(const std::vector<Matrix<GQ>>& gens,
                                          const std::vector<GQ>& twist);

struct VanEstReport {
  std::vector<int> group_dims;
  std::vector<int> kostant_dims;
  bool twist_trivial = true;
  bool group_acyclic = false;
  bool match = false;  // group side equals harmonic side (expected iff trivial twist)
};

/// Compares lattice cohomology of Sym^m under the unipotent action of the
/// lattice spanned by z1, z2 against the harmonic-space dimensions.
VanEstReport vanest_compare(int m, const GQ& z1, const GQ& z2, const std::array<GQ, 2>& twist);

/// File format: `dims=1,2,1`, then `d[q]=row;row;...` for each degree with
/// both endpoint dimensions nonzero, optional `coh[q]=...`. Rational entries
/// make the torsion exact; any decimal entry switches to working precision.
struct ParsedBasedComplex {
  bool exact = true;
  BasedComplex<Rational> rational;
  BasedComplex<Real> real;
};
ParsedBasedComplex parse_based_complex(std::istream& in, const PrecisionContext& ctx);

}  // namespace cusptorsion
