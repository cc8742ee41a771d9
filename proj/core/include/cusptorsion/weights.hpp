#pragma once

#include <string>
#include <vector>

#include "cusptorsion/rational.hpp"

namespace cusptorsion {

enum class GroupFlavor { SO0, Spin };

std::string to_string(GroupFlavor f);
GroupFlavor parse_flavor(const std::string& s);

/// The ambient group SO0(d,1) or Spin(d,1) with d = 2n+1 odd.
struct GroupSpec {
  int d = 3;
  GroupFlavor flavor = GroupFlavor::SO0;

  int n() const { return (d - 1) / 2; }
};

/// Highest weight (k_1,...,k_{n+1}) of an irreducible representation.
/// SO0 weights are integral; Spin weights are all integral or all
/// half-odd-integral.
struct HighestWeight {
  GroupSpec spec;
  std::vector<Rational> k;
};

/// Throws ValidationError when d is not odd >= 3, the length of k is not
/// n+1, dominance k_1 >= ... >= k_n >= |k_{n+1}| fails, or the integrality
/// rule for the flavor is violated.
void validate(const HighestWeight& hw);

/// Eigenvalue ladder lambda_q = k_{q+1} + n - q for q <= n, antisymmetrized
/// across the middle degree, with the middle-degree split lambda^+/lambda^-.
struct LambdaLadder {
  int n = 1;
  std::vector<Rational> lam;  // indexed by q = 0..2n
  Rational lam_plus, lam_minus;

  const Rational& at(int q) const { return lam.at(static_cast<size_t>(q)); }
};

LambdaLadder lambda_ladder(const HighestWeight& hw);

/// k_{n+1} != 0; equivalently, the middle-degree weight lambda^+ is positive,
/// which is what every downstream formula needs. (The representation-level
/// characterisation via the Cartan involution is not re-derived here.)
bool is_strongly_acyclic(const HighestWeight& hw);

/// Dimension of the irreducible of the rank-(n+1) type-D algebra with this
/// highest weight, by the Weyl dimension formula. Exact; throws InternalError
/// if the product fails to be a positive integer.
BigInt weyl_dim(const HighestWeight& hw);

/// All gap inequalities lambda_q >= lambda_{q+1} + 1 (q <= n-2) and
/// lambda_{n-1} >= lambda^+ + 1. Requires a ladder from a strongly acyclic
/// weight (lambda^+ > 0); throws ValidationError otherwise.
bool ladder_gap_check(const LambdaLadder& ladder);

/// Record format: `d=<int> flavor=<SO0|Spin> k=<r1,r2,...>`.
HighestWeight parse_weight_record(const std::string& line);
std::string format_weight_record(const HighestWeight& hw);

}  // namespace cusptorsion
