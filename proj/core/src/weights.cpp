#include "cusptorsion/weights.hpp"

#include <sstream>

namespace cusptorsion {

std::string to_string(GroupFlavor f) { return f == GroupFlavor::SO0 ? "SO0" : "Spin"; }

GroupFlavor parse_flavor(const std::string& s) {
  if (s == "SO0") return GroupFlavor::SO0;
  if (s == "Spin") return GroupFlavor::Spin;
  throw ValidationError("unknown flavor '" + s + "' (expected SO0 or Spin)");
}

void validate(const HighestWeight& hw) {
  const int d = hw.spec.d;
  if (d < 3 || d % 2 == 0) throw ValidationError("d must be odd and >= 3, got " + std::to_string(d));
  const int n = hw.spec.n();
  if (static_cast<int>(hw.k.size()) != n + 1) {
    throw ValidationError("weight vector must have n+1 = " + std::to_string(n + 1) +
                          " entries, got " + std::to_string(hw.k.size()));
  }
  for (int i = 0; i + 1 < n; ++i) {
    if (hw.k[i] < hw.k[i + 1])
      throw ValidationError("dominance violated: k" + std::to_string(i + 1) + " < k" + std::to_string(i + 2));
  }
  if (n >= 1 && hw.k[n - 1] < abs(hw.k[n]))
    throw ValidationError("dominance violated: k" + std::to_string(n) + " < |k" + std::to_string(n + 1) + "|");
  if (hw.spec.flavor == GroupFlavor::SO0) {
    for (const Rational& ki : hw.k)
      if (!is_integer(ki)) throw ValidationError("SO0 weights must be integral");
  } else {
    // all integral or all half-odd-integral
    bool any_half = false, any_int = false;
    for (const Rational& ki : hw.k) {
      if (!is_half_integer(ki)) throw ValidationError("Spin weights must be half-integral");
      (ki.get_den() == 2 ? any_half : any_int) = true;
    }
    if (any_half && any_int)
      throw ValidationError("Spin weights must be uniformly integral or half-odd-integral");
  }
}

LambdaLadder lambda_ladder(const HighestWeight& hw) {
  validate(hw);
  const int n = hw.spec.n();
  LambdaLadder ladder;
  ladder.n = n;
  ladder.lam.resize(2 * n + 1);
  for (int q = 0; q <= n; ++q) ladder.lam[q] = hw.k[q] + (n - q);
  for (int q = n + 1; q <= 2 * n; ++q) ladder.lam[q] = -ladder.lam[2 * n - q];
  if (sgn(hw.k[n]) >= 0) {
    ladder.lam_plus = ladder.lam[n];
    ladder.lam_minus = -ladder.lam[n];
  } else {
    ladder.lam_plus = -ladder.lam[n];
    ladder.lam_minus = ladder.lam[n];
  }
  return ladder;
}

bool is_strongly_acyclic(const HighestWeight& hw) {
  validate(hw);
  return sgn(hw.k[hw.spec.n()]) != 0;
}

BigInt weyl_dim(const HighestWeight& hw) {
  validate(hw);
  const int r = hw.spec.n() + 1;  // rank of the type-D algebra
  std::vector<Rational> l(r), rho(r);
  for (int i = 0; i < r; ++i) {
    rho[i] = r - 1 - i;
    l[i] = hw.k[i] + rho[i];
  }
  Rational num(1), den(1);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) {
      num *= l[i] * l[i] - l[j] * l[j];
      den *= rho[i] * rho[i] - rho[j] * rho[j];
    }
  Rational dim = num / den;
  if (!is_integer(dim) || sgn(dim) <= 0)
    throw InternalError("Weyl dimension quotient is not a positive integer");
  return dim.get_num();
}

bool ladder_gap_check(const LambdaLadder& ladder) {
  if (sgn(ladder.lam_plus) <= 0)
    throw ValidationError("gap check requires a ladder from a strongly acyclic weight");
  const int n = ladder.n;
  for (int q = 0; q + 2 <= n; ++q)
    if (ladder.at(q) < ladder.at(q + 1) + 1) return false;
  if (n >= 1 && ladder.at(n - 1) < ladder.lam_plus + 1) return false;
  return true;
}

HighestWeight parse_weight_record(const std::string& line) {
  std::istringstream in(line);
  HighestWeight hw;
  bool have_d = false, have_k = false;
  std::string tok;
  while (in >> tok) {
    size_t eq = tok.find('=');
    if (eq == std::string::npos) throw ValidationError("malformed weight record token '" + tok + "'");
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "d") {
      try {
        hw.spec.d = std::stoi(val);
      } catch (const std::exception&) {
        throw ValidationError("malformed d value '" + val + "'");
      }
      have_d = true;
    } else if (key == "flavor") {
      hw.spec.flavor = parse_flavor(val);
    } else if (key == "k") {
      std::istringstream ks(val);
      std::string item;
      while (std::getline(ks, item, ',')) hw.k.push_back(parse_rational(item));
      have_k = true;
    } else {
      throw ValidationError("unknown weight record key '" + key + "'");
    }
  }
  if (!have_d || !have_k) throw ValidationError("weight record needs d=... and k=...");
  validate(hw);
  return hw;
}

std::string format_weight_record(const HighestWeight& hw) {
  std::string s = "d=" + std::to_string(hw.spec.d) + " flavor=" + to_string(hw.spec.flavor) + " k=";
  for (size_t i = 0; i < hw.k.size(); ++i) {
    if (i) s += ",";
    s += format_rational(hw.k[i]);
  }
  return s;
}

}  // namespace cusptorsion
