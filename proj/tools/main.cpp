// Command-line front end: spectral ladders, torsion-defect reports,
// verification suites, and tables.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "cusptorsion/defects.hpp"
#include "cusptorsion/dim3.hpp"
#include "cusptorsion/kostant.hpp"
#include "cusptorsion/modeldet.hpp"
#include "cusptorsion/rtorsion.hpp"
#include "cusptorsion/weights.hpp"

namespace ct = cusptorsion;

namespace {

// Exit codes are a stable contract.
constexpr int kOk = 0;
constexpr int kValidation = 2;
constexpr int kConsistency = 3;
constexpr int kUsage = 64;
constexpr int kInputFile = 66;
constexpr int kOutputFile = 73;

struct GlobalOptions {
  int digits = 64;
  std::string format = "text";
  unsigned long seed = 1;
  bool parallel = false;
};

std::string num(const ct::Real& x, int digits) { return ct::decimal_string(x, digits); }

std::vector<ct::Rational> parse_k_list(const std::string& text) {
  std::vector<ct::Rational> k;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) k.push_back(ct::parse_rational(item));
  if (k.empty()) throw ct::ValidationError("empty k-list");
  return k;
}

std::pair<int, int> parse_range(const std::string& text) {
  size_t dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(text);
      return {v, v};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ct::ValidationError("malformed range '" + text + "' (expected lo..hi)");
  }
}

// RFC-style CSV quoting; numeric fields never need it but the writer is uniform.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

struct TableWriter {
  std::ostream& out;
  std::string format;  // csv | text | structured
  std::vector<std::string> header;

  void row(const std::vector<std::string>& cells) {
    if (header.empty()) {
      header = cells;
      if (format == "structured") return;  // keys repeat on every line instead
    }
    if (format == "csv") {
      for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out << ",";
        out << csv_field(cells[i]);
      }
    } else if (format == "structured") {
      for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out << " ";
        out << (i < header.size() ? header[i] : "col" + std::to_string(i)) << "=" << cells[i];
      }
    } else {
      for (size_t i = 0; i < cells.size(); ++i) {
        if (i) out << "  ";
        out << cells[i];
      }
    }
    out << "\n";
  }
};

int run_ladder(int d, const std::string& flavor, const std::string& klist) {
  std::vector<ct::Rational> parsed_k;
  try {
    parsed_k = parse_k_list(klist);
  } catch (const ct::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  ct::HighestWeight hw;
  hw.spec.d = d;
  hw.spec.flavor = ct::parse_flavor(flavor);
  hw.k = parsed_k;
  ct::validate(hw);
  ct::LambdaLadder lad = ct::lambda_ladder(hw);
  std::cout << "record=" << ct::format_weight_record(hw) << "\n";
  for (int q = 0; q <= 2 * lad.n; ++q)
    std::cout << "lambda[" << q << "]=" << ct::format_rational(lad.at(q)) << "\n";
  std::cout << "lambdaPlus=" << ct::format_rational(lad.lam_plus) << "\n";
  std::cout << "lambdaMinus=" << ct::format_rational(lad.lam_minus) << "\n";
  bool acyclic = ct::is_strongly_acyclic(hw);
  std::cout << "acyclic=" << (acyclic ? "true" : "false") << "\n";
  std::cout << "weylDim=" << ct::weyl_dim(hw).get_str() << "\n";
  if (acyclic) std::cout << "gap=" << (ct::ladder_gap_check(lad) ? "true" : "false") << "\n";
  return kOk;
}

void print_defect_report(const ct::DefectReport& r, int m, int digits,
                         const ct::Real* cross_residual) {
  std::cout << "m=" << (m >= 0 ? std::to_string(m) : std::string("-")) << "\n";
  std::cout << "kappa=" << r.kappa << "\n";
  std::cout << "alpha=" << num(r.alpha, digits) << "\n";
  std::cout << "beta=" << num(r.beta, digits) << "\n";
  std::cout << "aTerm=" << num(r.a_term, digits) << "\n";
  std::cout << "bTerm=" << num(r.b_term, digits) << "\n";
  std::cout << "fpRatio=" << num(r.fp_ratio, digits) << "\n";
  std::cout << "totalDefect=" << num(r.total_defect, digits) << "\n";
  std::cout << "cRho=" << num(r.c_rho, digits) << "\n";
  if (cross_residual) std::cout << "crossCheckResidual=" << num(*cross_residual, 3) << "\n";
}

int run_defect(const GlobalOptions& g, int d, int m, const std::string& rep_file, int kappa) {
  ct::PrecisionContext ctx(g.digits);
  if (!rep_file.empty()) {
    std::ifstream in(rep_file);
    if (!in) {
      std::cerr << "cannot read " << rep_file << "\n";
      return kInputFile;
    }
    ct::RepBundle rep = ct::parse_rep_bundle(in);
    ct::CochainComplex cx = ct::exterior_complex(rep);
    ct::HarmonicDecomposition h = ct::harmonic_spaces(cx, rep, ctx);
    std::vector<ct::VqabEntry> vq = ct::vqab_decomposition(cx, rep, ctx);
    ct::LambdaLadder ladder = ct::ladder_from_harmonics(h);
    ct::DefectReport report =
        ct::make_defect_report(ladder, ct::dims_from_harmonics(h), vq, kappa, ctx);
    print_defect_report(report, -1, g.digits, nullptr);
    return kOk;
  }
  if (d != 3) throw ct::ValidationError("built-in family exists only for d=3; use --rep-file");
  if (m < 1) throw ct::ValidationError("need --m >= 1");
  ct::RepBundle rep = ct::build_sym_power_rep(m);
  ct::CochainComplex cx = ct::exterior_complex(rep);
  ct::HarmonicDecomposition h = ct::harmonic_spaces(cx, rep, ctx);
  std::vector<ct::VqabEntry> vq = ct::vqab_decomposition(cx, rep, ctx);
  ct::DefectReport report = ct::make_defect_report(ct::sym_power_ladder(m),
                                                   ct::dims_from_harmonics(h), vq, kappa, ctx);
  ct::Dim3Report d3 = ct::defect_dim3(m, kappa, ctx);
  {
    ct::ScopedPrecision scope(ctx);
    if (d3.cross_check_residual > ct::pow10(-(g.digits - 10)))
      throw ct::ConsistencyError("closed form and pipeline defect disagree");
  }
  print_defect_report(report, m, g.digits, &d3.cross_check_residual);
  return kOk;
}

struct SuiteResult {
  std::string name;
  ct::Real max_residual;
  ct::Real tolerance;
  bool pass = false;
  std::string note;
};

SuiteResult suite_int6b(const GlobalOptions& g, int lmax) {
  ct::PrecisionContext ctx(g.digits);
  ct::ScopedPrecision scope(ctx);
  SuiteResult r{"int6b", ct::verify_int6b(lmax, ctx), ct::pow10(-(g.digits - 14)), false,
                "lmax=" + std::to_string(lmax)};
  r.pass = r.max_residual < r.tolerance;
  return r;
}

SuiteResult suite_md7c(const GlobalOptions& g) {
  ct::PrecisionContext ctx(g.digits);
  ct::ScopedPrecision scope(ctx);
  ct::Real max_res(0);
  for (int a = -5; a <= 5; ++a)
    for (const ct::Real& b : {ct::Real(1) / 2, ct::Real(1), ct::Real(2), ct::Real(4)}) {
      ct::Real closed = ct::logdet_shifted_diff(ct::Real(a), b, ctx);
      ct::Real oracle = ct::zeta_diff_numeric(ct::Real(a), b, ctx);
      max_res = std::max(max_res, abs(closed + oracle));
    }
  SuiteResult r{"md7c", max_res, ct::pow10(-6), false, "grid a=-5..5, b in {1/2,1,2,4}"};
  r.pass = r.max_residual < r.tolerance;
  return r;
}

SuiteResult suite_cb(const GlobalOptions& g) {
  ct::PrecisionContext ctx(g.digits);
  ct::ScopedPrecision scope(ctx);
  ct::Real max_res(0);
  for (int twice_b = 1; twice_b <= 20; ++twice_b) {
    ct::Rational b = ct::make_rational(twice_b, 2);
    ct::Real exact = ct::c_b_exact(b).value(ctx);
    ct::Real numeric = ct::c_b_numeric(ct::to_real(b), ctx);
    max_res = std::max(max_res, abs(exact - numeric));
  }
  SuiteResult r{"cb", max_res, ct::pow10(-(g.digits - 14)), false, "b=1/2..10 step 1/2"};
  r.pass = r.max_residual < r.tolerance;
  return r;
}

SuiteResult suite_mv(const GlobalOptions& g, int seeds) {
  ct::PrecisionContext ctx(g.digits);
  ct::ScopedPrecision scope(ctx);
  std::mt19937_64 rng(g.seed);
  ct::Real max_res(0);
  bool pass = true;
  for (int s = 0; s < seeds; ++s) {
    int n = 1 + static_cast<int>(rng() % 3);
    std::vector<int> zdims(static_cast<size_t>(2 * n + 1));
    for (int q = 0; q <= 2 * n; ++q) zdims[static_cast<size_t>(q)] = static_cast<int>(rng() % 4);
    zdims[static_cast<size_t>(n)] = 2 * static_cast<int>(rng() % 3);
    ct::LESData les = ct::make_mv_les(n, zdims);
    ct::MvReport report = ct::mv_torsion_check(les);
    pass = pass && report.pass;
    max_res = std::max(max_res, abs(ct::to_real(report.tau) - 1));
  }
  SuiteResult r{"mv", max_res, ct::pow10(-10), pass, std::to_string(seeds) + " seeds"};
  r.pass = pass && max_res < r.tolerance;
  return r;
}

SuiteResult suite_vanest(const GlobalOptions& g, int mmax) {
  bool pass = true;
  for (int m = 0; m <= mmax; ++m) {
    auto plain = ct::vanest_compare(m, ct::GQ(1), ct::GQ(ct::Rational(0), ct::Rational(1)),
                                    {ct::GQ(1), ct::GQ(1)});
    pass = pass && plain.match;
    auto twisted = ct::vanest_compare(m, ct::GQ(1), ct::GQ(ct::Rational(0), ct::Rational(1)),
                                      {ct::GQ(-1), ct::GQ(1)});
    pass = pass && twisted.group_acyclic;
  }
  SuiteResult r{"vanest", ct::Real(0), ct::Real(1), pass, "m<=" + std::to_string(mmax)};
  (void)g;
  return r;
}

SuiteResult suite_consistency(const GlobalOptions& g, int mmax, int cases) {
  ct::PrecisionContext ctx(g.digits);
  ct::ScopedPrecision scope(ctx);
  ct::Real max_res(0);
  auto check = [&](const ct::LambdaLadder& ladder, const ct::CohomologyDims& dims,
                   const std::vector<ct::VqabEntry>& vq, int kappa) {
    ct::DefectReport r = ct::make_defect_report(ladder, dims, vq, kappa, ctx);
    ct::Real lhs = kappa * (r.alpha + r.beta);
    ct::Real rhs = kappa * (r.a_term + r.b_term) - r.fp_ratio;
    max_res = std::max(max_res, abs(lhs - rhs));
  };
  for (int m = 1; m <= mmax; ++m)
    for (int kappa : {0, 1, 2})
      check(ct::sym_power_ladder(m), ct::sym_power_dims(), ct::sym_power_vqab(m), kappa);

  std::mt19937_64 rng(g.seed);
  int produced = 0;
  while (produced < cases) {
    int n = 1 + static_cast<int>(rng() % 4);
    ct::HighestWeight hw;
    hw.spec.d = 2 * n + 1;
    hw.spec.flavor = rng() % 2 ? ct::GroupFlavor::Spin : ct::GroupFlavor::SO0;
    bool half = hw.spec.flavor == ct::GroupFlavor::Spin && rng() % 2;
    ct::Rational prev(static_cast<long>(12 + rng() % 8));
    if (half) prev += ct::make_rational(1, 2);
    for (int i = 0; i <= n; ++i) {
      hw.k.push_back(prev);
      if (i < n) prev -= ct::Rational(static_cast<long>(rng() % 3));
    }
    if (sgn(hw.k.back()) == 0) hw.k.back() += half ? ct::make_rational(1, 2) : ct::Rational(1);
    ct::LambdaLadder ladder = ct::lambda_ladder(hw);

    ct::CohomologyDims dims;
    dims.dims.assign(static_cast<size_t>(2 * n + 1), 0);
    long acc = 0;
    for (int q = 0; q < n; ++q) {
      int v = static_cast<int>(rng() % 4);
      dims.dims[static_cast<size_t>(q)] = v;
      dims.dims[static_cast<size_t>(2 * n - q)] = v;
      acc += (q % 2 == 0 ? 2 : -2) * v;
    }
    long middle = (n % 2 == 0 ? -1 : 1) * acc;  // vanishing Euler characteristic
    if (middle < 0 || middle % 2 != 0) continue;
    dims.dims[static_cast<size_t>(n)] = static_cast<int>(middle);
    dims.plus_dim = static_cast<int>(middle / 2);
    dims.minus_dim = static_cast<int>(middle - middle / 2);

    std::vector<ct::VqabEntry> vq;
    int entries = static_cast<int>(rng() % 5);
    for (int e = 0; e < entries; ++e) {
      int q = static_cast<int>(rng() % (2 * n));
      ct::Rational a(static_cast<long>(rng() % 11) - 5);
      ct::Rational b2(static_cast<long>(1 + rng() % 20));
      vq.push_back({q, ct::ScalarRQ::from_exact(a), ct::ScalarRQ::from_exact(b2),
                    static_cast<int>(1 + rng() % 3)});
    }
    check(ladder, dims, vq, static_cast<int>(rng() % 3));
    ++produced;
  }
  SuiteResult r{"consistency", max_res, ct::pow10(-(g.digits - 14)), false,
                "family m<=" + std::to_string(mmax) + " plus " + std::to_string(cases) +
                    " randomized"};
  r.pass = r.max_residual < r.tolerance;
  return r;
}

int run_verify(const GlobalOptions& g, const std::string& suite, int lmax, int seeds, int mmax,
               int cases) {
  std::vector<SuiteResult> results;
  if (suite == "int6b" || suite == "all") results.push_back(suite_int6b(g, lmax));
  if (suite == "md7c" || suite == "all") results.push_back(suite_md7c(g));
  if (suite == "cb" || suite == "all") results.push_back(suite_cb(g));
  if (suite == "mv" || suite == "all") results.push_back(suite_mv(g, seeds));
  if (suite == "vanest" || suite == "all") results.push_back(suite_vanest(g, std::min(mmax, 10)));
  if (suite == "consistency" || suite == "all")
    results.push_back(suite_consistency(g, mmax, cases));
  if (results.empty()) {
    std::cerr << "unknown suite '" << suite
              << "' (known: int6b md7c cb mv vanest consistency all)\n";
    return kUsage;
  }
  bool all_pass = true;
  for (const SuiteResult& r : results) {
    std::cout << "suite=" << r.name << " max_residual=" << num(r.max_residual, 3)
              << " tolerance=" << num(r.tolerance, 3) << " " << (r.pass ? "PASS" : "FAIL");
    if (!r.note.empty()) std::cout << " (" << r.note << ")";
    std::cout << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kOk : kConsistency;
}

int run_table(const GlobalOptions& g, const std::string& family, const std::string& range,
              int lmax, int stride, const std::string& out_path) {
  ct::PrecisionContext ctx(g.digits);
  std::ostringstream body;
  TableWriter w{body, g.format};

  if (family == "bc-ratio") {
    w.row({"l", "b", "c", "ratio_deviation"});
    ct::ScopedPrecision scope(ctx);
    ct::Real b2 = ct::b_ell(2, ctx), c2 = ct::c_ell(2, ctx);
    for (int l = 2; l <= lmax; ++l) {
      ct::Real bl = ct::b_ell(l, ctx), cl = ct::c_ell(l, ctx);
      w.row({std::to_string(l), num(bl, g.digits), num(cl, g.digits),
             num(abs(cl / c2 - bl / b2), 3)});
    }
  } else if (family == "dim3-defect") {
    auto [lo, hi] = parse_range(range);
    if (lo < 1 || hi < lo) throw ct::ValidationError("need a range of m >= 1");
    w.row({"m", "kappa", "alpha", "beta", "defect", "residual"});
    std::vector<std::vector<std::string>> rows(static_cast<size_t>(hi - lo + 1));
    auto work = [&](int m) {
      ct::Dim3Report d3 = ct::defect_dim3(m, 1, ctx);
      ct::ScopedPrecision scope(ctx);
      ct::Real alpha_v = 2 * log(ct::Real(m) + 2);
      rows[static_cast<size_t>(m - lo)] = {std::to_string(m),
                                           "1",
                                           num(alpha_v, g.digits),
                                           num(d3.b_m, g.digits),
                                           num(d3.per_cusp_defect, g.digits),
                                           num(d3.cross_check_residual, 3)};
    };
    // One precision scope covering all workers: the default is process-wide,
    // and a per-worker scope would restore it while siblings still run.
    ct::ScopedPrecision scope(ctx);
    if (g.parallel) {
      unsigned threads = std::max(2u, std::thread::hardware_concurrency());
      std::vector<std::future<void>> futs;
      for (unsigned t = 0; t < threads; ++t)
        futs.push_back(std::async(std::launch::async, [&, t]() {
          for (int mm = lo + static_cast<int>(t); mm <= hi; mm += static_cast<int>(threads))
            work(mm);
        }));
      for (auto& f : futs) f.get();
    } else {
      for (int mm = lo; mm <= hi; ++mm) work(mm);
    }
    for (const auto& r : rows)
      if (!r.empty()) w.row(r);
  } else if (family == "growth") {
    auto [lo, hi] = parse_range(range);
    w.row({"m", "alpha", "beta", "defect", "defect_over_mlogm"});
    for (const ct::GrowthRow& row : ct::defect_growth_scan(lo, hi, stride, ctx))
      w.row({std::to_string(row.m), num(row.alpha, g.digits), num(row.beta, g.digits),
             num(row.defect, g.digits), num(row.ratio, g.digits)});
  } else {
    std::cerr << "unknown table family '" << family << "'\n";
    return kUsage;
  }

  if (out_path.empty()) {
    std::cout << body.str();
  } else {
    std::ofstream out(out_path);
    out << body.str();
    out.flush();
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return kOutputFile;
    }
  }
  return kOk;
}

int run_detline(const GlobalOptions& g, const std::string& op, const std::string& a_text,
                const std::string& b_text) {
  ct::PrecisionContext ctx(g.digits);
  ct::ScopedPrecision scope(ctx);
  auto real_of = [&](const std::string& s) -> ct::Real {
    try {
      if (s.find('.') == std::string::npos && s.find('e') == std::string::npos)
        return ct::to_real(ct::parse_rational(s));
      return ct::Real(s);
    } catch (const std::exception&) {
      throw ct::ValidationError("malformed number '" + s + "'");
    }
  };
  if (op == "cb-exact") {
    ct::ExactConstant c = ct::c_b_exact(ct::parse_rational(b_text));
    std::cout << "rat=" << ct::format_rational(c.rat) << " piPow=" << c.pi_pow
              << " value=" << num(c.value(ctx), g.digits) << "\n";
  } else if (op == "cb-numeric") {
    std::cout << num(ct::c_b_numeric(real_of(b_text), ctx), g.digits) << "\n";
  } else if (op == "logdet") {
    std::cout << num(ct::logdet_delta(real_of(a_text), ctx), g.digits) << "\n";
  } else if (op == "shifted-diff") {
    std::cout << num(ct::logdet_shifted_diff(real_of(a_text), real_of(b_text), ctx), g.digits)
              << "\n";
  } else if (op == "zeta-diff") {
    std::cout << num(ct::zeta_diff_numeric(real_of(a_text), real_of(b_text), ctx), g.digits)
              << "\n";
  } else {
    std::cerr << "unknown detline operation '" << op << "'\n";
    return kUsage;
  }
  return kOk;
}

int run_torsion(const GlobalOptions& g, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return kInputFile;
  }
  ct::PrecisionContext ctx(g.digits);
  ct::ParsedBasedComplex parsed = ct::parse_based_complex(in, ctx);
  if (parsed.exact)
    std::cout << "torsion=" << ct::format_rational(ct::torsion(parsed.rational)) << "\n";
  else
    std::cout << "torsion=" << num(ct::torsion(parsed.real, ctx), g.digits) << "\n";
  return kOk;
}

int run_rep(const std::string& path, bool echo) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot read " << path << "\n";
    return kInputFile;
  }
  ct::RepBundle rep = ct::parse_rep_bundle(in);
  std::cout << "valid=true admissible=" << (ct::is_admissible(rep) ? "true" : "false") << "\n";
  if (echo) std::cout << ct::canonical_rep_bundle(rep);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral and torsion constants of cusped odd-dimensional hyperbolic space forms"};
  app.require_subcommand(1);

  GlobalOptions g;
  if (const char* env = std::getenv("CUSP_TORSION_PRECISION")) g.digits = std::atoi(env);
  app.add_option("--precision", g.digits, "working precision in decimal digits (>= 16)");
  app.add_option("--format", g.format, "output format: text | csv | structured")
      ->check(CLI::IsMember({"text", "csv", "structured"}));
  app.add_option("--seed", g.seed, "seed for randomized suites");
  app.add_flag("--parallel", g.parallel, "parallelize table scans (identical output)");

  auto* ladder_cmd = app.add_subcommand("ladder", "spectral ladder of a highest weight");
  int d = 3;
  std::string flavor = "SO0", klist;
  ladder_cmd->add_option("--d", d, "odd dimension >= 3");
  ladder_cmd->add_option("--flavor", flavor, "SO0 | Spin");
  ladder_cmd->add_option("--k", klist, "comma-separated weight entries")->required();

  auto* defect_cmd = app.add_subcommand("defect", "torsion defect report");
  int m = 0, kappa = 1;
  std::string rep_file;
  defect_cmd->add_option("--d", d, "dimension (3 for the built-in family)");
  defect_cmd->add_option("--m", m, "symmetric power");
  defect_cmd->add_option("--rep-file", rep_file, "bundle file for a user representation");
  defect_cmd->add_option("--kappa", kappa, "number of contributing cusps");

  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  int lmax = 64, seeds = 100, mmax = 100, cases = 1000;
  verify_cmd->add_option("suite", suite, "int6b | md7c | cb | mv | vanest | consistency | all")
      ->required();
  verify_cmd->add_option("--lmax", lmax, "largest index for the ratio identity");
  verify_cmd->add_option("--seeds", seeds, "number of randomized gluing instances");
  verify_cmd->add_option("--mmax", mmax, "largest symmetric power");
  verify_cmd->add_option("--cases", cases, "number of randomized synthetic inputs");

  auto* table_cmd = app.add_subcommand("table", "emit a table");
  std::string family, range = "1..50", out_path;
  int stride = 1;
  table_cmd->add_option("family", family, "dim3-defect | bc-ratio | growth")->required();
  table_cmd->add_option("--m", range, "range lo..hi");
  table_cmd->add_option("--lmax", lmax, "largest index");
  table_cmd->add_option("--stride", stride, "step between rows");
  table_cmd->add_option("-o,--output", out_path, "write to file instead of stdout");

  auto* detline_cmd = app.add_subcommand("detline", "one-dimensional model determinants");
  std::string op, a_text = "1", b_text = "1";
  detline_cmd->add_option("op", op, "cb-exact | cb-numeric | logdet | shifted-diff | zeta-diff")
      ->required();
  detline_cmd->add_option("--a", a_text, "shift parameter a");
  detline_cmd->add_option("--b", b_text, "weight/offset parameter b");

  auto* torsion_cmd = app.add_subcommand("torsion", "Milnor torsion of a based complex file");
  std::string torsion_path;
  torsion_cmd->add_option("file", torsion_path, "based complex file")->required();

  auto* rep_cmd = app.add_subcommand("rep", "validate a bundle file");
  std::string rep_path;
  bool echo = false;
  rep_cmd->add_option("--file", rep_path, "bundle file")->required();
  rep_cmd->add_flag("--echo", echo, "print the canonical form");

  for (CLI::App* sub : {ladder_cmd, defect_cmd, verify_cmd, table_cmd, detline_cmd, torsion_cmd,
                        rep_cmd})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (g.digits < 16) throw ct::ValidationError("precision must be at least 16 digits");
    if (ladder_cmd->parsed()) return run_ladder(d, flavor, klist);
    if (defect_cmd->parsed()) return run_defect(g, d, m, rep_file, kappa);
    if (verify_cmd->parsed()) return run_verify(g, suite, lmax, seeds, mmax, cases);
    if (table_cmd->parsed()) return run_table(g, family, range, lmax, stride, out_path);
    if (detline_cmd->parsed()) return run_detline(g, op, a_text, b_text);
    if (torsion_cmd->parsed()) return run_torsion(g, torsion_path);
    if (rep_cmd->parsed()) return run_rep(rep_path, echo);
  } catch (const ct::ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const ct::ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kValidation;
  } catch (const ct::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kConsistency;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return kUsage;
}
