#include <benchmark/benchmark.h>

#include <random>

#include "cusptorsion/defects.hpp"
#include "cusptorsion/dim3.hpp"
#include "cusptorsion/kostant.hpp"
#include "cusptorsion/modeldet.hpp"
#include "cusptorsion/rtorsion.hpp"

using namespace cusptorsion;

static void SpectralPipeline(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  PrecisionContext ctx(64);
  for (auto _ : state) {
    RepBundle rep = build_sym_power_rep(m);
    CochainComplex cx = exterior_complex(rep);
    HarmonicDecomposition h = harmonic_spaces(cx, rep, ctx);
    auto vq = vqab_decomposition(cx, rep, ctx);
    benchmark::DoNotOptimize(h.dims.data());
    benchmark::DoNotOptimize(vq.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(SpectralPipeline)->RangeMultiplier(2)->Range(8, 128)->Complexity();

static void ClosedFormSum(benchmark::State& state) {
  PrecisionContext ctx(64);
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Real v = B_m(m, ctx);
    benchmark::DoNotOptimize(v.backend().data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(ClosedFormSum)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

static void RatioIdentity(benchmark::State& state) {
  PrecisionContext ctx(64);
  const int lmax = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Real v = verify_int6b(lmax, ctx);
    benchmark::DoNotOptimize(v.backend().data());
  }
}
BENCHMARK(RatioIdentity)->Arg(16)->Arg(64);

static void ZetaOracle(benchmark::State& state) {
  PrecisionContext ctx(64);
  for (auto _ : state) {
    Real v = zeta_diff_numeric(Real(3), Real(4), ctx);
    benchmark::DoNotOptimize(v.backend().data());
  }
}
BENCHMARK(ZetaOracle);

static void GluedSequenceTorsion(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const int n = static_cast<int>(state.range(0));
  std::vector<int> z(static_cast<size_t>(2 * n + 1));
  for (int& v : z) v = 2 + static_cast<int>(rng() % 3);
  z[static_cast<size_t>(n)] = 4;
  LESData les = make_mv_les(n, z);
  for (auto _ : state) {
    MvReport r = mv_torsion_check(les);
    benchmark::DoNotOptimize(&r.tau);
  }
}
BENCHMARK(GluedSequenceTorsion)->Arg(1)->Arg(3);

BENCHMARK_MAIN();
