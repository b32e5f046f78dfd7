#include <benchmark/benchmark.h>

#include "orbint/descent.hpp"
#include "orbint/harness.hpp"
#include "orbint/integrals.hpp"
#include "orbint/weil.hpp"
#include "orbint/zeta.hpp"

using namespace orbint;

static void BM_CyclotomicInverse(benchmark::State& st) {
  CycScalar a = CycScalar(1) + CycScalar::root_of_unity(st.range(0), 1) + CycScalar::root_of_unity(st.range(0), 3);
  for (auto _ : st) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_CyclotomicInverse)->Arg(9)->Arg(25)->Arg(27);

static void BM_FourierRoundTrip(benchmark::State& st) {
  Generator g(1);
  StepFunction f = g.step_function(4, 3, 6);
  QMat id = QMat::identity(4);
  for (auto _ : st) benchmark::DoNotOptimize(f.fourier(id).fourier(id).equals(f.reflect()));
}
BENCHMARK(BM_FourierRoundTrip);

static void BM_MultZeta(benchmark::State& st) {
  LocalFieldSpec s(st.range(0), Rational(smallest_nonresidue(st.range(0))));
  Generator g(2);
  StepFunction f = g.step_function(1, s.p(), 4);
  QuadFactor fac(Poly::x(), s);
  for (auto _ : st) benchmark::DoNotOptimize(mult_zeta(f, {ZetaFactor{fac, true, 1}}, s));
}
BENCHMARK(BM_MultZeta)->Arg(3)->Arg(5)->Arg(7);

// m factors of mixed type, one epsilon on the germ grid
static void BM_TorusOrbitIntegral(benchmark::State& st) {
  LocalFieldSpec s(3, Rational(2));
  std::vector<int> mix = st.range(0) == 1 ? std::vector<int>{1} : st.range(0) == 2 ? std::vector<int>{0, 1} : std::vector<int>{0, 1, 2};
  EtaleAlgebra a = EtaleAlgebra::from_factors(realize_mix(mix, s), s);
  Generator g(3);
  StepFunction f = g.step_function(2 * a.dimension(), 3, 3);
  auto grid = germ_grid(a, 2, 1);
  for (auto _ : st) {
    TorusIntegrator ti(a, f);
    for (const auto& e : grid) benchmark::DoNotOptimize(ti(e));
  }
  st.counters["eps"] = static_cast<double>(grid.size());
}
BENCHMARK(BM_TorusOrbitIntegral)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_KAverage(benchmark::State& st) {
  LocalFieldSpec s(3, Rational(2));
  Generator g(4);
  StepFunction f = g.block_step_function({4, 2, 2}, 3, 2, st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(k_average(f, 2, s, st.range(0)));
}
BENCHMARK(BM_KAverage)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_SignIdentity(benchmark::State& st) {
  LocalFieldSpec s(5, Rational(2));
  for (auto _ : st) benchmark::DoNotOptimize(verify_sign_identity(s, 3));
}
BENCHMARK(BM_SignIdentity)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
