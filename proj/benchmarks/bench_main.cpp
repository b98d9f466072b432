#include <benchmark/benchmark.h>

#include "lfapprox/approximation/z_function.hpp"
#include "lfapprox/eigenform/coefficients.hpp"
#include "lfapprox/numerics/gamma.hpp"
#include "lfapprox/regularization/principal_parts.hpp"

using namespace lfapprox;

namespace {

const CoefficientTable& tau() {
  static const CoefficientTable table = delta_coefficients(2000);
  return table;
}

void BM_Gamma(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  PrecisionContext ctx(bits);
  BigComplex s(6.0, 9.22, bits);
  for (auto _ : state) benchmark::DoNotOptimize(gamma(s, ctx));
}
BENCHMARK(BM_Gamma)->Arg(128)->Arg(256)->Arg(512);

void BM_UpperIncompleteGamma(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  PrecisionContext ctx(bits);
  BigComplex s(6.0, 9.22, bits);
  BigReal a = BigReal::pi(bits) * 2L;
  for (auto _ : state) benchmark::DoNotOptimize(upper_incomplete_gamma(s, a, ctx));
}
BENCHMARK(BM_UpperIncompleteGamma)->Arg(128)->Arg(256)->Arg(512);

void BM_LambdaFull(benchmark::State& state) {
  const int bits = static_cast<int>(state.range(0));
  PrecisionContext ctx(bits);
  SeriesEngine engine(tau(), EigenformSpec::delta(), ctx);
  BigComplex s(6.0, 20.0, bits);
  BigReal target(1e-30, 64);
  for (auto _ : state) benchmark::DoNotOptimize(engine.evaluate(s, Mode::full_mode(), target));
}
BENCHMARK(BM_LambdaFull)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_ZFourModes(benchmark::State& state) {
  ApproxConfig cfg;
  cfg.target_abs_error = BigReal(1e-20, 64);
  ZFunction Z(tau(), EigenformSpec::delta(), cfg, PrecisionContext(160));
  std::vector<Mode> modes{Mode::full_mode(), Mode::approx(1), Mode::approx(2), Mode::approx(3)};
  BigReal t(17.5, 192);
  for (auto _ : state) benchmark::DoNotOptimize(Z.evaluate(t, modes));
}
BENCHMARK(BM_ZFourModes)->Unit(benchmark::kMillisecond);

void BM_PrincipalPartSum(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  PrecisionContext ctx(128);
  for (auto _ : state) {
    PrincipalPartSum pp(N, BigReal(20L, 64), tau(), EigenformSpec::delta(), ctx);
    benchmark::DoNotOptimize(pp.parts().size());
  }
}
BENCHMARK(BM_PrincipalPartSum)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond)->Iterations(1);

void BM_DeltaCoefficients(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(delta_coefficients(state.range(0)));
}
BENCHMARK(BM_DeltaCoefficients)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
