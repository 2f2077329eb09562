#include <benchmark/benchmark.h>

#include "metriclab/randomfields.hpp"
#include "metriclab/suites.hpp"

using namespace metriclab;

namespace {

MetricField perturbed(int dim, int n) {
    return conformal_perturbed_metric(ChartSpec::unit_torus(dim, n), 0.1, 2, 7);
}

void BM_CurvatureBundle2D(benchmark::State& state) {
    MetricField m = perturbed(2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(curvature_bundle(m));
}
BENCHMARK(BM_CurvatureBundle2D)->Arg(32)->Arg(64)->Arg(128);

void BM_CurvatureBundle3D(benchmark::State& state) {
    MetricField m = perturbed(3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(curvature_bundle(m));
}
BENCHMARK(BM_CurvatureBundle3D)->Arg(16)->Arg(32);

void BM_EinsteinTensor(benchmark::State& state) {
    MetricField m = perturbed(3, static_cast<int>(state.range(0)));
    CurvatureBundle b = curvature_bundle(m);
    FScalarFunction F = FScalarFunction::power(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(f_einstein_tensor(m, b, F, EinsteinForm::Compact));
}
BENCHMARK(BM_EinsteinTensor)->Arg(16)->Arg(32);

void BM_DivergenceEinstein(benchmark::State& state) {
    MetricField m = perturbed(3, static_cast<int>(state.range(0)));
    CurvatureBundle b = curvature_bundle(m);
    EinsteinPackage pkg = f_einstein_tensor(m, b, FScalarFunction::power(2));
    for (auto _ : state)
        benchmark::DoNotOptimize(divergence_of_ef(pkg, m, b.christoffel));
}
BENCHMARK(BM_DivergenceEinstein)->Arg(16)->Arg(32);

void BM_RicciVariation(benchmark::State& state) {
    ChartSpec c = ChartSpec::unit_torus(2, static_cast<int>(state.range(0)));
    MetricField m = conformal_perturbed_metric(c, 0.1, 2, 7);
    CurvatureBundle b = curvature_bundle(m);
    FieldRng rng(3);
    SymTensor2Field h = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    for (auto _ : state) benchmark::DoNotOptimize(ricci_variation(h, m, b));
}
BENCHMARK(BM_RicciVariation)->Arg(64)->Arg(128);

void BM_SecondVariationOperators(benchmark::State& state) {
    ChartSpec c = ChartSpec::unit_torus(2, static_cast<int>(state.range(0)));
    MetricField m = flat_metric(c);
    CurvatureBundle b = curvature_bundle(m);
    FieldRng rng(3);
    SymTensor2Field h = random_bandlimited_sym2(c, 2, 3, 1.0, rng);
    FScalarFunction F = FScalarFunction::power(2);
    for (auto _ : state) {
        SymTensor2Field t = t0_operator(h, m, b, F, 0.0);
        accumulate(t, 1.0, t1_operator(h, m, b, F));
        benchmark::DoNotOptimize(t);
    }
}
BENCHMARK(BM_SecondVariationOperators)->Arg(64)->Arg(128);

void BM_IntegrateScalar(benchmark::State& state) {
    ChartSpec c = ChartSpec::unit_torus(3, static_cast<int>(state.range(0)));
    MetricField m = conformal_perturbed_metric(c, 0.1, 2, 7);
    FieldRng rng(5);
    ScalarField f = random_bandlimited_scalar(c, 2, 3, 1.0, rng);
    for (auto _ : state) benchmark::DoNotOptimize(integrate_scalar(f, m));
}
BENCHMARK(BM_IntegrateScalar)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
