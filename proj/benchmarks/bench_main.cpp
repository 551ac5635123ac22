#include <benchmark/benchmark.h>

#include "ccn/anchor_tests.hpp"
#include "ccn/experiment.hpp"
#include "ccn/logistic_mle.hpp"
#include "ccn/normal.hpp"
#include "ccn/prior_test.hpp"
#include "ccn/synth.hpp"

namespace {

void BM_Fit(benchmark::State& state) {
    const ccn::GaussianSetup setup;
    const auto data = ccn::generate(setup, state.range(0), 1);
    for (auto _ : state) benchmark::DoNotOptimize(ccn::fit(data));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Fit)->Arg(500)->Arg(2000)->Arg(5000);

void BM_ZTest(benchmark::State& state) {
    const ccn::GaussianSetup setup;
    const auto model = ccn::fit(ccn::generate(setup, 2000, 2));
    const auto anchors = ccn::sample_anchors(setup, state.range(0), 0.0, 4.0, 3);
    for (auto _ : state) benchmark::DoNotOptimize(ccn::z_test(model, anchors, 0.05));
}
BENCHMARK(BM_ZTest)->Arg(1)->Arg(32);

void BM_NormalQuantile(benchmark::State& state) {
    double p = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ccn::normal_quantile(p));
        p = p > 0.7 ? 1e-6 : p * 1.37;
    }
}
BENCHMARK(BM_NormalQuantile);

void BM_PriorExactTest(benchmark::State& state) {
    const std::int64_t n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(ccn::prior_exact_test(n, n / 2 + n / 100, 0.5));
}
BENCHMARK(BM_PriorExactTest)->Arg(1000)->Arg(10'000'000);

void BM_Cell(benchmark::State& state) {
    ccn::ExperimentConfig c;
    c.n_grid = {2000};
    c.noise_gaps = {{0.0, 0.1}};
    c.k_grid = {8};
    c.delta_grid = {0.0};
    c.runs = 50;
    const auto cell = ccn::enumerate_cells(c).front();
    for (auto _ : state) benchmark::DoNotOptimize(ccn::run_cell(c, cell));
}
BENCHMARK(BM_Cell)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
