#include <benchmark/benchmark.h>

#include "halfspace/dimreduce.hpp"
#include "halfspace/hardness.hpp"
#include "halfspace/learner.hpp"

using namespace halfspace;

namespace {

Dataset bench_dataset(std::size_t d, std::size_t n) {
    SimulatorConfig cfg;
    cfg.d = d;
    cfg.gamma = 0.2;
    cfg.eta = 0.2;
    cfg.n = n;
    cfg.seed = 1;
    return generate_dataset(cfg).first;
}

void BM_EmpiricalSubgradient(benchmark::State& state) {
    const std::size_t d = state.range(0);
    const Dataset ds = bench_dataset(d, 2000);
    const Vec w(d, 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(empirical_subgradient(w, ds.examples, 0.2));
    state.SetItemsProcessed(state.iterations() * 2000);
}
BENCHMARK(BM_EmpiricalSubgradient)->Arg(20)->Arg(100)->Arg(500);

void BM_PsgdIteration(benchmark::State& state) {
    const Dataset ds = bench_dataset(20, 2000);
    LearnerParams p = derive_params(0.2, 0.1, 0.2, 0.2);
    p.T = 10;
    for (auto _ : state) benchmark::DoNotOptimize(run_psgd(ds, p));
    state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_PsgdIteration);

void BM_JlApply(benchmark::State& state) {
    const std::size_t d = 500, m = state.range(0);
    JlConfig cfg;
    cfg.m = m;
    cfg.seed = 2;
    const JlMatrix A = sample_jl_matrix(cfg, d);
    const Vec x(d, 1.0 / std::sqrt(double(d)));
    for (auto _ : state) benchmark::DoNotOptimize(jl_apply(A, x));
}
BENCHMARK(BM_JlApply)->Arg(100)->Arg(400);

void BM_KravchukTable(benchmark::State& state) {
    const int n = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(hard::kravchuk_table(n));
}
BENCHMARK(BM_KravchukTable)->Arg(16)->Arg(32)->Arg(64);

void BM_CorrelationPair(benchmark::State& state) {
    const int d = state.range(0);
    const hard::Rational eta(1, 3);
    const auto choice = hard::threshold_for_mass(d, 0.3);
    hard::SignVector v(d, 1), u(d, 1);
    for (int i = 0; i < d / 2; ++i) u[i] = -1;
    const auto dv = hard::make_hard_distribution({v, choice.s_star}, eta);
    const auto du = hard::make_hard_distribution({u, choice.s_star}, eta);
    for (auto _ : state) benchmark::DoNotOptimize(hard::correlation_pair(dv, du));
}
BENCHMARK(BM_CorrelationPair)->Arg(16)->Arg(32)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
