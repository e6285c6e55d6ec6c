#include <benchmark/benchmark.h>

#include "igff/exact/checks.hpp"
#include "igff/experiments/runner.hpp"
#include "igff/field/sampler.hpp"
#include "igff/field/scale_field.hpp"
#include "igff/lattice/green.hpp"
#include "igff/theory/kkt.hpp"
#include "igff/theory/profile.hpp"

using namespace igff;

namespace {

const theory::StepVariance kDecreasing = theory::StepVariance::from_sigma_sq({2.0, 0.5}, {0.5, 1.0});

void BM_Factorise(benchmark::State& state) {
    const auto box = lattice::LatticeBox::square(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(lattice::GreenSolver(box));
}
BENCHMARK(BM_Factorise)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_GreenColumn(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const lattice::GreenSolver solver(lattice::LatticeBox::square(n));
    for (auto _ : state) benchmark::DoNotOptimize(solver.column({n / 2, n / 3}));
}
BENCHMARK(BM_GreenColumn)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_SampleDgff(benchmark::State& state) {
    const field::DgffSampler sampler(field::GridSize(static_cast<int>(state.range(0))));
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(sampler.sample(seed++));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(sampler.grid().sites()));
}
BENCHMARK(BM_SampleDgff)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_BuildPsi(benchmark::State& state) {
    const field::GridSize grid(static_cast<int>(state.range(0)));
    const field::PsiBuilder builder(grid, kDecreasing);
    const field::FieldSample f = field::sample_dgff(grid, 1);
    for (auto _ : state) benchmark::DoNotOptimize(builder.psi_values(f));
}
BENCHMARK(BM_BuildPsi)->Arg(64)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Replicates(benchmark::State& state) {
    experiments::ExperimentConfig c;
    c.n_list = {static_cast<int>(state.range(0))};
    c.sigma_sq = kDecreasing.sigma_sq();
    c.lambda = kDecreasing.lambda();
    c.gammas = {0.25, 0.5, 0.75};
    c.replicates = 8;
    c.base_seed = 1;
    experiments::RunOptions o;
    o.threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(experiments::run_replicates(c, o));
}
BENCHMARK(BM_Replicates)->Args({128, 1})->Args({128, 4})->Args({256, 1})->Unit(benchmark::kMillisecond);

void BM_VarianceBounds(benchmark::State& state) {
    const field::GridSize grid(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(exact::check_variance_bounds(grid, kDecreasing, 0.25));
}
BENCHMARK(BM_VarianceBounds)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_TheoryProfile(benchmark::State& state) {
    const theory::StepVariance p = theory::StepVariance::from_sigma_sq({0.7, 2.0, 1.1, 0.4}, {0.2, 0.5, 0.8, 1.0});
    for (auto _ : state) {
        const theory::TheoryProfile t(p);
        benchmark::DoNotOptimize(t.entropy(0.5 * t.gamma_star()));
        benchmark::DoNotOptimize(theory::kkt_highpoints_solution(0.7 * t.gamma_star(), t));
    }
}
BENCHMARK(BM_TheoryProfile);

}  // namespace
BENCHMARK_MAIN();
