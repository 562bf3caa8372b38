#include <benchmark/benchmark.h>

#include "delab/analytic.hpp"
#include "delab/identities.hpp"
#include "delab/varmin.hpp"
#include "delab/wgrid.hpp"

using namespace delab;

namespace {

const ProblemParams kP = validate_params(3, 1.0, 5.0 / 3.0);

void BM_ApplyL(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto u = random_positive_field(GridSpec::cube(n, 8.0), 42);
    for (auto _ : state) benchmark::DoNotOptimize(apply_L(u, kP));
    state.SetItemsProcessed(state.iterations() * static_cast<long>(u.values.size()));
}
BENCHMARK(BM_ApplyL)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_WeightedEnergy(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto u = random_positive_field(GridSpec::cube(n, 8.0), 42);
    for (auto _ : state) benchmark::DoNotOptimize(weighted_energy(u, kP));
}
BENCHMARK(BM_WeightedEnergy)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveZeroExtension(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto f = random_positive_field(GridSpec::cube(n, 8.0), 42);
    for (auto _ : state) benchmark::DoNotOptimize(solve_zero_extension(f, kP, 1e-8));
}
BENCHMARK(BM_SolveZeroExtension)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SolveDirichlet(benchmark::State& state) {
    const auto n = static_cast<int>(state.range(0));
    const auto g = random_positive_field(GridSpec::cube(n, 1.0), 7);
    const GridField zero(g.spec, 0.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_dirichlet(g, zero, kP, 1e-8));
}
BENCHMARK(BM_SolveDirichlet)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SphereIntegralOfB(benchmark::State& state) {
    const auto U = explicit_U(kP);
    const auto q = SphereQuadrature::for_degree(1.0, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sphere_integral(
            [&](const std::array<double, 3>& x) {
                return boundary_density_B(U, std::span<const double>(x.data(), 3), 1.0, kP);
            },
            q));
    }
}
BENCHMARK(BM_SphereIntegralOfB)->Arg(8)->Arg(32);

void BM_PohozaevCheck(benchmark::State& state) {
    const auto U = explicit_U(kP);
    const auto K = constant_field(kP, 1.0);
    const PohozaevQuadrature q{static_cast<int>(state.range(0)), 8};
    for (auto _ : state) benchmark::DoNotOptimize(pohozaev_check(U, K, 1.0, kP, q));
}
BENCHMARK(BM_PohozaevCheck)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
