// Microbenchmarks for the hot paths: loss evaluation, substitution,
// and a full aggregation round.

#include <benchmark/benchmark.h>

#include <vector>

#include "mixagg/aa_engine.hpp"
#include "mixagg/aggregation.hpp"
#include "mixagg/losses.hpp"
#include "mixagg/rng.hpp"

using namespace mixagg;

namespace {

GridDistribution1D random_step_cdf(Rng& rng, int atoms) {
    std::vector<double> vals(static_cast<std::size_t>(atoms));
    for (auto& v : vals) v = rng.uniform();
    return GridDistribution1D::empirical(std::move(vals), rng.simplex_point(atoms), 0.0, 1.0);
}

ParticleDistributionND random_particles(Rng& rng, int dim, int points) {
    std::vector<double> pts;
    for (int i = 0; i < points; ++i) {
        const auto dir = rng.sphere_direction(dim);
        const double r = rng.uniform();
        for (double d : dir) pts.push_back(r * d);
    }
    return ParticleDistributionND(std::move(pts), rng.simplex_point(points), dim, 1.0);
}

void bench_crps(benchmark::State& state) {
    Rng rng(1);
    const auto g = random_step_cdf(rng, static_cast<int>(state.range(0)));
    const auto o = GridDistribution1D::dirac(0.5, 0.0, 1.0);
    const BoundedInterval unit(0.0, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(crps(g, o, unit));
}
BENCHMARK(bench_crps)->Arg(8)->Arg(64)->Arg(512);

void bench_energy_distance(benchmark::State& state) {
    Rng rng(2);
    const auto g = random_particles(rng, 3, static_cast<int>(state.range(0)));
    const auto o = random_particles(rng, 3, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(energy_distance(g, o));
}
BENCHMARK(bench_energy_distance)->Arg(8)->Arg(32)->Arg(128);

void bench_crps_substitution(benchmark::State& state) {
    Rng rng(3);
    const int n = static_cast<int>(state.range(0));
    std::vector<GridDistribution1D> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_step_cdf(rng, 16));
    const WeightVector w(rng.simplex_point(n));
    for (auto _ : state) benchmark::DoNotOptimize(aggregate_crps_mixable(gs, w));
}
BENCHMARK(bench_crps_substitution)->Arg(2)->Arg(10)->Arg(50);

void bench_aa_round(benchmark::State& state) {
    Rng rng(4);
    const int n = static_cast<int>(state.range(0));
    const BoundedInterval unit(0.0, 1.0);
    std::vector<GridDistribution1D> gs;
    for (int i = 0; i < n; ++i) gs.push_back(random_step_cdf(rng, 16));
    const auto outcome = GridDistribution1D::dirac(0.3, 0.0, 1.0);
    auto w = WeightVector::uniform(static_cast<std::size_t>(n));
    std::vector<double> losses(static_cast<std::size_t>(n));
    for (auto _ : state) {
        const auto agg = aggregate_crps_mixable(gs, w);
        benchmark::DoNotOptimize(crps(agg, outcome, unit));
        for (int i = 0; i < n; ++i)
            losses[static_cast<std::size_t>(i)] =
                crps(gs[static_cast<std::size_t>(i)], outcome, unit);
        w = aa_update_weights(w, losses, 2.0);
    }
}
BENCHMARK(bench_aa_round)->Arg(2)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
