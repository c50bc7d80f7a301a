#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "bcdiag/blaschke.hpp"
#include "bcdiag/carleson.hpp"
#include "bcdiag/clark.hpp"
#include "bcdiag/diagnostics.hpp"

using namespace bcdiag;

namespace {

BlaschkeProduct make_product(int degree, unsigned seed = 5) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<DiskPoint> zeros;
    for (int i = 0; i < degree; ++i) {
        zeros.emplace_back(std::polar(0.9 * std::sqrt(unif(rng)), kTwoPi * unif(rng)));
    }
    return BlaschkeProduct(std::move(zeros));
}

void BM_Evaluate(benchmark::State& state) {
    const BlaschkeProduct F = make_product(static_cast<int>(state.range(0)));
    const Complex z(0.31, -0.42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.evaluate(z));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Evaluate)->RangeMultiplier(4)->Range(2, 128)->Complexity();

void BM_HyperbolicDerivative(benchmark::State& state) {
    const BlaschkeProduct F = make_product(static_cast<int>(state.range(0)));
    const Complex z(0.31, -0.42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(F.hyperbolic_derivative(z));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_HyperbolicDerivative)->RangeMultiplier(4)->Range(2, 128)->Complexity();

void BM_CriticalPoints(benchmark::State& state) {
    const BlaschkeProduct F = make_product(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(critical_points(F));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CriticalPoints)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_ClarkMeasure(benchmark::State& state) {
    const BlaschkeProduct F = make_product(static_cast<int>(state.range(0)));
    const BoundaryPoint alpha(0.7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(clark_measure(F, alpha));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ClarkMeasure)->RangeMultiplier(2)->Range(4, 32)->Complexity();

void BM_CarlesonConstant(benchmark::State& state) {
    const DiskMeasure sigma = zero_measure(make_product(static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(carleson_constant(sigma, 14));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CarlesonConstant)->RangeMultiplier(4)->Range(8, 128)->Complexity();

void BM_ImageDiameter(benchmark::State& state) {
    const BlaschkeProduct F = make_product(16);
    const DiskPoint z(0.4, 0.2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(image_diameter(F, z, 1.0, static_cast<int>(state.range(0))));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ImageDiameter)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void BM_PreimageCount(benchmark::State& state) {
    const BlaschkeProduct F = make_product(static_cast<int>(state.range(0)));
    const HyperbolicBall ball{DiskPoint(0.2, 0.1), 1.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(preimage_count(F, ball, Complex(0.05, 0.02)));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PreimageCount)->RangeMultiplier(2)->Range(2, 16)->Complexity();

}  // namespace

BENCHMARK_MAIN();
