#include <benchmark/benchmark.h>

#include "snum/hilbert.hpp"
#include "snum/john.hpp"
#include "snum/lorentz.hpp"
#include "snum/snumbers.hpp"
#include "snum/zigzag.hpp"

#include <memory>
#include <random>

using namespace snum;

static void BM_HilbertOrder(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(hilbert_order(2, k));
    state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << (2 * k)));
}
BENCHMARK(BM_HilbertOrder)->DenseRange(4, 10, 2);

static void BM_PrefixNesting(benchmark::State& state)
{
    const auto o = hilbert_order(2, static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(check_prefix_nesting(o));
}
BENCHMARK(BM_PrefixNesting)->DenseRange(4, 10, 2);

static void BM_LorentzNorm(benchmark::State& state)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(state.range(0)));
    for (auto& x : v) x = unit(rng);
    const auto f = StepFunction<double>::uniform(v);
    const auto X = LorentzParams::make(2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(lorentz_norm(f, X));
}
BENCHMARK(BM_LorentzNorm)->RangeMultiplier(8)->Range(64, 32768);

static void BM_GridGradientNorm(benchmark::State& state)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const auto u = GridFunction::sample(2, static_cast<int>(state.range(0)), [&](std::span<const double>) { return unit(rng); }, true);
    const auto X = LorentzParams::make(2, 1);
    for (auto _ : state) benchmark::DoNotOptimize(grid_gradient_lorentz_norm(u, X));
}
BENCHMARK(BM_GridGradientNorm)->RangeMultiplier(2)->Range(16, 128);

static void BM_Zigzag(benchmark::State& state)
{
    std::mt19937_64 rng(3);
    const auto E = random_mean_zero_subspace(static_cast<std::size_t>(state.range(0)), 64, rng);
    const Eigen::MatrixXd G = E.volterra_interior_nodes();
    for (auto _ : state) benchmark::DoNotOptimize(zigzag_find(G));
}
BENCHMARK(BM_Zigzag)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

static void BM_JohnVerify(benchmark::State& state)
{
    const int k = static_cast<int>(state.range(0));
    auto o = std::make_shared<const CubeOrdering>(hilbert_order(2, k));
    const CubeUnion omega(o, 3, o->size() - 5);
    const auto cert = john_bound_constructive(omega);
    for (auto _ : state) benchmark::DoNotOptimize(verify_john_certificate(omega, cert, 10000, 1));
}
BENCHMARK(BM_JohnVerify)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
