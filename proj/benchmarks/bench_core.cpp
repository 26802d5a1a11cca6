#include <benchmark/benchmark.h>

#include <vector>

#include "knnlab/analytics.hpp"
#include "knnlab/neighbor_graph.hpp"
#include "knnlab/point_process.hpp"
#include "knnlab/rng.hpp"

using namespace knnlab;

namespace {

std::vector<Point> random_points(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Point> pts(n);
    for (Point& p : pts) p = {rng.next_double(), rng.next_double()};
    return pts;
}

void BM_knn_grid(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 1);
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(knn_out_lists(pts, k));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_knn_bruteforce(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 1);
    const int k = static_cast<int>(state.range(1));
    for (auto _ : state) {
        benchmark::DoNotOptimize(knn_out_lists_bruteforce(pts, k));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_build_graph_and_connectivity(benchmark::State& state) {
    const auto pts = random_points(static_cast<std::size_t>(state.range(0)), 2);
    for (auto _ : state) {
        const NeighborGraph g = build_graph(pts, 6, Rule::union_rule);
        benchmark::DoNotOptimize(is_connected(g));
    }
}

void BM_poisson_sample(benchmark::State& state) {
    const double intensity = static_cast<double>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_poisson(intensity, ++seed));
    }
}

void BM_filling_probability(benchmark::State& state) {
    FillingParams p;
    p.N = 1e5;
    p.r = 1e-3;
    p.a = 3.6;
    p.L = 11;
    p.k = 2;
    for (auto _ : state) {
        benchmark::DoNotOptimize(p_k_filling_log(p));
    }
}

}  // namespace

BENCHMARK(BM_knn_grid)->Args({1000, 5})->Args({10000, 5})->Args({100000, 5})->Args({100000, 60});
BENCHMARK(BM_knn_bruteforce)->Args({1000, 5})->Args({4000, 5});
BENCHMARK(BM_build_graph_and_connectivity)->Arg(10000)->Arg(100000);
BENCHMARK(BM_poisson_sample)->Arg(10)->Arg(50)->Arg(1000)->Arg(100000);
BENCHMARK(BM_filling_probability);

BENCHMARK_MAIN();
