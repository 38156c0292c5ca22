// Serial reference loops against the OpenMP kernels.

#include <benchmark/benchmark.h>

#include <random>
#include <utility>
#include <vector>

#include "inellipse/oracle.hpp"
#include "inellipse/two_point_solver.hpp"

namespace {

using inellipse::Execution;
using inellipse::Point;

constexpr Point kP1{0.25, 0.125};
constexpr Point kP2{0.5, 1.0 / 6.0};

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void residual_grid(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(inellipse::residual_grid_two_points(kP1, kP2, n, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n * n));
}
BENCHMARK(residual_grid)->ArgNames({"parallel", "grid"})->ArgsProduct({{0, 1}, {256, 1024}});

void brute_force(benchmark::State& state) {
  inellipse::OracleOptions opts;
  opts.execution = mode(state);
  opts.grid_n = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(inellipse::brute_force_two_points(kP1, kP2, opts));
  }
}
BENCHMARK(brute_force)->ArgNames({"parallel", "grid"})->ArgsProduct({{0, 1}, {256}});

void batch_solve(benchmark::State& state) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.01, 0.99);
  std::vector<std::pair<Point, Point>> pairs;
  while (pairs.size() < static_cast<std::size_t>(state.range(1))) {
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    if (a.x + a.y < 0.99 && b.x + b.y < 0.99) pairs.emplace_back(a, b);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(inellipse::solve_two_points_batch(pairs, {}, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}
BENCHMARK(batch_solve)->ArgNames({"parallel", "pairs"})->ArgsProduct({{0, 1}, {10000}});

}  // namespace

BENCHMARK_MAIN();
