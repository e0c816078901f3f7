// Copyright 2026 The teamform Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.
#include <benchmark/benchmark.h>

#include <numeric>
#include <random>

#include "teamform/affinity.hpp"
#include "teamform/exact.hpp"
#include "teamform/grp.hpp"
#include "teamform/splt.hpp"

namespace {

using teamform::Exec;

Exec exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Exec::serial : Exec::parallel;
}

std::vector<std::vector<double>> points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> p(n, std::vector<double>(2));
  for (auto& row : p)
    for (auto& x : row) x = u(rng);
  return p;
}

struct Pool {
  std::vector<teamform::Worker> workers;
  teamform::Task task;
  teamform::DistanceMatrix d;
};

Pool pool(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Pool p{{}, {}, teamform::euclidean_distance(points(n, seed), Exec::serial)};
  double skill = 0.0, wage = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p.workers.push_back({{u(rng)}, 0.1 + 0.9 * u(rng)});
    skill += p.workers.back().skills[0];
    wage += p.workers.back().wage;
  }
  p.task = {{0.4 * skill}, 0.7 * wage, 3};
  return p;
}

teamform::Group iota(std::size_t n) {
  teamform::Group g(n);
  std::iota(g.begin(), g.end(), 0);
  return g;
}

void BM_Euclidean(benchmark::State& state) {
  const auto p = points(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(teamform::euclidean_distance(p, exec_of(state)));
}
BENCHMARK(BM_Euclidean)->ArgNames({"n", "parallel"})->ArgsProduct({{500, 2000}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_MetricViolations(benchmark::State& state) {
  const auto d = teamform::euclidean_distance(points(static_cast<std::size_t>(state.range(0)), 2));
  for (auto _ : state)
    benchmark::DoNotOptimize(teamform::metric_violations(d, 1e-9, exec_of(state)));
}
BENCHMARK(BM_MetricViolations)->ArgNames({"n", "parallel"})->ArgsProduct({{100, 300}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_GrpDia(benchmark::State& state) {
  const auto p = pool(static_cast<std::size_t>(state.range(0)), 3);
  teamform::GrpOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(teamform::apprx_grp(p.workers, p.task, p.d, opt));
}
BENCHMARK(BM_GrpDia)->ArgNames({"n", "parallel"})->ArgsProduct({{40, 120}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_MinStar(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto d = teamform::euclidean_distance(points(n, 4));
  teamform::MinStarOptions opt;
  opt.exec = exec_of(state);
  const auto g = iota(n);
  for (auto _ : state) benchmark::DoNotOptimize(teamform::min_star_partition(g, 4, d, opt));
}
BENCHMARK(BM_MinStar)->ArgNames({"n", "parallel"})->ArgsProduct({{9, 11}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Exact(benchmark::State& state) {
  const auto p = pool(static_cast<std::size_t>(state.range(0)), 5);
  teamform::ExactOptions opt;
  opt.exec = exec_of(state);
  for (auto _ : state)
    benchmark::DoNotOptimize(teamform::exact_overall(p.workers, p.task, p.d, {}, opt));
}
BENCHMARK(BM_Exact)->ArgNames({"n", "parallel"})->ArgsProduct({{8, 10}, {0, 1}})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
