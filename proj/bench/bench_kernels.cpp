// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "gce/classifier.hpp"
#include "gce/kernels.hpp"
#include "gce/rng.hpp"

namespace {

using namespace gce;

constexpr std::size_t kDims = 8;

Schema bench_schema() {
  std::vector<FeatureSchema> f;
  for (std::size_t i = 0; i < kDims; ++i) {
    f.push_back(FeatureSchema::numeric("x" + std::to_string(i), 0.0, 10.0));
  }
  return Schema(std::move(f));
}

std::vector<Instance> instances(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Instance> out(n);
  for (auto& x : out) {
    for (std::size_t d = 0; d < kDims; ++d) x.values.push_back(rng.uniform01() * 10.0);
  }
  return out;
}

std::vector<Action> actions(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Action> out(n);
  for (auto& a : out) {
    for (std::size_t d = 0; d < kDims; ++d) {
      if (rng.coin()) a.set_delta(d, static_cast<double>(rng.uniform_int(1, 6)));
    }
  }
  return out;
}

const LogisticModel& bench_model() {
  static const LogisticModel m(std::vector<double>(kDims, 1.0), -45.0);
  return m;
}

template <Execution E>
void BM_EvaluateActions(benchmark::State& state) {
  const Schema s = bench_schema();
  const auto xs = instances(static_cast<std::size_t>(state.range(0)), 1);
  const auto as = actions(40, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_actions(as, xs, bench_model(), s, E));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 40);
}

template <Execution E>
void BM_AssignNearest(benchmark::State& state) {
  const Schema s = bench_schema();
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto pts = encode_all(instances(n, 3), s);
  const auto centers = encode_all(instances(100, 4), s);
  std::vector<std::size_t> assignment(n);
  std::vector<double> dist(n);
  for (auto _ : state) {
    assign_nearest_l1(pts, centers, assignment, dist, E);
    benchmark::DoNotOptimize(assignment.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 100);
}

template <Execution E>
void BM_PairwiseL1(benchmark::State& state) {
  const Schema s = bench_schema();
  const auto rows = encode_all(instances(static_cast<std::size_t>(state.range(0)), 5), s);
  for (auto _ : state) benchmark::DoNotOptimize(pairwise_l1(rows, E));
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

}  // namespace

BENCHMARK(BM_EvaluateActions<Execution::kSerial>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_EvaluateActions<Execution::kParallel>)->Arg(1000)->Arg(10000);
BENCHMARK(BM_AssignNearest<Execution::kSerial>)->Arg(10000)->Arg(100000);
BENCHMARK(BM_AssignNearest<Execution::kParallel>)->Arg(10000)->Arg(100000);
BENCHMARK(BM_PairwiseL1<Execution::kSerial>)->Arg(100)->Arg(500);
BENCHMARK(BM_PairwiseL1<Execution::kParallel>)->Arg(100)->Arg(500);

BENCHMARK_MAIN();
