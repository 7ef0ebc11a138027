// Copyright 2026 The uo Authors
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


#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "uo/diff_uncertainty.hpp"
#include "uo/distribution.hpp"
#include "uo/logconcavity.hpp"
#include "uo/orders.hpp"

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> xs(n);
  for (std::size_t i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return xs;
}

void BM_UpperEndpointCondition(benchmark::State& state) {
  const auto d = uo::Distribution::cauchy();
  const auto bs = linspace(-49.0, 50.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(uo::upper_endpoint_condition(d, -50.0, bs).verdict);
}
BENCHMARK(BM_UpperEndpointCondition)->Arg(51)->Arg(201)->Unit(benchmark::kMillisecond);

void BM_DiffDensity(benchmark::State& state) {
  const auto d = uo::Distribution::normal(0.0, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(uo::diff_density(d, 2.0, n).normalization);
}
BENCHMARK(BM_DiffDensity)->Arg(65)->Arg(257)->Unit(benchmark::kMillisecond);

void BM_Tp2Check(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto xs = linspace(0.0, 1.0, n);
  uo::Kernel2D k{xs, xs, std::vector<double>(n * n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k.values[i * n + j] = std::exp(xs[i] * xs[j]);
  for (auto _ : state) benchmark::DoNotOptimize(uo::tp2_check(k, 1e-12).verdict);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Tp2Check)->RangeMultiplier(2)->Range(16, 256)->Complexity();

}  // namespace
