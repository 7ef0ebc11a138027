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

#include <vector>

#include "uo/distribution.hpp"
#include "uo/quad.hpp"
#include "uo/trunc_moments.hpp"

namespace {

uo::Distribution family(int index) {
  switch (index) {
    case 0:
      return uo::Distribution::normal(0.0, 1.0);
    case 1:
      return uo::Distribution::gamma(0.5);
    case 2:
      return uo::Distribution::cauchy();
    default:
      return uo::Distribution::lognormal();
  }
}

const char* family_name(int index) {
  static const char* names[] = {"normal", "gamma0.5", "cauchy", "lognormal"};
  return names[index];
}

void BM_Integrate(benchmark::State& state) {
  const auto d = uo::Distribution::normal(0.0, 1.0);
  const uo::RealFn f = [&](double x) { return x * x * d.pdf(x); };
  for (auto _ : state) benchmark::DoNotOptimize(uo::integrate(f, -6.0, 6.0, 1e-12).value);
}
BENCHMARK(BM_Integrate);

void BM_FormulaRoute(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto d = family(k);
  const double a = d.quantile(0.2);
  const double b = d.quantile(0.9);
  state.SetLabel(family_name(k));
  for (auto _ : state) benchmark::DoNotOptimize(uo::truncated_variance_formula(d, a, b).variance);
}
BENCHMARK(BM_FormulaRoute)->DenseRange(0, 3);

void BM_OracleRoute(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const auto d = family(k);
  const uo::Interval iv = uo::Interval::make(d.quantile(0.2), d.quantile(0.9));
  state.SetLabel(family_name(k));
  for (auto _ : state) benchmark::DoNotOptimize(uo::truncated_moments_oracle(d, iv).variance);
}
BENCHMARK(BM_OracleRoute)->DenseRange(0, 3);

// One cumulative pass for n upper ends against n separate formula calls.
void BM_VarianceProfile(benchmark::State& state) {
  const auto d = uo::Distribution::logistic();
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> bs(n);
  for (std::size_t i = 0; i < n; ++i) bs[i] = -3.0 + 9.0 * static_cast<double>(i + 1) / static_cast<double>(n);
  for (auto _ : state) benchmark::DoNotOptimize(uo::truncated_variance_profile(d, -4.0, bs).size());
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VarianceProfile)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Sweep(benchmark::State& state) {
  const auto d = uo::Distribution::normal(0.0, 1.0);
  const auto n = static_cast<std::size_t>(state.range(0));
  const uo::Interval w = uo::Interval::make(-4.0, 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(uo::monotonicity_sweep(d, w, n, n, 1e-7).witnesses.size());
}
BENCHMARK(BM_Sweep)->Arg(11)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

}  // namespace
