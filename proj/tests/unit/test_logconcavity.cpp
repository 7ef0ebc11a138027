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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "uo/distribution.hpp"
#include "uo/distribution_io.hpp"
#include "uo/errors.hpp"
#include "uo/logconcavity.hpp"
#include "uo/quad.hpp"
#include "uo/trunc_moments.hpp"

#ifndef UO_DATA_DIR
#error "UO_DATA_DIR must point at the data/ directory"
#endif

namespace uo {
namespace {

std::vector<double> linspace(double lo, double hi, int n, bool include_lo = true) {
  std::vector<double> v;
  for (int i = include_lo ? 0 : 1; i <= n; ++i) v.push_back(lo + (hi - lo) * i / n);
  return v;
}

GridFunction sampled(const std::vector<double>& xs, double (*f)(double)) {
  std::vector<double> ys;
  for (double x : xs) ys.push_back(f(x));
  return GridFunction(xs, ys);
}

TEST(IsLogConcave, GaussianKernel) {
  const auto v = is_log_concave(sampled(linspace(-3, 3, 200), [](double x) { return std::exp(-x * x); }), 1e-9);
  EXPECT_EQ(v.verdict, ConcavityStatus::kLogConcave);
  EXPECT_FALSE(v.witness);
  EXPECT_EQ(v.tolerance, 1e-9);
}

TEST(IsLogConcave, CubicOverSix) {
  const auto v = is_log_concave(sampled(linspace(0, 1, 100, false), [](double b) { return b * b * b / 6; }));
  EXPECT_EQ(v.verdict, ConcavityStatus::kLogConcave);
}

TEST(IsLogConcave, CauchyKernelFailsPastInflection) {
  const auto v = is_log_concave(sampled(linspace(0.1, 10, 200), [](double x) { return 1 / (1 + x * x); }));
  ASSERT_EQ(v.verdict, ConcavityStatus::kNotLogConcave);
  ASSERT_TRUE(v.witness);
  // (log h)'' = -2 (1 - x^2) / (1 + x^2)^2 is positive for x > 1.
  EXPECT_GT(v.witness->x_0, 1.0 / std::sqrt(3.0));
  EXPECT_GT(v.witness->x_minus, 0.95);
  EXPECT_GT(v.witness->second_diff, v.tolerance);
  EXPECT_LT(v.witness->x_minus, v.witness->x_0);
  EXPECT_LT(v.witness->x_0, v.witness->x_plus);
}

TEST(IsLogConcave, ExcludesNonPositivePointsAndReportsInconclusive) {
  const auto few = is_log_concave(GridFunction({0, 1, 2, 3}, {0, 1, 2, 0}));
  EXPECT_EQ(few.verdict, ConcavityStatus::kInconclusive);
  EXPECT_EQ(few.excluded_points, 2u);
  const auto ok = is_log_concave(GridFunction({0, 1, 2, 3, 4}, {0, 1, 2, 3, -1}));
  EXPECT_EQ(ok.verdict, ConcavityStatus::kLogConcave);
  EXPECT_EQ(ok.excluded_points, 2u);
}

TEST(IsLogConcave, NonUniformGridAndAffineInvariance) {
  std::vector<double> xs;
  for (int i = 0; i <= 60; ++i) xs.push_back(-3 + 6 * std::pow(i / 60.0, 1.7));
  for (auto [alpha, beta] : {std::pair{1.0, 0.0}, {2.5, -4.0}, {0.1, 7.0}, {-1.0, 0.0}}) {
    std::vector<double> t;
    for (double x : xs) t.push_back(alpha * x + beta);
    if (alpha < 0) std::reverse(t.begin(), t.end());
    std::vector<double> y1;
    std::vector<double> y2;
    for (double v : t) {
      const double x = (v - beta) / alpha;
      y1.push_back(std::exp(-x * x));
      y2.push_back(1 / (1 + x * x));
    }
    EXPECT_EQ(is_log_concave(GridFunction(t, y1), 1e-9).verdict, ConcavityStatus::kLogConcave);
    EXPECT_EQ(is_log_concave(GridFunction(t, y2), 1e-9).verdict, ConcavityStatus::kNotLogConcave);
  }
}

TEST(EndpointIntegrals, UniformClosedForms) {
  const auto u = Distribution::uniform(0, 1);
  const auto bs = linspace(0, 1, 10, false);
  const GridFunction g = upper_endpoint_integral(u, 0, bs);
  for (std::size_t i = 0; i < bs.size(); ++i) EXPECT_NEAR(g.ys()[i], std::pow(bs[i], 3) / 6, 1e-14);
  const auto as = linspace(0, 0.9, 9);
  const GridFunction k = lower_endpoint_integral(u, as, 1);
  for (std::size_t i = 0; i < as.size(); ++i) EXPECT_NEAR(k.ys()[i], std::pow(1 - as[i], 3) / 6, 1e-14);
}

TEST(EndpointIntegrals, LowerMirrorsUpperUnderReflection) {
  const auto d = Distribution::logistic(0.5, 1.5);
  const std::vector<double> as = {-2, -1, 0, 1.5, 3};
  const GridFunction k = lower_endpoint_integral(d, as, 4);
  // Reflecting X -> -X maps (a, 4) to (-4, -a); the reflected density is
  // integrated directly here.
  for (double a : as) {
    const double direct =
        integrate([&](double x) { return (x - a) * (d.cdf(4) - d.cdf(x)); }, a, 4, 1e-13).value;
    EXPECT_NEAR(k(a), direct, 1e-10 * std::max(1.0, direct));
  }
}

TEST(UpperEndpointCondition, Examples) {
  EXPECT_EQ(upper_endpoint_condition(Distribution::uniform(0, 1), 0, linspace(0, 1, 100, false)).verdict,
            ConcavityStatus::kLogConcave);
  EXPECT_EQ(upper_endpoint_condition(Distribution::normal(0, 1), -3, linspace(-3, 3, 200, false)).verdict,
            ConcavityStatus::kLogConcave);
  const auto c = upper_endpoint_condition(Distribution::cauchy(), -50, linspace(-50, 50, 200, false));
  ASSERT_EQ(c.verdict, ConcavityStatus::kNotLogConcave);
  ASSERT_TRUE(c.witness);
  EXPECT_GT(c.witness->second_diff, c.tolerance);
}

TEST(LowerEndpointCondition, Examples) {
  EXPECT_EQ(lower_endpoint_condition(Distribution::uniform(0, 1), linspace(0, 0.99, 99), 1).verdict,
            ConcavityStatus::kLogConcave);
  EXPECT_EQ(lower_endpoint_condition(Distribution::normal(0, 1), linspace(-3, 2.97, 199), 3).verdict,
            ConcavityStatus::kLogConcave);
  const Distribution tab = load_density_csv(std::string(UO_DATA_DIR) + "/cauchy_pm50.csv");
  const auto c = lower_endpoint_condition(tab, linspace(-50, 49.5, 199), 50);
  ASSERT_EQ(c.verdict, ConcavityStatus::kNotLogConcave);
  EXPECT_TRUE(c.witness);
}

TEST(LowerEndpointCondition, TracksLowerEndVariance) {
  // Heavy tail on (0, inf): the lower-end condition fails, and so does the
  // variance when a grows with b fixed.
  const auto c = Distribution::cauchy();
  EXPECT_EQ(lower_endpoint_condition(c, linspace(0.01, 40, 100), 50).verdict, ConcavityStatus::kNotLogConcave);
  EXPECT_EQ(upper_endpoint_condition(c, 0.01, linspace(0.01, 50, 100, false)).verdict, ConcavityStatus::kLogConcave);
}

TEST(VarianceSlopeSign, Examples) {
  const auto bs = linspace(0, 1, 20, false);
  for (const auto& s : variance_slope_values(Distribution::uniform(0, 1), 0, bs)) {
    EXPECT_NEAR(s.d, std::pow(s.b, 4) / 12, 1e-14);
  }
  EXPECT_EQ(variance_slope_sign_check(Distribution::normal(0, 1), -4, linspace(-4, 4, 100, false)).verdict,
            Verdict::kHolds);
  const auto spikes = Distribution::mixture({{1.0 / 3, Distribution::normal(0, 0.01)},
                                             {1.0 / 3, Distribution::normal(10, 0.01)},
                                             {1.0 / 3, Distribution::normal(10.1, 0.01)}});
  std::vector<double> grid = linspace(-1, 12, 130, false);
  grid.push_back(10.05);
  std::sort(grid.begin(), grid.end());
  const MonotonicityReport r = variance_slope_sign_check(spikes, -1, grid);
  ASSERT_EQ(r.verdict, Verdict::kFails);
  bool near_spike = false;
  for (const auto& w : r.witnesses) near_spike = near_spike || std::abs(w.b2 - 10.1) < 0.06;
  EXPECT_TRUE(near_spike);
}

// The numerator D(b) and the variance differences have the same sign
// pattern on the grid wherever both are clear of the tolerance.
void expect_sign_equivalence(const Distribution& d, double a, const std::vector<double>& bs) {
  const double tol = 1e-6;
  const auto ds = variance_slope_values(d, a, bs);
  const auto prof = truncated_variance_profile(d, a, bs);
  int compared = 0;
  for (std::size_t i = 0; i + 1 < bs.size(); ++i) {
    if (!prof[i] || !prof[i + 1]) continue;
    const double dv = prof[i + 1]->variance - prof[i]->variance;
    const bool d_pos = ds[i].d > tol && ds[i + 1].d > tol;
    const bool d_neg = ds[i].d < -tol && ds[i + 1].d < -tol;
    if (d_pos && std::abs(dv) > tol) {
      EXPECT_GT(dv, 0) << d.to_string() << " b=" << bs[i];
      ++compared;
    }
    if (d_neg && std::abs(dv) > tol) {
      EXPECT_LT(dv, 0) << d.to_string() << " b=" << bs[i];
      ++compared;
    }
    if (dv < -tol) {
      EXPECT_TRUE(ds[i].d < tol || ds[i + 1].d < tol) << d.to_string() << " b=" << bs[i];
    }
  }
  EXPECT_GT(compared, 0);
}

TEST(VarianceSlopeSign, MatchesVarianceDifferences) {
  expect_sign_equivalence(Distribution::normal(0, 1), -4, linspace(-4, 4, 80, false));
  expect_sign_equivalence(Distribution::cauchy(), -50, linspace(-50, 50, 200, false));
  expect_sign_equivalence(Distribution::mixture({{1.0 / 3, Distribution::normal(0, 0.1)},
                                                 {1.0 / 3, Distribution::normal(10, 0.1)},
                                                 {1.0 / 3, Distribution::normal(10.5, 0.1)}}),
                          -1, linspace(-1, 12, 260, false));
}

// Antiderivatives of log-concave functions stay log-concave.
TEST(LogConcavityProperties, IntegratedDensityIsLogConcave) {
  for (const auto& d : {Distribution::normal(0, 1), Distribution::logistic(), Distribution::double_exponential(),
                        Distribution::gamma(2), Distribution::weibull(2), Distribution::uniform(0, 1)}) {
    const Interval e = d.effective_support(1e-8);
    const auto grid = linspace(e.lo, e.hi, 300, false);
    QuadOptions q{kPanelQuadTol, 0, d.knots()};
    const GridFunction cdf = antiderivative([&](double x) { return d.pdf(x); }, e.lo, grid, q);
    EXPECT_EQ(is_log_concave(cdf).verdict, ConcavityStatus::kLogConcave) << d.to_string();
    const GridFunction f1 = antiderivative(cdf, grid.front(), std::vector<double>(grid.begin() + 1, grid.end()));
    EXPECT_EQ(is_log_concave(f1).verdict, ConcavityStatus::kLogConcave) << d.to_string();
  }
}

// A log-concave CDF re-based at any interior point stays log-concave above it.
TEST(LogConcavityProperties, RebasedCdfIsLogConcave) {
  const std::vector<std::pair<Distribution, Interval>> cases = {
      {Distribution::normal(0, 1), {-5, 5}},     {Distribution::logistic(), {-10, 10}},
      {Distribution::gamma(0.5), {1e-4, 10}},    {Distribution::weibull(0.5), {1e-4, 50}},
      {Distribution::lognormal(), {0.01, 30}},   {Distribution::cauchy(), {0, 50}},
      {Distribution::student_t(3), {0, 30}},     {Distribution::uniform(0, 1), {0, 1}}};
  for (const auto& [d, c] : cases) {
    for (double t : {0.0, 0.25, 0.5, 0.8}) {
      const double x0 = c.lo + t * (c.hi - c.lo);
      const auto grid = linspace(x0, c.hi, 200, false);
      std::vector<double> ys;
      for (double x : grid) ys.push_back(d.prob(x0, x));
      EXPECT_EQ(is_log_concave(GridFunction(grid, ys)).verdict, ConcavityStatus::kLogConcave)
          << d.to_string() << " x0=" << x0;
    }
  }
}

TEST(Conditions, RejectDiscreteAndBadGrids) {
  const std::vector<double> g = {1, 2, 3};
  EXPECT_THROW(upper_endpoint_condition(Distribution::geometric(0.5), 0, g), KindMismatchError);
  EXPECT_THROW(upper_endpoint_integral(Distribution::normal(0, 1), 2, g), DomainError);
  EXPECT_THROW(lower_endpoint_integral(Distribution::normal(0, 1), g, 2), DomainError);
  const std::vector<double> two = {1, 2};
  EXPECT_EQ(upper_endpoint_condition(Distribution::normal(0, 1), 0, two).verdict, ConcavityStatus::kInconclusive);
}

}  // namespace
}  // namespace uo
