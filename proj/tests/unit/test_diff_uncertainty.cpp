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

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "uo/diff_uncertainty.hpp"
#include "uo/distribution.hpp"
#include "uo/errors.hpp"
#include "uo/trunc_moments.hpp"

namespace uo {
namespace {

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i <= n; ++i) v.push_back(lo + (hi - lo) * i / n);
  return v;
}

Distribution two_bumps() {
  const auto xs = linspace(0, 1, 2000);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(0.5 * oracle::phi((x - 0.2) / 0.05) + 0.5 * oracle::phi((x - 0.8) / 0.05));
  return Distribution::tabulated(xs, ys);
}

const RealFn kHalfSquare = [](double u) { return 0.5 * u * u; };
const RealFn kAbs = [](double u) { return std::abs(u); };
const RealFn kFourth = [](double u) { return u * u * u * u; };

TEST(DiffDensity, UniformIsTriangular) {
  const auto d1 = diff_density(Distribution::uniform(0, 1), 1.0, 201);
  ASSERT_EQ(d1.u_grid.size(), 201u);
  for (std::size_t i = 0; i < d1.u_grid.size(); ++i) {
    EXPECT_NEAR(d1.g_values[i], 1 - std::abs(d1.u_grid[i]), 1e-12);
  }
  EXPECT_NEAR(d1.normalization, 1.0, 1e-12);
  EXPECT_EQ(d1.b(), 1.0);
  const auto d2 = diff_density(Distribution::uniform(0, 1), 0.5, 101);
  for (std::size_t i = 0; i < d2.u_grid.size(); ++i) {
    EXPECT_NEAR(d2.g_values[i], (0.5 - std::abs(d2.u_grid[i])) / 0.25, 1e-11);
  }
  EXPECT_NEAR(diff_density_at(Distribution::uniform(0, 1), {0, 0.5}, 0), 2.0, 1e-12);
  EXPECT_EQ(diff_density_at(Distribution::uniform(0, 1), {0, 0.5}, 0.5), 0.0);
}

TEST(DiffDensity, NormalSymmetricUnimodalNormalised) {
  const auto n = Distribution::normal(0, 1);
  const auto dd = diff_density(n, 2.0);
  EXPECT_NEAR(dd.normalization, 1.0, 1e-8);
  const std::size_t m = dd.u_grid.size();
  ASSERT_EQ(m % 2, 1u);
  for (std::size_t i = 0; i < m; ++i) EXPECT_NEAR(dd.g_values[i], dd.g_values[m - 1 - i], 1e-9);
  EXPECT_EQ(dd.u_grid[m / 2], 0.0);
  EXPECT_EQ(dd.parent_log_concave, ConcavityStatus::kLogConcave);
  const double mass = oracle::Phi(2) - oracle::Phi(0);
  for (double u : {0.0, 0.3, 1.0, 1.7}) {
    const double ref = oracle::simpson([u](double x) { return oracle::phi(x) * oracle::phi(x - u); }, u, 2) /
                       (mass * mass);
    EXPECT_NEAR(diff_density_at(n, {0, 2}, u), ref, 1e-10) << u;
  }
}

TEST(DiffDensity, Rejects) {
  EXPECT_THROW(diff_density(Distribution::uniform(0, 1), Interval{2, 3}, 11), DegenerateIntervalError);
  EXPECT_THROW(diff_density(Distribution::geometric(0.5), 2.0, 11), KindMismatchError);
}

TEST(GMonotone, Examples) {
  EXPECT_EQ(g_monotone_check(diff_density(Distribution::uniform(0, 1), 1.0, 101), 1e-12).verdict, Verdict::kHolds);
  EXPECT_EQ(g_monotone_check(diff_density(Distribution::normal(0, 1), 2.0, 401), 1e-12).verdict, Verdict::kHolds);
  const auto dd = diff_density(two_bumps(), 1.0, 401);
  EXPECT_EQ(dd.parent_log_concave, ConcavityStatus::kNotLogConcave);
  const auto v = g_monotone_check(dd, 1e-9);
  ASSERT_EQ(v.verdict, Verdict::kFails);
  ASSERT_TRUE(v.witness);
  EXPECT_NEAR(v.witness->probes[1], 0.6, 0.1);
  EXPECT_EQ(v.order, OrderKind::kMonotone);
}

TEST(SlopeCross, Examples) {
  const auto u = slope_cross_check(Distribution::uniform(0, 1), 0.2, 0.6, 1.0, 1e-6);
  EXPECT_EQ(u.verdict, Verdict::kHolds);
  EXPECT_NEAR(u.lhs, -0.8 / 0.36, 1e-6);
  EXPECT_NEAR(u.rhs, -0.4 / 0.36, 1e-6);
  EXPECT_NEAR(u.margin, u.rhs - u.lhs, 1e-15);
  EXPECT_EQ(slope_cross_check(Distribution::normal(0, 1), 0.5, 1, 2, 1e-6).verdict, Verdict::kHolds);
  const auto edge = slope_cross_check(Distribution::normal(0, 1), 1e-7, 1, 2, 1e-6);
  EXPECT_EQ(edge.verdict, Verdict::kHolds);
  EXPECT_GE(edge.margin, -1e-6);
}

TEST(SlopeCross, RandomTriplesOnLogConcaveFamilies) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0, 1);
  for (const auto& d : {Distribution::normal(0, 1), Distribution::logistic(), Distribution::uniform(0, 3)}) {
    for (int t = 0; t < 15; ++t) {
      const double b1 = 0.2 + 2.5 * unit(rng);
      const double b2 = b1 + 0.05 + 2 * unit(rng);
      const double u = (0.02 + 0.96 * unit(rng)) * b1;
      EXPECT_EQ(slope_cross_check(d, u, b1, b2, 1e-6).verdict, Verdict::kHolds)
          << d.to_string() << ' ' << u << ' ' << b1 << ' ' << b2;
    }
  }
}

TEST(ExpectedPhi, UniformValues) {
  const auto u = Distribution::uniform(0, 1);
  EXPECT_NEAR(expected_phi(u, 1.0, kHalfSquare).value, 1.0 / 12, 1e-8);
  EXPECT_NEAR(expected_phi(u, 1.0, kAbs).value, 1.0 / 3, 1e-8);
  const auto n = Distribution::normal(0, 1);
  EXPECT_LT(expected_phi(n, 1.0, kAbs).value, expected_phi(n, 2.0, kAbs).value);
}

TEST(ExpectedPhi, HalfSquareIsTruncatedVariance) {
  for (const auto& d : {Distribution::normal(0, 1), Distribution::logistic(), Distribution::gamma(2),
                        Distribution::cauchy(), Distribution::lognormal()}) {
    for (double b : {0.3, 1.0, 2.5}) {
      const double v = truncated_moments_oracle(d, {0, b}).variance;
      EXPECT_NEAR(expected_phi(d, b, kHalfSquare).value, v, 1e-6) << d.to_string() << " b=" << b;
    }
  }
}

TEST(ExpectedPhi, NondecreasingInB) {
  const auto bs = linspace(0.4, 4, 5);
  for (const auto& d : {Distribution::normal(0, 1), Distribution::double_exponential()}) {
    for (const RealFn& phi : {kHalfSquare, kAbs, kFourth}) {
      double prev = -1;
      for (double b : bs) {
        const double v = expected_phi(d, b, phi).value;
        EXPECT_GE(v - prev, -1e-7) << d.to_string() << " b=" << b;
        prev = v;
      }
    }
  }
}

TEST(Entropy, UniformTriangular) {
  for (double b : {0.25, 0.5, 1.0}) {
    const auto e = shannon_entropy_u(Distribution::uniform(0, 1), b);
    EXPECT_NEAR(e.value, oracle::triangular_entropy(b), 1e-6) << b;
    EXPECT_EQ(e.box_hi, b);
  }
}

TEST(Entropy, NormalLimits) {
  const auto n = Distribution::normal(0, 1);
  const double ref = oracle::simpson(
      [](double u) {
        const double h = oracle::half_normal_difference_density(u);
        return h > 0 ? -h * std::log(h) : 0.0;
      },
      -8, 8, 40000);
  EXPECT_NEAR(shannon_entropy_u(n, 8.0).value, ref, 1e-6);
  EXPECT_NEAR(shannon_entropy_u(n, Interval{-8, 8}).value, 0.5 * std::log(4 * std::numbers::pi * std::numbers::e),
              1e-3);
}

TEST(Entropy, NondecreasingInB) {
  double prev = -kInf;
  for (double b : linspace(0.25, 4, 5)) {
    const double h = shannon_entropy_u(Distribution::logistic(), b).value;
    EXPECT_GE(h, prev - 1e-7);
    prev = h;
  }
}

TEST(Entropy, KlNonnegative) {
  for (auto [b1, b2] : {std::pair{0.5, 1.0}, {1.0, 2.0}, {0.2, 3.0}}) {
    EXPECT_GE(kl_divergence_u(Distribution::normal(0, 1), b1, b2).value, -1e-8);
    EXPECT_GE(kl_divergence_u(Distribution::uniform(0, 5), b1, b2).value, -1e-8);
  }
}

TEST(EntropyChain, Examples) {
  const auto u = entropy_inequality_chain(Distribution::uniform(0, 1), 0.5, 1.0, 1e-8);
  EXPECT_TRUE(u.all_hold());
  EXPECT_NEAR(u.entropy_growth.lhs, 0.5 + std::log(0.5), 1e-6);
  EXPECT_NEAR(u.entropy_growth.rhs, 0.5, 1e-6);
  const auto same = entropy_inequality_chain(Distribution::normal(0, 1), 1.0, 1.0, 1e-8);
  EXPECT_TRUE(same.all_hold());
  EXPECT_NEAR(same.entropy_growth.lhs, same.entropy_growth.rhs, 1e-8);
  EXPECT_TRUE(entropy_inequality_chain(Distribution::normal(0, 1), 1.0, 2.0, 1e-8).all_hold());
}

TEST(EntropyChain, CrossEntropyNeedsOverlappingSupport) {
  // g(.; b2) is zero on part of the support of g(.; b1).
  const auto xs = linspace(0, 2, 200);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(x < 1 ? 1.0 : 0.0);
  EXPECT_THROW(cross_entropy_u(Distribution::tabulated(xs, ys, TableInterp::kStep), 2.0, 0.5), DomainError);
}

}  // namespace
}  // namespace uo
