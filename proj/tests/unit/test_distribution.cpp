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
#include <sstream>

#include "oracles.hpp"
#include "uo/distribution.hpp"
#include "uo/distribution_io.hpp"
#include "uo/errors.hpp"
#include "uo/quad.hpp"

namespace uo {
namespace {

std::vector<Distribution> continuous_families() {
  return {Distribution::normal(0, 1),       Distribution::uniform(0, 1),    Distribution::logistic(),
          Distribution::double_exponential(), Distribution::gamma(0.5),       Distribution::gamma(2),
          Distribution::weibull(0.5),       Distribution::weibull(2),       Distribution::lognormal(),
          Distribution::cauchy(),           Distribution::student_t(3),
          Distribution::mixture({{0.3, Distribution::normal(-2, 0.5)}, {0.7, Distribution::logistic(1, 2)}})};
}

TEST(Distribution, DensityValues) {
  EXPECT_NEAR(Distribution::normal(0, 1).pdf(0), 1.0 / std::sqrt(2 * std::numbers::pi), 1e-15);
  EXPECT_DOUBLE_EQ(Distribution::uniform(0, 1).pdf(0.5), 1.0);
  EXPECT_NEAR(Distribution::cauchy().pdf(0), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(Distribution::double_exponential().pdf(0), 0.5, 1e-15);
  EXPECT_NEAR(Distribution::logistic().pdf(0), 0.25, 1e-15);
}

TEST(Distribution, CdfValues) {
  EXPECT_DOUBLE_EQ(Distribution::cauchy().cdf(0), 0.5);
  EXPECT_DOUBLE_EQ(Distribution::uniform(0, 1).cdf(0.25), 0.25);
  EXPECT_NEAR(Distribution::geometric(0.5).cdf(1), 0.75, 1e-15);
  EXPECT_NEAR(Distribution::cauchy().cdf(1), 0.75, 1e-15);
  EXPECT_NEAR(Distribution::normal(0, 1).cdf(1), oracle::Phi(1), 1e-15);
  EXPECT_NEAR(Distribution::poisson(4).cdf(2), std::exp(-4.0) * (1 + 4 + 8), 1e-14);
  EXPECT_NEAR(Distribution::weibull(2).cdf(1), 1 - std::exp(-1.0), 1e-15);
  EXPECT_NEAR(Distribution::gamma(1).cdf(2), 1 - std::exp(-2.0), 1e-15);
}

TEST(Distribution, DiscreteCdfIsRightContinuousStep) {
  const auto g = Distribution::geometric(0.5);
  EXPECT_DOUBLE_EQ(g.cdf(0.999), 0.5);
  EXPECT_DOUBLE_EQ(g.cdf(0), 0.5);
  EXPECT_DOUBLE_EQ(g.cdf(-0.001), 0.0);
}

TEST(Distribution, KindMismatch) {
  EXPECT_THROW(Distribution::geometric(0.5).pdf(1), KindMismatchError);
  EXPECT_THROW(Distribution::normal(0, 1).pmf(1), KindMismatchError);
}

TEST(Distribution, QuantileExamples) {
  EXPECT_NEAR(Distribution::uniform(0, 2).quantile(0.5), 1.0, 1e-10);
  // 0.841345 is Phi(1) rounded up by 2.5e-7, which moves the quantile by 1.05e-6.
  const double q = Distribution::normal(0, 1).quantile(0.841345);
  EXPECT_NEAR(q, 1.0, 1.1e-6);
  double z = 1.0;
  for (int i = 0; i < 50; ++i) z -= (oracle::Phi(z) - 0.841345) / oracle::phi(z);
  EXPECT_NEAR(q, z, 1e-9);
  EXPECT_DOUBLE_EQ(Distribution::geometric(0.5).quantile(0.6), 1.0);
  EXPECT_DOUBLE_EQ(Distribution::geometric(0.5).quantile(0.5), 0.0);
  EXPECT_THROW(Distribution::normal(0, 1).quantile(0.0), DomainError);
  EXPECT_THROW(Distribution::normal(0, 1).quantile(1.0), DomainError);
}

TEST(Distribution, CdfMonotoneAndQuantileGalois) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(1e-6, 1 - 1e-6);
  auto fams = continuous_families();
  fams.push_back(Distribution::geometric(0.3));
  fams.push_back(Distribution::poisson(4));
  for (const auto& d : fams) {
    const Interval eff = d.effective_support();
    double prev = -1.0;
    for (int i = 0; i <= 400; ++i) {
      const double x = eff.lo + (eff.hi - eff.lo) * i / 400.0;
      const double f = d.cdf(x);
      ASSERT_GE(f, prev) << d.to_string() << " at " << x;
      prev = f;
    }
    for (int i = 0; i < 1000; ++i) {
      const double p = unit(rng);
      const double q = d.quantile(p);
      ASSERT_GE(d.cdf(q), p - 1e-9) << d.to_string() << " p=" << p;
      const double x = d.quantile(unit(rng));
      ASSERT_LE(d.quantile(std::clamp(d.cdf(x), 1e-12, 1 - 1e-12)), x + 1e-9) << d.to_string();
    }
  }
}

TEST(Distribution, PdfIntegratesToCdfDifferences) {
  std::mt19937_64 rng(11);
  for (const auto& d : continuous_families()) {
    std::uniform_real_distribution<double> p(0.01, 0.99);
    for (int i = 0; i < 20; ++i) {
      double a = d.quantile(p(rng));
      double b = d.quantile(p(rng));
      if (a > b) std::swap(a, b);
      if (!(b > a)) continue;
      QuadOptions q;
      for (double k : d.knots()) {
        if (k > a && k < b) q.breakpoints.push_back(k);
      }
      const double integral = integrate([&](double x) { return d.pdf(x); }, a, b, q).value;
      EXPECT_NEAR(integral, d.cdf(b) - d.cdf(a), 1e-8) << d.to_string() << " on " << a << "," << b;
    }
  }
}

TEST(Distribution, ProbUsesUpperTail) {
  const auto n = Distribution::normal(0, 1);
  EXPECT_NEAR(n.prob(8, 9) / (oracle::Phi(-8) - oracle::Phi(-9)), 1.0, 1e-12);
  EXPECT_NEAR(n.sf(10), 0.5 * std::erfc(10 / std::numbers::sqrt2), 1e-30);
}

TEST(Distribution, MixtureValidation) {
  EXPECT_THROW(Distribution::mixture({{0.5, Distribution::normal(0, 1)}, {0.4, Distribution::normal(1, 1)}}),
               DomainError);
  EXPECT_THROW(Distribution::mixture({{0.5, Distribution::normal(0, 1)}, {0.5, Distribution::geometric(0.5)}}),
               DomainError);
  const auto m = Distribution::mixture({{0.25, Distribution::uniform(0, 1)}, {0.75, Distribution::uniform(1, 3)}});
  EXPECT_NEAR(m.cdf(1.0), 0.25, 1e-15);
  EXPECT_NEAR(m.pdf(2.0), 0.375, 1e-15);
}

TEST(Distribution, TabulatedNormalisedAndInterpolated) {
  const auto t = Distribution::tabulated({0, 1, 2}, {0, 2, 0});
  EXPECT_NEAR(t.pdf(1), 1.0, 1e-15);
  EXPECT_NEAR(t.pdf(0.5), 0.5, 1e-15);
  EXPECT_DOUBLE_EQ(t.pdf(-1), 0.0);
  EXPECT_NEAR(t.cdf(1), 0.5, 1e-15);
  EXPECT_NEAR(t.cdf(0.5), 0.125, 1e-15);
  const auto s = Distribution::tabulated({0, 1, 2}, {1, 3, 0}, TableInterp::kStep);
  EXPECT_NEAR(s.pdf(0.5), 0.25, 1e-15);
  EXPECT_NEAR(s.cdf(1.5), 0.25 + 0.375, 1e-15);
}

TEST(Distribution, PmfTableValidation) {
  EXPECT_THROW(PmfTable::make({0, 1}, {0.5, 0.6}), DomainError);
  EXPECT_THROW(PmfTable::make({1, 0}, {0.5, 0.5}), DomainError);
  const auto d = Distribution::from_pmf(PmfTable::make({0, 10, 11}, {1.0 / 3, 1.0 / 3, 1.0 / 3}));
  EXPECT_NEAR(d.cdf(10.5), 2.0 / 3, 1e-15);
  EXPECT_DOUBLE_EQ(d.quantile(0.5), 10.0);
}

TEST(Distribution, InfiniteSupportTruncation) {
  const PmfTable t = Distribution::geometric(0.5).to_pmf_table();
  EXPECT_EQ(t.ks.front(), 0);
  EXPECT_GT(t.dropped_tail_mass, 0.0);
  EXPECT_LT(t.dropped_tail_mass, 1e-14);
  double s = 0;
  for (double p : t.ps) s += p;
  EXPECT_NEAR(s, 1.0, 1e-15);
}

TEST(Distribution, EffectiveSupportClipsTails) {
  const Interval e = Distribution::normal(0, 1).effective_support();
  EXPECT_NEAR(oracle::Phi(e.lo), kTailEpsilon, 1e-15);
  EXPECT_DOUBLE_EQ(Distribution::uniform(2, 3).effective_support().lo, 2.0);
}

TEST(DistributionIo, ParsesMiniLanguage) {
  EXPECT_EQ(parse_distribution("normal:0,1").family(), Family::kNormal);
  EXPECT_EQ(parse_distribution("gaussian:0,1").family(), Family::kNormal);
  EXPECT_EQ(parse_distribution("cauchy").family(), Family::kCauchy);
  EXPECT_EQ(parse_distribution("double-exponential").family(), Family::kDoubleExponential);
  EXPECT_EQ(parse_distribution("student-t:3").family(), Family::kStudentT);
  const auto m = parse_distribution("mixture:1/3*normal:0,0.01|1/3*normal:10,0.01|1/3*normal:10.1,0.01");
  EXPECT_EQ(m.components().size(), 3u);
  EXPECT_NEAR(m.components()[0].weight, 1.0 / 3, 1e-15);
  EXPECT_NO_THROW(parse_distribution("normal:0"));
  EXPECT_THROW(parse_distribution("normal:0,1,2"), ParseError);
  EXPECT_THROW(parse_distribution("bogus:1"), ParseError);
  EXPECT_THROW(parse_distribution("normal:0,-1"), DomainError);
}

TEST(DistributionIo, ToStringRoundTrips) {
  for (const auto& d : continuous_families()) {
    const auto r = parse_distribution(d.to_string());
    EXPECT_EQ(r.to_string(), d.to_string());
    EXPECT_DOUBLE_EQ(r.cdf(0.7), d.cdf(0.7));
  }
  EXPECT_EQ(Distribution::normal(10, 0.01).to_string(), "normal:10,0.01");
}

TEST(DistributionIo, DensityCsv) {
  std::istringstream ok("x,pdf\n0,0\n1,2\n2,0\n");
  EXPECT_NEAR(read_density_csv(ok).pdf(1), 1.0, 1e-15);
  std::istringstream bad_order("x,pdf\n0,1\n0,1\n");
  try {
    read_density_csv(bad_order);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  std::istringstream bad_header("x,density\n0,1\n1,1\n");
  EXPECT_THROW(read_density_csv(bad_header), ParseError);
}

TEST(DistributionIo, PmfCsv) {
  std::istringstream ok("k,pmf\n0,0.5\n1,0.25\n2,0.2500001\n");
  const PmfTable t = read_pmf_csv(ok);
  double s = 0;
  for (double p : t.ps) s += p;
  EXPECT_NEAR(s, 1.0, 1e-15);
  std::istringstream off("k,pmf\n0,0.5\n1,0.25\n");
  EXPECT_THROW(read_pmf_csv(off), ParseError);
  std::istringstream nonint("k,pmf\n0.5,1\n");
  try {
    read_pmf_csv(nonint);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

}  // namespace
}  // namespace uo
