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

#include "uo/distribution.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <utility>

#include <boost/math/distributions/students_t.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "uo/errors.hpp"

namespace uo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kQuantileTol = 1e-10;

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }
double std_normal_sf(double z) { return 0.5 * std::erfc(z / kSqrt2); }
double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi); }

// Standard Cauchy tails via arctan of the reciprocal, exact far out.
double std_cauchy_cdf(double z) {
  if (z == 0.0) return 0.5;  // also -0.0, where 1/z is -inf
  if (z < 0.0) return std::atan(-1.0 / z) / kPi;
  return 1.0 - std::atan(1.0 / z) / kPi;
}
double std_cauchy_sf(double z) { return std_cauchy_cdf(-z); }

std::string format_param(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw DomainError(msg);
}

}  // namespace

struct Distribution::Impl {
  DistKind kind = DistKind::kContinuousParametric;
  Family family = Family::kNormal;
  std::vector<double> params;

  std::vector<MixtureComponent> components;

  // Tabulated density.
  std::vector<double> xs;
  std::vector<double> ys;
  TableInterp interp = TableInterp::kLinear;
  std::vector<double> cum;  // F at xs
  std::vector<double> sfx;  // 1 - F at xs, summed from the top

  // Pmf table.
  std::vector<long> ks;
  std::vector<double> ps;
  std::vector<double> pcum;  // F(ks[i]) = sum_{j <= i} ps[j]
  std::vector<double> psuf;  // P(X > ks[i])

  bool discrete() const {
    if (family == Family::kMixture) return components.front().dist.is_discrete();
    return kind == DistKind::kDiscretePmf;
  }

  double pdf(double x) const;
  double pmf(long k) const;
  double cdf(double x) const;
  double sf(double x) const;
  double prob(double lo, double hi) const;
  Interval support() const;
  std::vector<double> knots() const;

  // Tabulated helpers.
  double table_density(double x) const;
  double table_cdf(double x) const;
  double table_sf(double x) const;
  // Pmf table helpers.
  double ptable_cdf(double x) const;
  double ptable_sf(double x) const;
};

Interval Interval::make(double lo, double hi) {
  if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
    std::ostringstream os;
    os << "invalid interval (" << lo << ", " << hi << "): require lo < hi";
    throw DomainError(os.str());
  }
  return Interval{lo, hi};
}

bool Interval::is_finite() const { return std::isfinite(lo) && std::isfinite(hi); }

PmfTable PmfTable::make(std::vector<long> ks, std::vector<double> ps) {
  require(!ks.empty() && ks.size() == ps.size(), "pmf table: ks and ps must be nonempty and equal length");
  for (std::size_t i = 1; i < ks.size(); ++i) {
    require(ks[i] > ks[i - 1], "pmf table: k values must be strictly increasing");
  }
  double total = 0.0;
  for (double p : ps) {
    require(std::isfinite(p) && p >= 0.0, "pmf table: probabilities must be finite and nonnegative");
    total += p;
  }
  require(std::abs(total - 1.0) <= 1e-12, "pmf table: probabilities must sum to 1 within 1e-12");
  PmfTable t;
  t.ks = std::move(ks);
  t.ps = std::move(ps);
  return t;
}

// ---------------------------------------------------------------------------
// Tabulated density and pmf tables

double Distribution::Impl::table_density(double x) const {
  if (x < xs.front() || x > xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  if (i == 0) return interp == TableInterp::kStep ? 0.0 : ys.front();
  if (i >= xs.size()) {
    // x == xs.back()
    return interp == TableInterp::kStep ? ys[xs.size() - 2] : ys.back();
  }
  --i;
  if (interp == TableInterp::kStep) {
    // (x_i, x_{i+1}] carries ys[i]; x == x_i belongs to the previous cell.
    if (x == xs[i]) return i == 0 ? 0.0 : ys[i - 1];
    return ys[i];
  }
  const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
  return ys[i] + t * (ys[i + 1] - ys[i]);
}

double Distribution::Impl::table_cdf(double x) const {
  if (x <= xs.front()) return 0.0;
  if (x >= xs.back()) return 1.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double dx = x - xs[i];
  if (interp == TableInterp::kStep) return cum[i] + ys[i] * dx;
  const double slope = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]);
  return cum[i] + ys[i] * dx + 0.5 * slope * dx * dx;
}

double Distribution::Impl::table_sf(double x) const {
  if (x <= xs.front()) return 1.0;
  if (x >= xs.back()) return 0.0;
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs.begin()) - 1;
  const double dx = xs[i + 1] - x;
  if (interp == TableInterp::kStep) return sfx[i + 1] + ys[i] * dx;
  const double yx = ys[i] + (ys[i + 1] - ys[i]) * (x - xs[i]) / (xs[i + 1] - xs[i]);
  return sfx[i + 1] + 0.5 * (yx + ys[i + 1]) * dx;
}

double Distribution::Impl::ptable_cdf(double x) const {
  if (x < static_cast<double>(ks.front())) return 0.0;
  const double fx = std::floor(x);
  if (fx >= static_cast<double>(ks.back())) return 1.0;
  auto it = std::upper_bound(ks.begin(), ks.end(), static_cast<long>(fx));
  const std::size_t n = static_cast<std::size_t>(it - ks.begin());
  return n == 0 ? 0.0 : pcum[n - 1];
}

double Distribution::Impl::ptable_sf(double x) const {
  if (x < static_cast<double>(ks.front())) return 1.0;
  const double fx = std::floor(x);
  if (fx >= static_cast<double>(ks.back())) return 0.0;
  auto it = std::upper_bound(ks.begin(), ks.end(), static_cast<long>(fx));
  const std::size_t n = static_cast<std::size_t>(it - ks.begin());
  return n == 0 ? 1.0 : psuf[n - 1];
}

// ---------------------------------------------------------------------------
// Evaluators

double Distribution::Impl::pdf(double x) const {
  if (discrete()) throw KindMismatchError("density requested for a discrete distribution");
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  const auto& p = params;
  switch (family) {
    case Family::kNormal:
      return std_normal_pdf((x - p[0]) / p[1]) / p[1];
    case Family::kUniform:
      return (x >= p[0] && x <= p[1]) ? 1.0 / (p[1] - p[0]) : 0.0;
    case Family::kLogistic: {
      const double z = std::abs((x - p[0]) / p[1]);
      const double e = std::exp(-z);
      return e / (p[1] * (1.0 + e) * (1.0 + e));
    }
    case Family::kDoubleExponential:
      return std::exp(-std::abs(x - p[0]) / p[1]) / (2.0 * p[1]);
    case Family::kWeibull: {
      if (x <= 0.0) return (x == 0.0 && p[0] == 1.0) ? 1.0 / p[1] : 0.0;
      const double z = x / p[1];
      return p[0] / p[1] * std::pow(z, p[0] - 1.0) * std::exp(-std::pow(z, p[0]));
    }
    case Family::kGamma: {
      if (x <= 0.0) return (x == 0.0 && p[0] == 1.0) ? 1.0 / p[1] : 0.0;
      const double z = x / p[1];
      return std::exp((p[0] - 1.0) * std::log(z) - z - std::lgamma(p[0])) / p[1];
    }
    case Family::kLognormal: {
      if (x <= 0.0) return 0.0;
      const double z = (std::log(x) - p[0]) / p[1];
      return std_normal_pdf(z) / (p[1] * x);
    }
    case Family::kCauchy: {
      const double z = (x - p[0]) / p[1];
      return 1.0 / (kPi * p[1] * (1.0 + z * z));
    }
    case Family::kStudentT:
      return boost::math::pdf(boost::math::students_t_distribution<double>(p[0]), x);
    case Family::kMixture: {
      double s = 0.0;
      for (const auto& c : components) s += c.weight * c.dist.pdf(x);
      return s;
    }
    case Family::kTable:
      return table_density(x);
    default:
      break;
  }
  throw KindMismatchError("density requested for a discrete distribution");
}

double Distribution::Impl::pmf(long k) const {
  if (!discrete()) throw KindMismatchError("pmf requested for a continuous distribution");
  switch (family) {
    case Family::kGeometric:
      return k < 0 ? 0.0 : params[0] * std::pow(1.0 - params[0], static_cast<double>(k));
    case Family::kPoisson: {
      if (k < 0) return 0.0;
      const double lam = params[0];
      const double kd = static_cast<double>(k);
      return std::exp(kd * std::log(lam) - lam - std::lgamma(kd + 1.0));
    }
    case Family::kMixture: {
      double s = 0.0;
      for (const auto& c : components) s += c.weight * c.dist.pmf(k);
      return s;
    }
    case Family::kTable: {
      auto it = std::lower_bound(ks.begin(), ks.end(), k);
      if (it == ks.end() || *it != k) return 0.0;
      return ps[static_cast<std::size_t>(it - ks.begin())];
    }
    default:
      break;
  }
  throw KindMismatchError("pmf requested for a continuous distribution");
}

double Distribution::Impl::cdf(double x) const {
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  const auto& p = params;
  switch (family) {
    case Family::kNormal:
      return std_normal_cdf((x - p[0]) / p[1]);
    case Family::kUniform:
      return x <= p[0] ? 0.0 : (x >= p[1] ? 1.0 : (x - p[0]) / (p[1] - p[0]));
    case Family::kLogistic:
      return 1.0 / (1.0 + std::exp(-(x - p[0]) / p[1]));
    case Family::kDoubleExponential: {
      const double z = (x - p[0]) / p[1];
      return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
    }
    case Family::kWeibull:
      return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / p[1], p[0]));
    case Family::kGamma:
      return x <= 0.0 ? 0.0 : boost::math::gamma_p(p[0], x / p[1]);
    case Family::kLognormal:
      return x <= 0.0 ? 0.0 : std_normal_cdf((std::log(x) - p[0]) / p[1]);
    case Family::kCauchy:
      return std_cauchy_cdf((x - p[0]) / p[1]);
    case Family::kStudentT:
      if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
      return boost::math::cdf(boost::math::students_t_distribution<double>(p[0]), x);
    case Family::kGeometric: {
      if (x < 0.0) return 0.0;
      if (std::isinf(x)) return 1.0;
      return -std::expm1((std::floor(x) + 1.0) * std::log1p(-p[0]));
    }
    case Family::kPoisson:
      if (x < 0.0) return 0.0;
      if (std::isinf(x)) return 1.0;
      return boost::math::gamma_q(std::floor(x) + 1.0, p[0]);
    case Family::kMixture: {
      double s = 0.0;
      for (const auto& c : components) s += c.weight * c.dist.cdf(x);
      return std::min(1.0, s);
    }
    case Family::kTable:
      return discrete() ? ptable_cdf(x) : table_cdf(x);
  }
  return 0.0;
}

double Distribution::Impl::sf(double x) const {
  if (std::isnan(x)) return std::numeric_limits<double>::quiet_NaN();
  const auto& p = params;
  switch (family) {
    case Family::kNormal:
      return std_normal_sf((x - p[0]) / p[1]);
    case Family::kUniform:
      return x <= p[0] ? 1.0 : (x >= p[1] ? 0.0 : (p[1] - x) / (p[1] - p[0]));
    case Family::kLogistic:
      return 1.0 / (1.0 + std::exp((x - p[0]) / p[1]));
    case Family::kDoubleExponential: {
      const double z = (x - p[0]) / p[1];
      return z > 0.0 ? 0.5 * std::exp(-z) : 1.0 - 0.5 * std::exp(z);
    }
    case Family::kWeibull:
      return x <= 0.0 ? 1.0 : std::exp(-std::pow(x / p[1], p[0]));
    case Family::kGamma:
      return x <= 0.0 ? 1.0 : boost::math::gamma_q(p[0], x / p[1]);
    case Family::kLognormal:
      return x <= 0.0 ? 1.0 : std_normal_sf((std::log(x) - p[0]) / p[1]);
    case Family::kCauchy:
      return std_cauchy_sf((x - p[0]) / p[1]);
    case Family::kStudentT:
      if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
      return boost::math::cdf(boost::math::complement(boost::math::students_t_distribution<double>(p[0]), x));
    case Family::kGeometric:
      if (x < 0.0) return 1.0;
      if (std::isinf(x)) return 0.0;
      return std::exp((std::floor(x) + 1.0) * std::log1p(-p[0]));
    case Family::kPoisson:
      if (x < 0.0) return 1.0;
      if (std::isinf(x)) return 0.0;
      return boost::math::gamma_p(std::floor(x) + 1.0, p[0]);
    case Family::kMixture: {
      double s = 0.0;
      for (const auto& c : components) s += c.weight * c.dist.sf(x);
      return std::min(1.0, s);
    }
    case Family::kTable:
      return discrete() ? ptable_sf(x) : table_sf(x);
  }
  return 0.0;
}

double Distribution::Impl::prob(double lo, double hi) const {
  if (!(lo < hi)) return 0.0;
  if (family == Family::kMixture) {
    double s = 0.0;
    for (const auto& c : components) s += c.weight * c.dist.prob(lo, hi);
    return s;
  }
  const double flo = cdf(lo);
  const double v = flo < 0.5 ? cdf(hi) - flo : sf(lo) - sf(hi);
  return std::max(0.0, v);
}

Interval Distribution::Impl::support() const {
  const auto& p = params;
  switch (family) {
    case Family::kUniform:
      return {p[0], p[1]};
    case Family::kWeibull:
    case Family::kGamma:
    case Family::kLognormal:
      return {0.0, kInf};
    case Family::kGeometric:
    case Family::kPoisson:
      return {0.0, kInf};
    case Family::kMixture: {
      Interval s{kInf, -kInf};
      for (const auto& c : components) {
        const Interval ci = c.dist.support();
        s.lo = std::min(s.lo, ci.lo);
        s.hi = std::max(s.hi, ci.hi);
      }
      return s;
    }
    case Family::kTable:
      if (discrete()) return {static_cast<double>(ks.front()), static_cast<double>(ks.back())};
      return {xs.front(), xs.back()};
    default:
      return {-kInf, kInf};
  }
}

constexpr double kKnotLadder[] = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};

std::vector<double> Distribution::Impl::knots() const {
  std::vector<double> k;
  const auto& p = params;
  switch (family) {
    case Family::kNormal:
    case Family::kLogistic:
    case Family::kDoubleExponential:
    case Family::kCauchy:
      // Geometric ladder so no quadrature panel is much wider than the
      // distance to the mode.
      k.push_back(p[0]);
      for (double m : kKnotLadder) {
        k.push_back(p[0] - m * p[1]);
        k.push_back(p[0] + m * p[1]);
      }
      break;
    case Family::kUniform:
      k = {p[0], p[1]};
      break;
    case Family::kWeibull:
    case Family::kGamma:
      k.push_back(0.0);
      for (double m : kKnotLadder) {
        k.push_back(m * p[1]);
        k.push_back(p[1] / m);
      }
      break;
    case Family::kLognormal:
      k = {0.0, std::exp(p[0] - p[1] * p[1])};
      for (double m : kKnotLadder) {
        if (m > 8.0) break;
        k.push_back(std::exp(p[0] - m * p[1]));
        k.push_back(std::exp(p[0] + m * p[1]));
      }
      k.push_back(std::exp(p[0]));
      break;
    case Family::kStudentT:
      k.push_back(0.0);
      for (double m : kKnotLadder) {
        k.push_back(-m);
        k.push_back(m);
      }
      break;
    case Family::kMixture:
      for (const auto& c : components) {
        const auto ck = c.dist.knots();
        k.insert(k.end(), ck.begin(), ck.end());
      }
      break;
    case Family::kTable:
      if (discrete()) {
        for (long kk : ks) k.push_back(static_cast<double>(kk));
      } else {
        k = xs;
      }
      break;
    default:
      break;
  }
  std::sort(k.begin(), k.end());
  k.erase(std::unique(k.begin(), k.end()), k.end());
  return k;
}

// ---------------------------------------------------------------------------
// Construction

Distribution::Distribution(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

namespace {

std::shared_ptr<Distribution::Impl> parametric(Family f, std::vector<double> params) {
  for (double v : params) require(std::isfinite(v), "distribution parameters must be finite");
  auto impl = std::make_shared<Distribution::Impl>();
  impl->family = f;
  impl->params = std::move(params);
  return impl;
}

}  // namespace

Distribution Distribution::normal(double mean, double sd) {
  require(sd > 0.0, "normal: sd must be positive");
  return Distribution(parametric(Family::kNormal, {mean, sd}));
}

Distribution Distribution::uniform(double lo, double hi) {
  require(lo < hi, "uniform: require lo < hi");
  return Distribution(parametric(Family::kUniform, {lo, hi}));
}

Distribution Distribution::logistic(double location, double scale) {
  require(scale > 0.0, "logistic: scale must be positive");
  return Distribution(parametric(Family::kLogistic, {location, scale}));
}

Distribution Distribution::double_exponential(double location, double scale) {
  require(scale > 0.0, "double exponential: scale must be positive");
  return Distribution(parametric(Family::kDoubleExponential, {location, scale}));
}

Distribution Distribution::weibull(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, "weibull: shape and scale must be positive");
  return Distribution(parametric(Family::kWeibull, {shape, scale}));
}

Distribution Distribution::gamma(double shape, double scale) {
  require(shape > 0.0 && scale > 0.0, "gamma: shape and scale must be positive");
  return Distribution(parametric(Family::kGamma, {shape, scale}));
}

Distribution Distribution::lognormal(double meanlog, double sdlog) {
  require(sdlog > 0.0, "lognormal: sdlog must be positive");
  return Distribution(parametric(Family::kLognormal, {meanlog, sdlog}));
}

Distribution Distribution::cauchy(double location, double scale) {
  require(scale > 0.0, "cauchy: scale must be positive");
  return Distribution(parametric(Family::kCauchy, {location, scale}));
}

Distribution Distribution::student_t(double dof) {
  require(dof > 0.0, "student-t: degrees of freedom must be positive");
  return Distribution(parametric(Family::kStudentT, {dof}));
}

Distribution Distribution::geometric(double p) {
  require(p > 0.0 && p < 1.0, "geometric: require 0 < p < 1");
  auto impl = parametric(Family::kGeometric, {p});
  impl->kind = DistKind::kDiscretePmf;
  return Distribution(impl);
}

Distribution Distribution::poisson(double lambda) {
  require(lambda > 0.0, "poisson: lambda must be positive");
  auto impl = parametric(Family::kPoisson, {lambda});
  impl->kind = DistKind::kDiscretePmf;
  return Distribution(impl);
}

Distribution Distribution::mixture(std::vector<MixtureComponent> components) {
  require(!components.empty(), "mixture: at least one component required");
  double total = 0.0;
  const bool disc = components.front().dist.is_discrete();
  for (const auto& c : components) {
    require(std::isfinite(c.weight) && c.weight >= 0.0, "mixture: weights must be nonnegative");
    require(c.dist.is_discrete() == disc, "mixture: components must all be discrete or all continuous");
    total += c.weight;
  }
  require(std::abs(total - 1.0) <= 1e-12, "mixture: weights must sum to 1 within 1e-12");
  auto impl = std::make_shared<Impl>();
  impl->family = Family::kMixture;
  impl->kind = disc ? DistKind::kDiscretePmf : DistKind::kContinuousParametric;
  impl->components = std::move(components);
  return Distribution(impl);
}

Distribution Distribution::tabulated(std::vector<double> xs, std::vector<double> density,
                                     TableInterp interp) {
  require(xs.size() >= 2 && xs.size() == density.size(),
          "tabulated density: need at least two points and equal lengths");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    require(std::isfinite(xs[i]), "tabulated density: abscissae must be finite");
    require(std::isfinite(density[i]) && density[i] >= 0.0,
            "tabulated density: values must be finite and nonnegative");
    if (i > 0) require(xs[i] > xs[i - 1], "tabulated density: abscissae must be strictly increasing");
  }
  auto impl = std::make_shared<Impl>();
  impl->kind = DistKind::kTabulatedDensity;
  impl->family = Family::kTable;
  impl->interp = interp;
  if (interp == TableInterp::kStep) density.back() = 0.0;

  const std::size_t n = xs.size();
  std::vector<double> area(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double dx = xs[i + 1] - xs[i];
    area[i] = interp == TableInterp::kStep ? density[i] * dx : 0.5 * (density[i] + density[i + 1]) * dx;
  }
  std::vector<double> cum(n, 0.0);
  std::vector<double> sfx(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) cum[i] = cum[i - 1] + area[i - 1];
  for (std::size_t i = n - 1; i-- > 0;) sfx[i] = sfx[i + 1] + area[i];
  const double total = cum.back();
  require(total > 0.0, "tabulated density: zero total mass");
  for (auto& y : density) y /= total;
  for (auto& c : cum) c /= total;
  for (auto& c : sfx) c /= total;
  cum.back() = 1.0;
  sfx.front() = 1.0;
  impl->xs = std::move(xs);
  impl->ys = std::move(density);
  impl->cum = std::move(cum);
  impl->sfx = std::move(sfx);
  return Distribution(impl);
}

Distribution Distribution::from_pmf(PmfTable table) {
  // Re-validate; callers may have built the struct by hand.
  PmfTable t = PmfTable::make(std::move(table.ks), std::move(table.ps));
  auto impl = std::make_shared<Impl>();
  impl->kind = DistKind::kDiscretePmf;
  impl->family = Family::kTable;
  const std::size_t n = t.ks.size();
  impl->pcum.resize(n);
  impl->psuf.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += t.ps[i];
    impl->pcum[i] = acc;
  }
  acc = 0.0;
  for (std::size_t i = n; i-- > 0;) {
    impl->psuf[i] = acc;
    acc += t.ps[i];
  }
  impl->ks = std::move(t.ks);
  impl->ps = std::move(t.ps);
  return Distribution(impl);
}

// ---------------------------------------------------------------------------
// Public accessors

DistKind Distribution::kind() const { return impl_->kind; }
Family Distribution::family() const { return impl_->family; }
const std::vector<double>& Distribution::params() const { return impl_->params; }
bool Distribution::is_discrete() const { return impl_->discrete(); }
Interval Distribution::support() const { return impl_->support(); }
double Distribution::pdf(double x) const { return impl_->pdf(x); }
double Distribution::pmf(long k) const { return impl_->pmf(k); }
double Distribution::cdf(double x) const { return impl_->cdf(x); }
double Distribution::sf(double x) const { return impl_->sf(x); }
double Distribution::prob(double lo, double hi) const { return impl_->prob(lo, hi); }
std::vector<double> Distribution::knots() const { return impl_->knots(); }
const std::vector<MixtureComponent>& Distribution::components() const { return impl_->components; }
const std::vector<double>& Distribution::table_xs() const { return impl_->xs; }
const std::vector<double>& Distribution::table_ys() const { return impl_->ys; }
TableInterp Distribution::table_interp() const { return impl_->interp; }

double Distribution::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("quantile: probability must lie in (0, 1), got " + format_param(p));
  }
  if (is_discrete()) {
    if (family() == Family::kTable) {
      const auto& pc = impl_->pcum;
      // Tolerate the last partial sum landing a hair under 1.
      auto it = std::lower_bound(pc.begin(), pc.end(), p);
      if (it == pc.end()) --it;
      return static_cast<double>(impl_->ks[static_cast<std::size_t>(it - pc.begin())]);
    }
    const long kmin = lattice_range(0.0).first;
    // Exponential then binary search for the smallest k with F(k) >= p.
    long lo = kmin - 1;
    long step = 1;
    long hi = kmin;
    while (cdf(static_cast<double>(hi)) < p) {
      lo = hi;
      hi += step;
      step *= 2;
      if (step > (1L << 40)) throw DomainError("quantile: failed to bracket discrete quantile");
    }
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      if (cdf(static_cast<double>(mid)) >= p) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return static_cast<double>(hi);
  }

  const Interval sup = support();
  double lo = sup.lo;
  double hi = sup.hi;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    // Expand outward from a finite anchor until F(lo) < p <= F(hi).
    double anchor = 0.0;
    if (std::isfinite(lo)) {
      anchor = lo;
    } else if (std::isfinite(hi)) {
      anchor = hi;
    } else if (family() != Family::kMixture && family() != Family::kStudentT) {
      anchor = params()[0];  // location parameter
    }
    double span = 1.0;
    if (!std::isfinite(lo)) {
      lo = anchor - span;
      while (cdf(lo) >= p) {
        span *= 2.0;
        lo = anchor - span;
        if (!std::isfinite(lo)) throw DomainError("quantile: failed to bracket lower end");
      }
    }
    span = 1.0;
    if (!std::isfinite(hi)) {
      hi = std::max(anchor, lo) + span;
      while (cdf(hi) < p) {
        span *= 2.0;
        hi = std::max(anchor, lo) + span;
        if (!std::isfinite(hi)) throw DomainError("quantile: failed to bracket upper end");
      }
    }
  }
  for (int iter = 0; iter < 400; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double tol = std::max(kQuantileTol, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(mid));
    if (hi - lo <= tol || mid <= lo || mid >= hi) break;
    if (cdf(mid) >= p) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

Interval Distribution::effective_support(double eps) const {
  Interval s = support();
  if (!std::isfinite(s.lo)) s.lo = quantile(eps);
  if (!std::isfinite(s.hi)) s.hi = quantile(1.0 - eps);
  return s;
}

std::pair<long, long> Distribution::lattice_range(double tail) const {
  if (!is_discrete()) throw KindMismatchError("lattice_range requested for a continuous distribution");
  switch (family()) {
    case Family::kTable:
      return {impl_->ks.front(), impl_->ks.back()};
    case Family::kMixture: {
      long lo = std::numeric_limits<long>::max();
      long hi = std::numeric_limits<long>::min();
      for (const auto& c : components()) {
        const auto [l, h] = c.dist.lattice_range(tail);
        lo = std::min(lo, l);
        hi = std::max(hi, h);
      }
      return {lo, hi};
    }
    default: {
      long k = 0;
      if (tail <= 0.0) return {0, std::numeric_limits<long>::max()};
      while (sf(static_cast<double>(k)) >= tail) ++k;
      return {0, k};
    }
  }
}

PmfTable Distribution::to_pmf_table(double tail) const {
  if (!is_discrete()) throw KindMismatchError("pmf table requested for a continuous distribution");
  if (family() == Family::kTable) {
    PmfTable t;
    t.ks = impl_->ks;
    t.ps = impl_->ps;
    return t;
  }
  const auto [lo, hi] = lattice_range(tail);
  PmfTable t;
  double total = 0.0;
  for (long k = lo; k <= hi; ++k) {
    const double p = pmf(k);
    if (p <= 0.0) continue;
    t.ks.push_back(k);
    t.ps.push_back(p);
    total += p;
  }
  t.dropped_tail_mass = std::max(0.0, 1.0 - total);
  for (auto& p : t.ps) p /= total;
  return t;
}

std::string Distribution::to_string() const {
  std::string name;
  switch (family()) {
    case Family::kNormal: name = "normal"; break;
    case Family::kUniform: name = "uniform"; break;
    case Family::kLogistic: name = "logistic"; break;
    case Family::kDoubleExponential: name = "laplace"; break;
    case Family::kWeibull: name = "weibull"; break;
    case Family::kGamma: name = "gamma"; break;
    case Family::kLognormal: name = "lognormal"; break;
    case Family::kCauchy: name = "cauchy"; break;
    case Family::kStudentT: name = "t"; break;
    case Family::kGeometric: name = "geometric"; break;
    case Family::kPoisson: name = "poisson"; break;
    case Family::kMixture: {
      std::string s = "mixture:";
      for (std::size_t i = 0; i < components().size(); ++i) {
        if (i) s += "|";
        s += format_param(components()[i].weight) + "*" + components()[i].dist.to_string();
      }
      return s;
    }
    case Family::kTable:
      if (is_discrete()) return "pmf-table[" + std::to_string(impl_->ks.size()) + "]";
      return std::string(table_interp() == TableInterp::kStep ? "step" : "tabulated") + "-density[" +
             std::to_string(impl_->xs.size()) + "]";
  }
  name += ":";
  for (std::size_t i = 0; i < params().size(); ++i) {
    if (i) name += ",";
    name += format_param(params()[i]);
  }
  return name;
}

const char* to_string(Family family) {
  switch (family) {
    case Family::kNormal: return "normal";
    case Family::kUniform: return "uniform";
    case Family::kLogistic: return "logistic";
    case Family::kDoubleExponential: return "double-exponential";
    case Family::kWeibull: return "weibull";
    case Family::kGamma: return "gamma";
    case Family::kLognormal: return "lognormal";
    case Family::kCauchy: return "cauchy";
    case Family::kStudentT: return "student-t";
    case Family::kGeometric: return "geometric";
    case Family::kPoisson: return "poisson";
    case Family::kMixture: return "mixture";
    case Family::kTable: return "table";
  }
  return "unknown";
}

const char* to_string(DistKind kind) {
  switch (kind) {
    case DistKind::kContinuousParametric: return "continuous-parametric";
    case DistKind::kDiscretePmf: return "discrete-pmf";
    case DistKind::kTabulatedDensity: return "tabulated-density";
  }
  return "unknown";
}

}  // namespace uo
