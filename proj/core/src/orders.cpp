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

#include "uo/orders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uo/errors.hpp"

namespace uo {

namespace {

constexpr double kPosInf = std::numeric_limits<double>::infinity();

void keep_worst(std::optional<OrderWitness>& worst, OrderWitness w) {
  if (!worst || w.margin < worst->margin) worst = std::move(w);
}

OrderVerdict finish(OrderKind kind, std::optional<OrderWitness> worst, double tol, std::string grid) {
  OrderVerdict v;
  v.order = kind;
  v.tolerance = tol;
  v.grid_spec = std::move(grid);
  if (worst && worst->margin < -tol) {
    v.verdict = Verdict::kFails;
    v.witness = std::move(worst);
  }
  return v;
}

}  // namespace

const char* to_string(OrderKind k) {
  switch (k) {
    case OrderKind::kDispersion:
      return "dispersion";
    case OrderKind::kLikelihoodRatio:
      return "likelihood-ratio";
    case OrderKind::kStochastic:
      return "stochastic";
    case OrderKind::kTp2:
      return "tp2";
    case OrderKind::kMonotone:
      break;
  }
  return "monotone";
}

OrderVerdict dispersion_order(const QuantileFn& qf, const QuantileFn& qg, std::span<const double> alphas,
                              double tol) {
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] < 1.0)) throw DomainError("dispersion_order: levels must lie in (0, 1)");
    if (i > 0 && !(alphas[i] > alphas[i - 1])) throw DomainError("dispersion_order: levels must increase");
  }
  std::vector<double> f(alphas.size());
  std::vector<double> g(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    f[i] = qf(alphas[i]);
    g[i] = qg(alphas[i]);
  }
  std::optional<OrderWitness> worst;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    for (std::size_t j = i + 1; j < alphas.size(); ++j) {
      const double sf = f[j] - f[i];
      const double sg = g[j] - g[i];
      keep_worst(worst, {{alphas[i], alphas[j]}, {sf, sg}, sf - sg});
    }
  }
  return finish(OrderKind::kDispersion, std::move(worst), tol,
                std::to_string(alphas.size()) + " probability levels, all pairs");
}

OrderVerdict dispersion_order(const Distribution& f, const Distribution& g, std::span<const double> alphas,
                              double tol) {
  return dispersion_order([&f](double p) { return f.quantile(p); }, [&g](double p) { return g.quantile(p); },
                          alphas, tol);
}

QuantileFn truncated_quantile(const Distribution& dist, Interval iv) {
  iv = Interval::make(iv.lo, iv.hi);
  const double flo = dist.cdf(iv.lo);
  const double mass = dist.prob(iv.lo, iv.hi);
  if (!(mass > 0.0)) throw DegenerateIntervalError("truncated_quantile: zero-mass interval", mass);
  return [dist, iv, flo, mass](double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("truncated_quantile: level must lie in (0, 1)");
    return std::clamp(dist.quantile(flo + p * mass), iv.lo, iv.hi);
  };
}

CdfFn truncated_cdf(const Distribution& dist, Interval iv) {
  iv = Interval::make(iv.lo, iv.hi);
  const double mass = dist.prob(iv.lo, iv.hi);
  if (!(mass > 0.0)) throw DegenerateIntervalError("truncated_cdf: zero-mass interval", mass);
  return [dist, iv, mass](double x) {
    if (x <= iv.lo) return 0.0;
    if (x >= iv.hi) return 1.0;
    return std::clamp(dist.prob(iv.lo, x) / mass, 0.0, 1.0);
  };
}

OrderVerdict likelihood_ratio_order(const GridFunction& num, const GridFunction& den, double tol) {
  if (num.xs() != den.xs()) throw DomainError("likelihood_ratio_order: functions must share a grid");
  std::vector<double> xs;
  std::vector<double> ratio;
  bool overlap = false;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const double n = num.ys()[i];
    const double d = den.ys()[i];
    if (n < 0.0 || d < 0.0) throw DomainError("likelihood_ratio_order: densities must be nonnegative");
    if (d > 0.0) {
      xs.push_back(num.xs()[i]);
      ratio.push_back(n / d);
      if (n > 0.0) overlap = true;
    } else if (n > 0.0) {
      xs.push_back(num.xs()[i]);
      ratio.push_back(kPosInf);
    }
  }
  if (!overlap) throw DomainError("likelihood_ratio_order: supports are disjoint");

  std::optional<OrderWitness> worst;
  for (std::size_t i = 1; i < ratio.size(); ++i) {
    const double r0 = ratio[i - 1];
    const double r1 = ratio[i];
    if (std::isinf(r1)) continue;
    const double margin = std::isinf(r0) ? -kPosInf : (r1 - r0) / std::max(1.0, std::abs(r0));
    keep_worst(worst, {{xs[i - 1], xs[i]}, {r0, r1}, margin});
  }
  return finish(OrderKind::kLikelihoodRatio, std::move(worst), tol,
                std::to_string(num.size()) + " shared grid points, consecutive ratios");
}

OrderVerdict tp2_check(const Kernel2D& k, double tol) {
  const std::size_t nx = k.xs.size();
  const std::size_t ny = k.ys.size();
  if (k.values.size() != nx * ny) throw DomainError("tp2_check: values must have xs.size() * ys.size() entries");
  bool all_positive = true;
  for (double v : k.values) {
    if (v < 0.0) throw DomainError("tp2_check: kernel must be nonnegative");
    if (!(v > 1e-300)) all_positive = false;
  }
  std::optional<OrderWitness> worst;
  const auto probe = [&](std::size_t i1, std::size_t i2, std::size_t j1, std::size_t j2) {
    const double diag = k.at(i1, j1) * k.at(i2, j2);
    const double anti = k.at(i1, j2) * k.at(i2, j1);
    keep_worst(worst, {{k.xs[i1], k.xs[i2], k.ys[j1], k.ys[j2]}, {diag, anti}, diag - anti});
  };
  if (all_positive) {
    for (std::size_t i = 0; i + 1 < nx; ++i) {
      for (std::size_t j = 0; j + 1 < ny; ++j) probe(i, i + 1, j, j + 1);
    }
  } else {
    for (std::size_t i1 = 0; i1 < nx; ++i1) {
      for (std::size_t i2 = i1 + 1; i2 < nx; ++i2) {
        for (std::size_t j1 = 0; j1 < ny; ++j1) {
          for (std::size_t j2 = j1 + 1; j2 < ny; ++j2) probe(i1, i2, j1, j2);
        }
      }
    }
  }
  return finish(OrderKind::kTp2, std::move(worst), tol,
                std::to_string(nx) + "x" + std::to_string(ny) +
                    (all_positive ? " kernel, adjacent minors" : " kernel, all minors"));
}

OrderVerdict stochastic_order(const CdfFn& f, const CdfFn& g, std::span<const double> x_grid, double tol) {
  std::optional<OrderWitness> worst;
  for (double x : x_grid) {
    const double fx = f(x);
    const double gx = g(x);
    keep_worst(worst, {{x}, {fx, gx}, fx - gx});
  }
  return finish(OrderKind::kStochastic, std::move(worst), tol, std::to_string(x_grid.size()) + " probe points");
}

OrderVerdict stochastic_order(const Distribution& f, const Distribution& g, std::span<const double> x_grid,
                              double tol) {
  return stochastic_order([&f](double x) { return f.cdf(x); }, [&g](double x) { return g.cdf(x); }, x_grid, tol);
}

}  // namespace uo
