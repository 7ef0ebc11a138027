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

#include "uo/discrete_embed.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "uo/errors.hpp"

namespace uo {

namespace {

// Dense p(k) for k in [first, first + size).
struct DenseTable {
  long first = 0;
  std::vector<double> p;

  double at(long k) const {
    if (k < first || k >= first + static_cast<long>(p.size())) return 0.0;
    return p[static_cast<std::size_t>(k - first)];
  }
};

DenseTable densify(const PmfTable& pmf) {
  if (pmf.ks.empty()) throw DomainError("pmf table is empty");
  DenseTable t;
  t.first = pmf.ks.front();
  t.p.assign(static_cast<std::size_t>(pmf.ks.back() - pmf.ks.front() + 1), 0.0);
  for (std::size_t i = 0; i < pmf.ks.size(); ++i) t.p[static_cast<std::size_t>(pmf.ks[i] - t.first)] = pmf.ps[i];
  return t;
}

}  // namespace

Distribution embed(const PmfTable& pmf) {
  const DenseTable t = densify(pmf);
  std::vector<double> xs(t.p.size() + 1);
  std::vector<double> ys(t.p.size() + 1, 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = static_cast<double>(t.first) + static_cast<double>(i) - 0.5;
  for (std::size_t i = 0; i < t.p.size(); ++i) ys[i] = t.p[i];
  return Distribution::tabulated(std::move(xs), std::move(ys), TableInterp::kStep);
}

LinkCheck link_check_detail(const PmfTable& pmf, long a, long b) {
  if (a > b) throw DomainError("link_check: need a <= b");
  const Distribution x = Distribution::from_pmf(pmf);
  const Distribution y = embed(pmf);
  const double lo = static_cast<double>(a);
  const double hi = static_cast<double>(b);
  // Closed window [a, b] for X; a one-point window is widened inside the
  // lattice gap so the Interval stays proper.
  const TruncatedMoments mx = truncated_moments_oracle(x, {lo - 0.25, hi + 0.25});
  const TruncatedMoments my = truncated_moments_oracle(y, {lo - 0.5, hi + 0.5});
  LinkCheck out;
  out.discrete_mass = mx.mass;
  out.discrete_mean = mx.mean;
  out.discrete_variance = mx.variance;
  out.embedded_mass = my.mass;
  out.embedded_mean = my.mean;
  out.embedded_variance = my.variance;
  out.residual = mx.variance - my.variance + 1.0 / 12.0;
  return out;
}

double link_check(const PmfTable& pmf, long a, long b) { return link_check_detail(pmf, a, b).residual; }

MonotonicityReport discrete_monotonicity(const PmfTable& pmf, long lo, long hi, double tol,
                                         SweepDirection direction) {
  if (lo > hi) throw DomainError("discrete_monotonicity: need lo <= hi");
  if (!(tol > 0.0)) throw DomainError("discrete_monotonicity: tolerance must be positive");
  const DenseTable t = densify(pmf);
  const std::size_t n = static_cast<std::size_t>(hi - lo + 1);

  MonotonicityReport rep;
  rep.claim = "conditional variance is partially monotonic over integer windows";
  rep.tolerance = tol;
  rep.grid_spec = "all integer sub-intervals of [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
  if (pmf.dropped_tail_mass > 0.0) {
    rep.grid_spec += ", table truncated at k = " + std::to_string(pmf.ks.back());
  }

  // var[i][j] for [lo + i, lo + j], j >= i.
  std::vector<std::vector<std::optional<double>>> var(n, std::vector<std::optional<double>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double m0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    for (std::size_t j = i; j < n; ++j) {
      const double p = t.at(lo + static_cast<long>(j));
      const double d = static_cast<double>(j - i);
      m0 += p;
      s1 += p * d;
      s2 += p * d * d;
      if (m0 > kDefaultMassFloor) {
        const double m1 = s1 / m0;
        var[i][j] = std::max(0.0, s2 / m0 - m1 * m1);
      } else {
        ++rep.skipped;
      }
    }
  }

  const auto at = [lo](std::size_t i) { return static_cast<double>(lo + static_cast<long>(i)); };
  if (direction != SweepDirection::kLower) {
    for (std::size_t i = 0; i < n; ++i) {
      std::optional<std::size_t> prev;
      for (std::size_t j = i; j < n; ++j) {
        if (!var[i][j]) continue;
        if (prev) {
          const double inner = *var[i][*prev];
          const double outer = *var[i][j];
          if (outer - inner < -tol) rep.add_witness({at(i), at(*prev), at(i), at(j), inner, outer, outer - inner});
        }
        prev = j;
      }
    }
  }
  if (direction != SweepDirection::kUpper) {
    for (std::size_t j = 0; j < n; ++j) {
      std::optional<std::size_t> prev;  // larger i = inner
      for (std::size_t ii = j + 1; ii-- > 0;) {
        if (!var[ii][j]) continue;
        if (prev) {
          const double inner = *var[*prev][j];
          const double outer = *var[ii][j];
          if (outer - inner < -tol) rep.add_witness({at(*prev), at(j), at(ii), at(j), inner, outer, outer - inner});
        }
        prev = ii;
      }
    }
  }
  return rep;
}

}  // namespace uo
