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

#ifndef UO_ORDERS_HPP_
#define UO_ORDERS_HPP_

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uo/distribution.hpp"
#include "uo/quad.hpp"
#include "uo/trunc_moments.hpp"

namespace uo {

enum class OrderKind { kDispersion, kLikelihoodRatio, kStochastic, kTp2, kMonotone };
const char* to_string(OrderKind k);

// Probe points and the values compared there. margin < 0 is a violation.
struct OrderWitness {
  std::vector<double> probes;
  std::vector<double> values;
  double margin = 0.0;
};

struct OrderVerdict {
  OrderKind order = OrderKind::kStochastic;
  Verdict verdict = Verdict::kHolds;
  std::optional<OrderWitness> witness;  // worst probe; present iff kFails
  std::string grid_spec;
  double tolerance = 0.0;
};

using QuantileFn = std::function<double(double)>;
using CdfFn = std::function<double(double)>;

// F dominates G in dispersion: F^-1(beta) - F^-1(alpha) >= G^-1(beta) - G^-1(alpha) - tol
// for every alpha < beta in alphas. Witness probes {alpha, beta}, values
// {F spread, G spread}.
OrderVerdict dispersion_order(const QuantileFn& qf, const QuantileFn& qg, std::span<const double> alphas,
                              double tol);
OrderVerdict dispersion_order(const Distribution& f, const Distribution& g, std::span<const double> alphas,
                              double tol);

// Quantile and CDF of X conditioned on (iv.lo, iv.hi).
QuantileFn truncated_quantile(const Distribution& dist, Interval iv);
CdfFn truncated_cdf(const Distribution& dist, Interval iv);

// num/den nondecreasing along the shared grid: each step r0 -> r1 must have
// (r1 - r0) / max(1, |r0|) >= -tol. Where den is 0 and
// num positive the ratio is +inf; where both are 0 the point is skipped.
// Throws DomainError if the grids differ or the supports are disjoint.
OrderVerdict likelihood_ratio_order(const GridFunction& num, const GridFunction& den, double tol);

// Kernel values K(xs[i], ys[j]) stored row-major, values[i * ys.size() + j].
struct Kernel2D {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * ys.size() + j]; }
};

// K(x1,y1) K(x2,y2) >= K(x1,y2) K(x2,y1) - tol for x1 < x2, y1 < y2. Adjacent
// minors suffice when every entry is positive; with zero entries all pairs
// are checked. Witness probes {x1, x2, y1, y2}, values {K11 K22, K12 K21}.
OrderVerdict tp2_check(const Kernel2D& k, double tol);

// F stochastically smaller than G: F(x) >= G(x) - tol on x_grid.
OrderVerdict stochastic_order(const CdfFn& f, const CdfFn& g, std::span<const double> x_grid, double tol);
OrderVerdict stochastic_order(const Distribution& f, const Distribution& g, std::span<const double> x_grid,
                              double tol);

}  // namespace uo

#endif  // UO_ORDERS_HPP_
