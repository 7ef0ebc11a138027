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

#ifndef UO_DIFF_UNCERTAINTY_HPP_
#define UO_DIFF_UNCERTAINTY_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "uo/distribution.hpp"
#include "uo/logconcavity.hpp"
#include "uo/orders.hpp"
#include "uo/quad.hpp"

namespace uo {

// U = X1 - X2 for independent copies conditioned on lo < X1, X2 < hi. The
// box (0, b) is the default; `b` overloads use it.
inline constexpr std::size_t kDefaultDiffGridSize = 4097;
inline constexpr double kDiffInnerTol = 1e-14;
inline constexpr double kDiffOuterTol = 1e-11;

// g(u) = int_{lo+u}^{hi} f(x) f(x - u) dx / P(lo < X < hi)^2 for u >= 0,
// g(-u) = g(u), 0 for |u| >= hi - lo. DegenerateIntervalError if the box has
// mass below the floor; KindMismatchError for discrete kinds.
double diff_density_at(const Distribution& dist, Interval box, double u, double tol = kDiffInnerTol);

struct DiffDensity {
  Interval box;
  std::vector<double> u_grid;    // symmetric, odd length, contains 0
  std::vector<double> g_values;
  double normalization = 0.0;    // Simpson integral of g over the grid
  ConcavityStatus parent_log_concave = ConcavityStatus::kInconclusive;

  double b() const { return box.hi; }
  GridFunction as_grid() const { return GridFunction(u_grid, g_values); }
};

// g on n_u equally spaced points of [-(hi - lo), hi - lo]; n_u is rounded up to
// an odd count >= 3. The parent density is sampled on the box and tested for
// log-concavity; a failure is recorded, not thrown.
DiffDensity diff_density(const Distribution& dist, Interval box, std::size_t n_u = kDefaultDiffGridSize);
DiffDensity diff_density(const Distribution& dist, double b, std::size_t n_u = kDefaultDiffGridSize);

// g nonincreasing on u in [0, hi - lo]: g(u_i) - g(u_{i+1}) >= -tol.
OrderVerdict g_monotone_check(const DiffDensity& dd, double tol);

// Matrix K(u_i, b_j) = g(u_i; b_j) over boxes (0, b_j).
Kernel2D diff_density_kernel(const Distribution& dist, std::span<const double> u_grid,
                             std::span<const double> b_grid);

// d/du g(u; b1) * g(u; b2) <= g(u; b1) * d/du g(u; b2) + tol, derivatives by
// central differences with step rel_step * b1 (forward difference when u is
// within one step of 0).
struct SlopeCrossCheck {
  Verdict verdict = Verdict::kHolds;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  double step = 0.0;
};
SlopeCrossCheck slope_cross_check(const Distribution& dist, double u, double b1, double b2, double tol,
                                  double rel_step = 1e-5);

struct IntegralValue {
  double value = 0.0;
  double box_hi = 0.0;
  double error_estimate = 0.0;
};
using EntropyValue = IntegralValue;

// E phi(U) = int phi(u) g(u) du by nested adaptive quadrature.
IntegralValue expected_phi(const Distribution& dist, Interval box, const RealFn& phi);
IntegralValue expected_phi(const Distribution& dist, double b, const RealFn& phi);

// -int g log g (nats); g below 1e-300 contributes 0.
EntropyValue shannon_entropy_u(const Distribution& dist, Interval box);
EntropyValue shannon_entropy_u(const Distribution& dist, double b);

// -int g(.; b1) log g(.; b2). DomainError if g(.; b2) vanishes where g(.; b1)
// does not.
IntegralValue cross_entropy_u(const Distribution& dist, double b1, double b2);

// int g(.; b1) log(g(.; b1) / g(.; b2)).
IntegralValue kl_divergence_u(const Distribution& dist, double b1, double b2);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = true;  // lhs <= rhs + tol
};

// For 0 < b1 <= b2, with H(b) the entropy and C = cross_entropy_u(b1, b2):
//   cross_vs_entropy:  C <= H(b2)
//   entropy_vs_cross:  H(b1) <= C
//   entropy_growth:    H(b1) <= H(b2)
struct EntropyChain {
  double b1 = 0.0;
  double b2 = 0.0;
  InequalityCheck cross_vs_entropy;
  InequalityCheck entropy_vs_cross;
  InequalityCheck entropy_growth;
  double tolerance = 0.0;

  bool all_hold() const { return cross_vs_entropy.holds && entropy_vs_cross.holds && entropy_growth.holds; }
};
EntropyChain entropy_inequality_chain(const Distribution& dist, double b1, double b2, double tol);

}  // namespace uo

#endif  // UO_DIFF_UNCERTAINTY_HPP_
