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

#ifndef UO_LOGCONCAVITY_HPP_
#define UO_LOGCONCAVITY_HPP_

#include <cstddef>
#include <optional>
#include <span>

#include "uo/distribution.hpp"
#include "uo/quad.hpp"
#include "uo/trunc_moments.hpp"

namespace uo {

inline constexpr double kDefaultConcavityTol = 1e-7;

enum class ConcavityStatus { kLogConcave, kNotLogConcave, kInconclusive };
const char* to_string(ConcavityStatus s);

// Worst triple of a concavity test. second_diff is twice the amount by which
// the middle log-value falls below the chord of its neighbours; positive means
// locally log-convex.
struct ConcavityWitness {
  double x_minus = 0.0;
  double x_0 = 0.0;
  double x_plus = 0.0;
  double second_diff = 0.0;
};

struct ConcavityVerdict {
  ConcavityStatus verdict = ConcavityStatus::kInconclusive;
  std::optional<ConcavityWitness> witness;  // present iff kNotLogConcave
  double tolerance = 0.0;
  std::size_t excluded_points = 0;  // grid points with h <= 0
};

// Second differences of log h over consecutive triples of positive points.
// Each triple is compared with tol * max(1, |log h| on the triple). Fewer than
// three positive points is inconclusive.
ConcavityVerdict is_log_concave(const GridFunction& h, double tol = kDefaultConcavityTol);

// G(b) = int_a^b (b - x) (F(x) - F(a)) dx on b_grid, i.e. the second
// antiderivative of the CDF re-based at a.
GridFunction upper_endpoint_integral(const Distribution& dist, double a, std::span<const double> b_grid);

// K(a) = int_a^b (x - a) (F(b) - F(x)) dx on a_grid (any order; returned
// increasing in a).
GridFunction lower_endpoint_integral(const Distribution& dist, std::span<const double> a_grid, double b);

// Log-concavity of G in b: equivalent to var(X | a < X < b) nondecreasing in b.
ConcavityVerdict upper_endpoint_condition(const Distribution& dist, double a, std::span<const double> b_grid,
                                          double tol = kDefaultConcavityTol);

// Log-concavity of K in a: equivalent to var(X | a < X < b) nonincreasing in a.
ConcavityVerdict lower_endpoint_condition(const Distribution& dist, std::span<const double> a_grid, double b,
                                          double tol = kDefaultConcavityTol);

// D(b) = F1(b)^2 - Ft(b) F2(b) with Ft, F1, F2 re-based at a. The variance
// slope is f(b) D(b) / Ft(b)^3, so D >= 0 is the condition for the variance
// to grow with b. Witnesses are grid points with D < -tol (a1 = a2 = a,
// b1 = b2 = b, var1 = 0, var2 = margin = D).
struct SlopeSignSample {
  double b = 0.0;
  double d = 0.0;
};
std::vector<SlopeSignSample> variance_slope_values(const Distribution& dist, double a,
                                                   std::span<const double> b_grid);
MonotonicityReport variance_slope_sign_check(const Distribution& dist, double a, std::span<const double> b_grid,
                                             double tol = 1e-9);

}  // namespace uo

#endif  // UO_LOGCONCAVITY_HPP_
