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

#ifndef UO_TRUNC_MOMENTS_HPP_
#define UO_TRUNC_MOMENTS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uo/distribution.hpp"
#include "uo/quad.hpp"

namespace uo {

inline constexpr double kDefaultMassFloor = 1e-12;

enum class Verdict { kHolds, kFails };
const char* to_string(Verdict v);

enum class MomentRoute {
  kFormula,  // b - F1/F and 2 F2/F - F1^2/F^2 from antiderivatives of the CDF
  kOracle,   // direct integration of x f(x), x^2 f(x) (or summation)
};
const char* to_string(MomentRoute r);

struct MomentOptions {
  double mass_floor = kDefaultMassFloor;
  double tol = kDefaultQuadTol;
};

// Mean and variance of X conditioned on an interval.
struct TruncatedMoments {
  double mass = 0.0;  // P(X in interval)
  double mean = 0.0;
  double variance = 0.0;
  MomentRoute route = MomentRoute::kOracle;
  double error_estimate = 0.0;  // rough bound on |variance error|
};

// Direct route. Continuous kinds integrate x f and x^2 f over (lo, hi);
// discrete kinds sum over the integers in [lo, hi]. Infinite endpoints are
// clipped at the kTailEpsilon quantiles. Throws DegenerateIntervalError if
// the mass is below the floor.
TruncatedMoments truncated_moments_oracle(const Distribution& dist, Interval iv,
                                          const MomentOptions& opts = {});

// Antiderivative route on (a, b) for continuous kinds:
//   Ft(x) = F(x) - F(a),  F1 = int_a Ft,  F2 = int_a F1,
//   mean = b - F1(b)/Ft(b),  variance = 2 F2(b)/Ft(b) - F1(b)^2/Ft(b)^2.
// KindMismatchError for discrete kinds.
TruncatedMoments truncated_variance_formula(const Distribution& dist, double a, double b,
                                            const MomentOptions& opts = {});

// Formula route for a fixed lower end and an increasing list of upper ends,
// sharing one cumulative pass. Entries with mass below the floor are empty.
std::vector<std::optional<TruncatedMoments>> truncated_variance_profile(const Distribution& dist, double a,
                                                                        std::span<const double> b_grid,
                                                                        const MomentOptions& opts = {});

// One violation of partial monotonicity: the inner interval (a1, b1) is
// contained in the outer (a2, b2) but var1 > var2. margin = var2 - var1.
struct MonotonicityWitness {
  double a1 = 0.0;
  double b1 = 0.0;
  double a2 = 0.0;
  double b2 = 0.0;
  double var1 = 0.0;
  double var2 = 0.0;
  double margin = 0.0;
};

// verdict == kFails exactly when some witness has margin < -tolerance; only
// such witnesses are recorded.
struct MonotonicityReport {
  std::string claim;
  Verdict verdict = Verdict::kHolds;
  std::vector<MonotonicityWitness> witnesses;
  double tolerance = 0.0;
  std::string grid_spec;
  std::size_t skipped = 0;  // degenerate cells left out of the comparison

  void add_witness(const MonotonicityWitness& w);
};

enum class GridSpacing { kQuantile, kUniform };
enum class SweepDirection {
  kBoth,
  kUpper,  // only "nondecreasing in b"
  kLower,  // only "nonincreasing in a"
};

struct SweepGrid {
  std::vector<double> a_values;  // strictly increasing
  std::vector<double> b_values;  // strictly increasing
  std::string description;
};

struct SweepOptions {
  GridSpacing spacing = GridSpacing::kQuantile;
  SweepDirection direction = SweepDirection::kBoth;
  MomentRoute route = MomentRoute::kFormula;
  MomentOptions moments;
  // Merged into both endpoint grids (points outside the window are dropped).
  std::vector<double> extra_points;
};

// n_a lower and n_b upper endpoints spanning the window (clipped to the
// effective support), equally spaced in probability or in x.
SweepGrid make_sweep_grid(const Distribution& dist, Interval window, std::size_t n_a, std::size_t n_b,
                          GridSpacing spacing = GridSpacing::kQuantile,
                          std::span<const double> extra_points = {});

// Evaluates var(X | a_i < X < b_j) for all a_i < b_j and checks it is
// nondecreasing in b (a fixed) and nonincreasing in a (b fixed), comparing
// neighbouring grid cells. Discrete distributions are rejected here; use
// discrete_monotonicity.
MonotonicityReport monotonicity_sweep(const Distribution& dist, Interval window, std::size_t n_a,
                                      std::size_t n_b, double tol, const SweepOptions& opts = {});
MonotonicityReport monotonicity_sweep(const Distribution& dist, const SweepGrid& grid, double tol,
                                      const SweepOptions& opts = {});

// var(X | c - w < X < c + w) nondecreasing in the half-width w.
MonotonicityReport symmetric_sweep(const Distribution& dist, double center, std::span<const double> half_widths,
                                   double tol, const MomentOptions& opts = {});

}  // namespace uo

#endif  // UO_TRUNC_MOMENTS_HPP_
