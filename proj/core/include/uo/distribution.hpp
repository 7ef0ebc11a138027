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

#ifndef UO_DISTRIBUTION_HPP_
#define UO_DISTRIBUTION_HPP_

#include <cstddef>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace uo {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Tail probability at which infinite supports are clipped for internal grids.
inline constexpr double kTailEpsilon = 1e-10;

// Ordered pair lo < hi over the extended reals.
struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  // Throws DomainError unless lo < hi (and neither is NaN).
  static Interval make(double lo, double hi);

  double width() const { return hi - lo; }
  bool is_finite() const;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

enum class DistKind { kContinuousParametric, kDiscretePmf, kTabulatedDensity };

enum class Family {
  kNormal,
  kUniform,
  kLogistic,
  kDoubleExponential,
  kWeibull,
  kGamma,
  kLognormal,
  kCauchy,
  kStudentT,
  kGeometric,
  kPoisson,
  kMixture,
  kTable,  // explicit density grid or pmf table
};

// How a tabulated density is evaluated between abscissae.
enum class TableInterp {
  kLinear,  // piecewise linear through (x_i, y_i)
  kStep,    // y_i on (x_i, x_{i+1}]; the last ordinate is ignored
};

// Probability mass function on an integer lattice.
struct PmfTable {
  std::vector<long> ks;  // strictly increasing
  std::vector<double> ps;
  // Mass discarded when an infinite support was truncated (0 otherwise).
  double dropped_tail_mass = 0.0;

  // Validates: equal nonzero lengths, ks strictly increasing, ps >= 0,
  // |sum(ps) - 1| <= 1e-12. Throws DomainError.
  static PmfTable make(std::vector<long> ks, std::vector<double> ps);

  std::size_t size() const { return ks.size(); }
};

struct MixtureComponent;

// Immutable univariate distribution: parametric family, mixture, tabulated
// density or pmf table. Cheap to copy (shared immutable state), safe to use
// from several threads.
class Distribution {
 public:
  static Distribution normal(double mean, double sd);
  static Distribution uniform(double lo, double hi);
  static Distribution logistic(double location = 0.0, double scale = 1.0);
  static Distribution double_exponential(double location = 0.0, double scale = 1.0);
  // Density c x^{c-1} exp(-x^c) on x > 0 (before scaling).
  static Distribution weibull(double shape, double scale = 1.0);
  // Density x^{c-1} exp(-x) / Gamma(c) on x > 0 (before scaling).
  static Distribution gamma(double shape, double scale = 1.0);
  static Distribution lognormal(double meanlog = 0.0, double sdlog = 1.0);
  static Distribution cauchy(double location = 0.0, double scale = 1.0);
  static Distribution student_t(double dof);
  // p (1-p)^k on k = 0, 1, 2, ...
  static Distribution geometric(double p);
  static Distribution poisson(double lambda);
  // Weights must be >= 0 and sum to 1 within 1e-12; components must agree
  // on discreteness.
  static Distribution mixture(std::vector<MixtureComponent> components);
  // Density ordinates are renormalised so the interpolant integrates to 1.
  static Distribution tabulated(std::vector<double> xs, std::vector<double> density,
                                TableInterp interp = TableInterp::kLinear);
  static Distribution from_pmf(PmfTable table);

  DistKind kind() const;
  Family family() const;
  const std::vector<double>& params() const;
  bool is_discrete() const;

  // Closed support hull over the extended reals.
  Interval support() const;

  double pdf(double x) const;  // KindMismatchError on discrete kinds
  double pmf(long k) const;    // KindMismatchError on continuous kinds
  double cdf(double x) const;  // P(X <= x), right-continuous
  double sf(double x) const;   // P(X > x)
  // P(lo < X <= hi), evaluated on whichever tail avoids cancellation.
  double prob(double lo, double hi) const;

  // inf{x : F(x) >= p}. Bisection (abs tol 1e-10) for continuous kinds,
  // exact step inversion for discrete kinds. DomainError unless 0 < p < 1.
  double quantile(double p) const;

  // Support clipped to [Q(eps), Q(1 - eps)] on infinite sides.
  Interval effective_support(double eps = kTailEpsilon) const;

  // Abscissae where the density has kinks, jumps or sharp features; used
  // to split quadrature panels. Sorted, unique.
  std::vector<double> knots() const;

  // Discrete kinds: smallest and largest k carrying mass above `tail`.
  std::pair<long, long> lattice_range(double tail = 1e-14) const;
  // Discrete kinds: pmf restricted to lattice_range(tail), renormalised.
  PmfTable to_pmf_table(double tail = 1e-14) const;

  const std::vector<MixtureComponent>& components() const;
  // Tabulated kinds only.
  const std::vector<double>& table_xs() const;
  const std::vector<double>& table_ys() const;
  TableInterp table_interp() const;

  // Round-trippable mini-language form, e.g. "normal:0,1".
  std::string to_string() const;

  struct Impl;

 private:
  explicit Distribution(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

struct MixtureComponent {
  double weight = 0.0;
  Distribution dist;
};

const char* to_string(Family family);
const char* to_string(DistKind kind);

}  // namespace uo

#endif  // UO_DISTRIBUTION_HPP_
