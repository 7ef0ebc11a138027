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

#ifndef UO_QUAD_HPP_
#define UO_QUAD_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace uo {

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr double kPanelQuadTol = 1e-12;
inline constexpr std::size_t kDefaultMaxEvals = 1'000'000;

using RealFn = std::function<double(double)>;

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  // False when the evaluation cap was hit before the tolerance was met.
  bool converged = true;
  std::size_t evaluations = 0;
};

struct QuadOptions {
  double tol = kDefaultQuadTol;  // absolute
  // 0 means max_evaluations().
  std::size_t max_evals = 0;
  // Interior points where the integrand has kinks or sharp features. Points
  // outside (a, b) are ignored.
  std::vector<double> breakpoints;
};

// Evaluation cap: 10^6, lowered by the UO_MAX_EVALS environment variable.
std::size_t max_evaluations();

// Globally adaptive 15-point Gauss-Kronrod quadrature on finite [a, b].
// Subdivides the panel with the largest error estimate until the summed
// estimate is <= tol or within twice the summed round-off floor, or the
// evaluation cap is reached (converged = false). a > b integrates backwards;
// non-finite limits throw DomainError.
QuadResult integrate(const RealFn& f, double a, double b, double tol = kDefaultQuadTol);
QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts);

enum class Interp { kLinear, kPchip };

// Real values on a strictly increasing abscissa grid with an interpolation
// rule. Evaluation outside [xs.front(), xs.back()] throws DomainError.
class GridFunction {
 public:
  GridFunction(std::vector<double> xs, std::vector<double> ys, Interp interp = Interp::kLinear);

  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  Interp interp() const { return interp_; }
  std::size_t size() const { return xs_.size(); }

  double operator()(double x) const;
  // Exact integral of the interpolant over [lo, hi] within the grid.
  double integral(double lo, double hi) const;

 private:
  double cell_integral(std::size_t i, double lo, double hi) const;

  std::vector<double> xs_;
  std::vector<double> ys_;
  Interp interp_;
  std::vector<double> slopes_;  // pchip derivatives at the knots
};

// H(grid[i]) = int_a^{grid[i]} g, accumulated panel by panel, each panel to
// opts.tol (default 1e-12). Requires grid strictly increasing and
// grid[0] >= a; throws DomainError otherwise.
GridFunction antiderivative(const RealFn& g, double a, std::span<const double> grid,
                            QuadOptions opts = {kPanelQuadTol, 0, {}});
// Same, integrating the interpolant of g exactly.
GridFunction antiderivative(const GridFunction& g, double a, std::span<const double> grid);

// First and second antiderivatives from a:
//   first(x)  = int_a^x g(t) dt
//   second(x) = int_a^x first(s) ds = int_a^x (x - t) g(t) dt
// accumulated across panels with
//   second(x) = second(p) + (x - p) first(p) + int_p^x (x - t) g(t) dt
// so no interpolation error enters the second antiderivative.
struct RepeatedAntiderivative {
  GridFunction first;
  GridFunction second;
  double abs_error_estimate = 0.0;
  bool converged = true;
};
RepeatedAntiderivative repeated_antiderivative(const RealFn& g, double a, std::span<const double> grid,
                                               QuadOptions opts = {kPanelQuadTol, 0, {}});

}  // namespace uo

#endif  // UO_QUAD_HPP_
