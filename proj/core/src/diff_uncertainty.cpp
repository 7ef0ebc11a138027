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

#include "uo/diff_uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uo/errors.hpp"
#include "uo/trunc_moments.hpp"

namespace uo {

namespace {

constexpr double kLogFloor = 1e-300;
constexpr std::size_t kParentSamples = 257;
constexpr std::size_t kMaxKnotPairs = 64;

struct Box {
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;
  std::vector<double> knots;  // parent knots strictly inside (lo, hi)

  double width() const { return hi - lo; }
};

Box make_box(const Distribution& dist, Interval box) {
  if (dist.is_discrete()) throw KindMismatchError("difference density needs a continuous distribution");
  box = Interval::make(box.lo, box.hi);
  const Interval eff = dist.effective_support();
  Box out;
  out.lo = std::isfinite(box.lo) ? box.lo : std::max(box.lo, eff.lo);
  out.hi = std::isfinite(box.hi) ? box.hi : std::min(box.hi, eff.hi);
  out.mass = dist.prob(out.lo, out.hi);
  if (!(out.mass >= kDefaultMassFloor)) {
    throw DegenerateIntervalError("difference density: box has mass below the floor", out.mass);
  }
  for (double k : dist.knots()) {
    if (k > out.lo && k < out.hi) out.knots.push_back(k);
  }
  return out;
}

double g_at(const Distribution& dist, const Box& box, double u, double tol) {
  u = std::abs(u);
  if (u >= box.width()) return 0.0;
  QuadOptions q;
  q.tol = tol * box.mass * box.mass;
  const double lo = box.lo + u;
  for (double k : box.knots) {
    if (k > lo && k < box.hi) q.breakpoints.push_back(k);
    if (k + u > lo && k + u < box.hi) q.breakpoints.push_back(k + u);
  }
  std::sort(q.breakpoints.begin(), q.breakpoints.end());
  const QuadResult r = integrate([&](double x) { return dist.pdf(x) * dist.pdf(x - u); }, lo, box.hi, q);
  return r.value / (box.mass * box.mass);
}

// Points in (0, width) where g may have a kink: pairwise knot differences.
std::vector<double> u_breakpoints(const Box& box) {
  std::vector<double> ks = box.knots;
  ks.push_back(box.lo);
  ks.push_back(box.hi);
  std::vector<double> out;
  if (ks.size() > kMaxKnotPairs) return out;
  for (double x : ks) {
    for (double y : ks) {
      const double d = x - y;
      if (d > 0.0 && d < box.width()) out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// int_0^width h(u, g(u)) du with the inner density evaluated on demand.
QuadResult outer_integral(const Distribution& dist, const Box& box, const std::function<double(double, double)>& h) {
  QuadOptions q;
  q.tol = kDiffOuterTol;
  q.breakpoints = u_breakpoints(box);
  return integrate([&](double u) { return h(u, g_at(dist, box, u, kDiffInnerTol)); }, 0.0, box.width(), q);
}

double x_log_x(double g) { return g < kLogFloor ? 0.0 : g * std::log(g); }

}  // namespace

double diff_density_at(const Distribution& dist, Interval box, double u, double tol) {
  return g_at(dist, make_box(dist, box), u, tol);
}

DiffDensity diff_density(const Distribution& dist, Interval box_iv, std::size_t n_u) {
  const Box box = make_box(dist, box_iv);
  if (n_u < 3) n_u = 3;
  if (n_u % 2 == 0) ++n_u;
  const std::size_t half = n_u / 2;
  const double w = box.width();
  const double h = w / static_cast<double>(half);

  DiffDensity dd;
  dd.box = {box.lo, box.hi};
  dd.u_grid.resize(n_u);
  dd.g_values.resize(n_u);
  for (std::size_t k = 0; k <= half; ++k) {
    const double u = k == half ? w : h * static_cast<double>(k);
    const double g = g_at(dist, box, u, kDiffInnerTol);
    dd.u_grid[half + k] = u;
    dd.u_grid[half - k] = -u;
    dd.g_values[half + k] = g;
    dd.g_values[half - k] = g;
  }
  double s = 0.0;
  for (std::size_t i = 0; i + 2 < n_u; i += 2) {
    s += (dd.g_values[i] + 4.0 * dd.g_values[i + 1] + dd.g_values[i + 2]) * h / 3.0;
  }
  dd.normalization = s;

  std::vector<double> xs(kParentSamples);
  std::vector<double> fs(kParentSamples);
  for (std::size_t i = 0; i < kParentSamples; ++i) {
    xs[i] = box.lo + (static_cast<double>(i) + 0.5) * w / static_cast<double>(kParentSamples);
    fs[i] = dist.pdf(xs[i]);
  }
  dd.parent_log_concave = is_log_concave(GridFunction(std::move(xs), std::move(fs))).verdict;
  return dd;
}

DiffDensity diff_density(const Distribution& dist, double b, std::size_t n_u) {
  return diff_density(dist, Interval{0.0, b}, n_u);
}

OrderVerdict g_monotone_check(const DiffDensity& dd, double tol) {
  const std::size_t half = dd.u_grid.size() / 2;
  OrderVerdict v;
  v.order = OrderKind::kMonotone;
  v.tolerance = tol;
  std::ostringstream os;
  os.precision(10);
  os << (dd.u_grid.size() - half) << " points on [0, " << (dd.box.hi - dd.box.lo) << "]";
  v.grid_spec = os.str();
  for (std::size_t i = half; i + 1 < dd.u_grid.size(); ++i) {
    const double margin = dd.g_values[i] - dd.g_values[i + 1];
    if (margin < -tol && (!v.witness || margin < v.witness->margin)) {
      v.witness = OrderWitness{{dd.u_grid[i], dd.u_grid[i + 1]}, {dd.g_values[i], dd.g_values[i + 1]}, margin};
    }
  }
  if (v.witness) v.verdict = Verdict::kFails;
  return v;
}

Kernel2D diff_density_kernel(const Distribution& dist, std::span<const double> u_grid,
                             std::span<const double> b_grid) {
  Kernel2D k;
  k.xs.assign(u_grid.begin(), u_grid.end());
  k.ys.assign(b_grid.begin(), b_grid.end());
  k.values.resize(k.xs.size() * k.ys.size());
  std::vector<Box> boxes;
  boxes.reserve(k.ys.size());
  for (double b : k.ys) boxes.push_back(make_box(dist, {0.0, b}));
  for (std::size_t i = 0; i < k.xs.size(); ++i) {
    for (std::size_t j = 0; j < k.ys.size(); ++j) {
      k.values[i * k.ys.size() + j] = g_at(dist, boxes[j], k.xs[i], kDiffInnerTol);
    }
  }
  return k;
}

SlopeCrossCheck slope_cross_check(const Distribution& dist, double u, double b1, double b2, double tol,
                                  double rel_step) {
  if (!(u > 0.0 && u < b1 && b1 < b2)) throw DomainError("slope_cross_check: need 0 < u < b1 < b2");
  const Box box1 = make_box(dist, {0.0, b1});
  const Box box2 = make_box(dist, {0.0, b2});
  const double h = rel_step * b1;
  const auto g1 = [&](double x) { return g_at(dist, box1, x, kDiffInnerTol); };
  const auto g2 = [&](double x) { return g_at(dist, box2, x, kDiffInnerTol); };
  double d1 = 0.0;
  double d2 = 0.0;
  if (u > h) {
    d1 = (g1(u + h) - g1(u - h)) / (2.0 * h);
    d2 = (g2(u + h) - g2(u - h)) / (2.0 * h);
  } else {
    d1 = (g1(u + h) - g1(u)) / h;
    d2 = (g2(u + h) - g2(u)) / h;
  }
  SlopeCrossCheck out;
  out.step = h;
  out.lhs = d1 * g2(u);
  out.rhs = g1(u) * d2;
  out.margin = out.rhs - out.lhs;
  out.verdict = out.margin >= -tol ? Verdict::kHolds : Verdict::kFails;
  return out;
}

IntegralValue expected_phi(const Distribution& dist, Interval box_iv, const RealFn& phi) {
  const Box box = make_box(dist, box_iv);
  const QuadResult r = outer_integral(dist, box, [&](double u, double g) { return (phi(u) + phi(-u)) * g; });
  return {r.value, box.hi, r.abs_error_estimate};
}

IntegralValue expected_phi(const Distribution& dist, double b, const RealFn& phi) {
  return expected_phi(dist, Interval{0.0, b}, phi);
}

EntropyValue shannon_entropy_u(const Distribution& dist, Interval box_iv) {
  const Box box = make_box(dist, box_iv);
  const QuadResult r = outer_integral(dist, box, [](double, double g) { return -2.0 * x_log_x(g); });
  return {r.value, box.hi, r.abs_error_estimate};
}

EntropyValue shannon_entropy_u(const Distribution& dist, double b) {
  return shannon_entropy_u(dist, Interval{0.0, b});
}

IntegralValue cross_entropy_u(const Distribution& dist, double b1, double b2) {
  const Box box1 = make_box(dist, {0.0, b1});
  const Box box2 = make_box(dist, {0.0, b2});
  const QuadResult r = outer_integral(dist, box1, [&](double u, double g1) {
    if (g1 < kLogFloor) return 0.0;
    const double g2 = g_at(dist, box2, u, kDiffInnerTol);
    if (g2 < kLogFloor) {
      throw DomainError("cross entropy: outer difference density vanishes inside the inner support");
    }
    return -2.0 * g1 * std::log(g2);
  });
  return {r.value, b2, r.abs_error_estimate};
}

IntegralValue kl_divergence_u(const Distribution& dist, double b1, double b2) {
  const Box box1 = make_box(dist, {0.0, b1});
  const Box box2 = make_box(dist, {0.0, b2});
  const QuadResult r = outer_integral(dist, box1, [&](double u, double g1) {
    if (g1 < kLogFloor) return 0.0;
    const double g2 = g_at(dist, box2, u, kDiffInnerTol);
    if (g2 < kLogFloor) throw DomainError("KL divergence: second density vanishes inside the first support");
    return 2.0 * g1 * std::log(g1 / g2);
  });
  return {r.value, b2, r.abs_error_estimate};
}

EntropyChain entropy_inequality_chain(const Distribution& dist, double b1, double b2, double tol) {
  if (!(b1 > 0.0 && b1 <= b2)) throw DomainError("entropy_inequality_chain: need 0 < b1 <= b2");
  const double h1 = shannon_entropy_u(dist, b1).value;
  const double h2 = shannon_entropy_u(dist, b2).value;
  const double c = cross_entropy_u(dist, b1, b2).value;
  const auto check = [tol](double lhs, double rhs) { return InequalityCheck{lhs, rhs, lhs <= rhs + tol}; };
  EntropyChain out;
  out.b1 = b1;
  out.b2 = b2;
  out.tolerance = tol;
  out.cross_vs_entropy = check(c, h2);
  out.entropy_vs_cross = check(h1, c);
  out.entropy_growth = check(h1, h2);
  return out;
}

}  // namespace uo
