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

#include "uo/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <string>

#include "uo/errors.hpp"

namespace uo {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double roundoff;  // error floor attributable to rounding
};

struct ByError {
  bool operator()(const Segment& l, const Segment& r) const {
    if (l.error != r.error) return l.error < r.error;
    return l.a > r.a;  // deterministic tie-break
  }
};

Segment gk15(const RealFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (std::size_t j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  const double result = resk * half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double roundoff = 50.0 * kEps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) err = std::max(roundoff, err);
  if (!std::isfinite(result)) err = std::numeric_limits<double>::infinity();
  return {a, b, result, err, roundoff};
}

bool splittable(const Segment& s) {
  const double mid = 0.5 * (s.a + s.b);
  if (!(mid > s.a && mid < s.b)) return false;
  return s.error > s.roundoff * 1.0000001;
}

std::size_t env_max_evals() {
  const char* v = std::getenv("UO_MAX_EVALS");
  if (v == nullptr || *v == '\0') return kDefaultMaxEvals;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (end == v || n == 0) return kDefaultMaxEvals;
  return static_cast<std::size_t>(std::min<unsigned long long>(n, kDefaultMaxEvals));
}

void check_grid(std::span<const double> grid, double a) {
  if (grid.empty()) throw DomainError("antiderivative: empty grid");
  if (!(grid[0] >= a)) throw DomainError("antiderivative: grid[0] must be >= the base point");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("antiderivative: grid must be strictly increasing");
  }
}

}  // namespace

std::size_t max_evaluations() {
  static const std::size_t cap = env_max_evals();
  return cap;
}

QuadResult integrate(const RealFn& f, double a, double b, double tol) {
  QuadOptions opts;
  opts.tol = tol;
  return integrate(f, a, b, opts);
}

QuadResult integrate(const RealFn& f, double a, double b, const QuadOptions& opts) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("integrate: limits must be finite");
  if (!(opts.tol >= 0.0)) throw DomainError("integrate: tolerance must be nonnegative");
  if (a == b) return {0.0, 0.0, true, 0};
  if (a > b) {
    QuadResult r = integrate(f, b, a, opts);
    r.value = -r.value;
    return r;
  }
  const std::size_t cap = opts.max_evals == 0 ? max_evaluations() : std::min(opts.max_evals, max_evaluations());

  std::vector<double> cuts{a};
  for (double p : opts.breakpoints) {
    if (p > a && p < b) cuts.push_back(p);
  }
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Segment, std::vector<Segment>, ByError> open;
  std::vector<Segment> done;
  std::size_t evals = 0;
  double total_err = 0.0;
  double total_roundoff = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = gk15(f, cuts[i], cuts[i + 1]);
    evals += 15;
    total_err += s.error;
    total_roundoff += s.roundoff;
    if (splittable(s)) {
      open.push(s);
    } else {
      done.push_back(s);
    }
  }

  bool converged = true;
  while (total_err > opts.tol && total_err > 2.0 * total_roundoff && !open.empty()) {
    if (evals + 30 > cap) {
      converged = false;
      break;
    }
    const Segment worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    evals += 30;
    total_err += left.error + right.error - worst.error;
    total_roundoff += left.roundoff + right.roundoff - worst.roundoff;
    for (const Segment& s : {left, right}) {
      if (splittable(s)) {
        open.push(s);
      } else {
        done.push_back(s);
      }
    }
  }

  while (!open.empty()) {
    done.push_back(open.top());
    open.pop();
  }
  // Sum in position order so the result is independent of heap layout.
  std::sort(done.begin(), done.end(), [](const Segment& l, const Segment& r) { return l.a < r.a; });
  QuadResult out;
  for (const Segment& s : done) {
    out.value += s.value;
    out.abs_error_estimate += s.error;
  }
  out.converged = converged;
  out.evaluations = evals;
  return out;
}

// ---------------------------------------------------------------------------
// GridFunction

GridFunction::GridFunction(std::vector<double> xs, std::vector<double> ys, Interp interp)
    : xs_(std::move(xs)), ys_(std::move(ys)), interp_(interp) {
  if (xs_.size() < 2 || xs_.size() != ys_.size()) {
    throw DomainError("GridFunction: need at least two points and equal lengths");
  }
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    if (!(xs_[i] > xs_[i - 1])) throw DomainError("GridFunction: abscissae must be strictly increasing");
  }
  if (interp_ == Interp::kPchip) {
    // Fritsch-Carlson monotone slopes.
    const std::size_t n = xs_.size();
    std::vector<double> h(n - 1);
    std::vector<double> delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      h[i] = xs_[i + 1] - xs_[i];
      delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
    }
    slopes_.assign(n, 0.0);
    if (n == 2) {
      slopes_[0] = slopes_[1] = delta[0];
      return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (delta[i - 1] * delta[i] <= 0.0) {
        slopes_[i] = 0.0;
      } else {
        const double w1 = 2.0 * h[i] + h[i - 1];
        const double w2 = h[i] + 2.0 * h[i - 1];
        slopes_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
      }
    }
    auto end_slope = [](double h0, double h1, double d0, double d1) {
      double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
      if (d * d0 <= 0.0) return 0.0;
      if (d0 * d1 <= 0.0 && std::abs(d) > std::abs(3.0 * d0)) d = 3.0 * d0;
      return d;
    };
    slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
  }
}

double GridFunction::operator()(double x) const {
  if (!(x >= xs_.front() && x <= xs_.back())) {
    throw DomainError("GridFunction: evaluation point " + std::to_string(x) + " outside the grid");
  }
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i >= xs_.size()) return ys_.back();
  --i;
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  if (interp_ == Interp::kLinear) return ys_[i] + t * (ys_[i + 1] - ys_[i]);
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * ys_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] + (-2 * t3 + 3 * t2) * ys_[i + 1] +
         (t3 - t2) * h * slopes_[i + 1];
}

double GridFunction::cell_integral(std::size_t i, double lo, double hi) const {
  const double h = xs_[i + 1] - xs_[i];
  const double s0 = (lo - xs_[i]) / h;
  const double s1 = (hi - xs_[i]) / h;
  if (interp_ == Interp::kLinear) {
    // y0 + t (y1 - y0)
    const double d = ys_[i + 1] - ys_[i];
    return h * (ys_[i] * (s1 - s0) + 0.5 * d * (s1 * s1 - s0 * s0));
  }
  // Antiderivatives of the cubic Hermite basis in t.
  auto prim = [&](double t) {
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double t4 = t3 * t;
    const double h00 = 0.5 * t4 - t3 + t;
    const double h10 = 0.25 * t4 - 2.0 / 3.0 * t3 + 0.5 * t2;
    const double h01 = -0.5 * t4 + t3;
    const double h11 = 0.25 * t4 - t3 / 3.0;
    return h00 * ys_[i] + h10 * h * slopes_[i] + h01 * ys_[i + 1] + h11 * h * slopes_[i + 1];
  };
  return h * (prim(s1) - prim(s0));
}

double GridFunction::integral(double lo, double hi) const {
  if (lo == hi) return 0.0;
  if (lo > hi) return -integral(hi, lo);
  if (lo < xs_.front() || hi > xs_.back()) throw DomainError("GridFunction::integral: limits outside the grid");
  double total = 0.0;
  auto it = std::upper_bound(xs_.begin(), xs_.end(), lo);
  std::size_t i = it == xs_.begin() ? 0 : static_cast<std::size_t>(it - xs_.begin()) - 1;
  for (; i + 1 < xs_.size() && xs_[i] < hi; ++i) {
    const double l = std::max(lo, xs_[i]);
    const double r = std::min(hi, xs_[i + 1]);
    if (r > l) total += cell_integral(i, l, r);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Antiderivatives

GridFunction antiderivative(const RealFn& g, double a, std::span<const double> grid, QuadOptions opts) {
  check_grid(grid, a);
  std::vector<double> xs(grid.begin(), grid.end());
  std::vector<double> hs(grid.size());
  double acc = 0.0;
  double prev = a;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    acc += integrate(g, prev, grid[i], opts).value;
    hs[i] = acc;
    prev = grid[i];
  }
  if (xs.size() == 1) {
    // Degenerate single-point grid: pad with the base point when possible.
    if (grid[0] > a) return GridFunction({a, grid[0]}, {0.0, hs[0]});
    return GridFunction({a, a + 1.0}, {0.0, 0.0});
  }
  return GridFunction(std::move(xs), std::move(hs));
}

GridFunction antiderivative(const GridFunction& g, double a, std::span<const double> grid) {
  check_grid(grid, a);
  std::vector<double> xs(grid.begin(), grid.end());
  std::vector<double> hs(grid.size());
  double acc = 0.0;
  double prev = a;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    acc += g.integral(prev, grid[i]);
    hs[i] = acc;
    prev = grid[i];
  }
  if (xs.size() == 1) {
    if (grid[0] > a) return GridFunction({a, grid[0]}, {0.0, hs[0]});
    return GridFunction({a, a + 1.0}, {0.0, 0.0});
  }
  return GridFunction(std::move(xs), std::move(hs));
}

RepeatedAntiderivative repeated_antiderivative(const RealFn& g, double a, std::span<const double> grid,
                                               QuadOptions opts) {
  check_grid(grid, a);
  std::vector<double> first(grid.size());
  std::vector<double> second(grid.size());
  double f1 = 0.0;
  double f2 = 0.0;
  double prev = a;
  double err = 0.0;
  bool converged = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    if (x > prev) {
      const QuadResult r1 = integrate(g, prev, x, opts);
      const QuadResult r2 = integrate([&g, x](double t) { return (x - t) * g(t); }, prev, x, opts);
      f2 += (x - prev) * f1 + r2.value;
      f1 += r1.value;
      err += r1.abs_error_estimate + r2.abs_error_estimate;
      converged = converged && r1.converged && r2.converged;
    }
    first[i] = f1;
    second[i] = f2;
    prev = x;
  }
  std::vector<double> xs(grid.begin(), grid.end());
  if (xs.size() == 1) {
    const double hi = grid[0] > a ? grid[0] : a + 1.0;
    return {GridFunction({a, hi}, {0.0, first[0]}), GridFunction({a, hi}, {0.0, second[0]}), err, converged};
  }
  return {GridFunction(xs, std::move(first)), GridFunction(xs, std::move(second)), err, converged};
}

}  // namespace uo
