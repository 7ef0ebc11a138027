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

#include "uo/trunc_moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "uo/errors.hpp"

namespace uo {

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Interval clip_to_effective(const Distribution& dist, Interval iv) {
  if (iv.is_finite()) return iv;
  const Interval eff = dist.effective_support();
  Interval out = iv;
  if (!std::isfinite(out.lo)) out.lo = std::max(eff.lo, out.lo);
  if (!std::isfinite(out.hi)) out.hi = std::min(eff.hi, out.hi);
  return out;
}

[[noreturn]] void degenerate(double lo, double hi, double mass) {
  throw DegenerateIntervalError("interval (" + fmt_num(lo) + ", " + fmt_num(hi) + ") has mass " +
                                    fmt_num(mass) + " below the floor",
                                mass);
}

std::vector<double> breakpoints_in(const Distribution& dist, double lo, double hi) {
  std::vector<double> out;
  for (double k : dist.knots()) {
    if (k > lo && k < hi) out.push_back(k);
  }
  return out;
}

TruncatedMoments discrete_oracle(const Distribution& dist, Interval iv, const MomentOptions& opts) {
  const auto [kmin, kmax] = dist.lattice_range(1e-14);
  const double lo_d = std::max(std::ceil(iv.lo), static_cast<double>(kmin));
  const double hi_d = std::min(std::floor(iv.hi), static_cast<double>(kmax));
  double mass = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  if (lo_d <= hi_d) {
    const long lo = static_cast<long>(lo_d);
    const long hi = static_cast<long>(hi_d);
    const double c = 0.5 * (lo_d + hi_d);
    if (dist.family() == Family::kTable) {
      const PmfTable t = dist.to_pmf_table();
      for (std::size_t i = 0; i < t.ks.size(); ++i) {
        if (t.ks[i] < lo || t.ks[i] > hi) continue;
        const double d = static_cast<double>(t.ks[i]) - c;
        mass += t.ps[i];
        s1 += t.ps[i] * d;
        s2 += t.ps[i] * d * d;
      }
    } else {
      for (long k = lo; k <= hi; ++k) {
        const double p = dist.pmf(k);
        const double d = static_cast<double>(k) - c;
        mass += p;
        s1 += p * d;
        s2 += p * d * d;
      }
    }
    if (mass < opts.mass_floor) degenerate(iv.lo, iv.hi, mass);
    const double m1 = s1 / mass;
    TruncatedMoments out;
    out.mass = mass;
    out.mean = c + m1;
    out.variance = std::max(0.0, s2 / mass - m1 * m1);
    out.route = MomentRoute::kOracle;
    out.error_estimate = 1e-15 * (s2 / mass + 1.0);
    return out;
  }
  degenerate(iv.lo, iv.hi, 0.0);
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::kHolds ? "holds" : "fails"; }

const char* to_string(MomentRoute r) { return r == MomentRoute::kFormula ? "formula" : "direct-oracle"; }

void MonotonicityReport::add_witness(const MonotonicityWitness& w) {
  if (!(w.margin < -tolerance)) return;
  witnesses.push_back(w);
  verdict = Verdict::kFails;
}

TruncatedMoments truncated_moments_oracle(const Distribution& dist, Interval iv, const MomentOptions& opts) {
  iv = Interval::make(iv.lo, iv.hi);
  if (dist.is_discrete()) return discrete_oracle(dist, iv, opts);

  iv = clip_to_effective(dist, iv);
  const double mass = dist.prob(iv.lo, iv.hi);
  if (!(mass >= opts.mass_floor)) degenerate(iv.lo, iv.hi, mass);

  QuadOptions q;
  q.tol = opts.tol * std::min(1.0, mass);
  q.breakpoints = breakpoints_in(dist, iv.lo, iv.hi);
  const double c = 0.5 * (iv.lo + iv.hi);
  const QuadResult r1 = integrate([&](double x) { return (x - c) * dist.pdf(x); }, iv.lo, iv.hi, q);
  const QuadResult r2 = integrate(
      [&](double x) {
        const double d = x - c;
        return d * d * dist.pdf(x);
      },
      iv.lo, iv.hi, q);

  const double m1 = r1.value / mass;
  TruncatedMoments out;
  out.mass = mass;
  out.mean = c + m1;
  out.variance = std::max(0.0, r2.value / mass - m1 * m1);
  out.route = MomentRoute::kOracle;
  out.error_estimate = (r2.abs_error_estimate + 2.0 * std::abs(m1) * r1.abs_error_estimate) / mass;
  return out;
}

std::vector<std::optional<TruncatedMoments>> truncated_variance_profile(const Distribution& dist, double a,
                                                                        std::span<const double> b_grid,
                                                                        const MomentOptions& opts) {
  if (dist.is_discrete()) {
    throw KindMismatchError("antiderivative variance formula needs a continuous distribution");
  }
  std::vector<std::optional<TruncatedMoments>> out(b_grid.size());
  if (b_grid.empty()) return out;
  if (!std::isfinite(a)) a = std::max(a, dist.effective_support().lo);
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    if (!(b_grid[i] > a)) throw DomainError("variance profile: every upper end must exceed the lower end");
    if (i > 0 && !(b_grid[i] > b_grid[i - 1])) {
      throw DomainError("variance profile: upper ends must be strictly increasing");
    }
  }
  std::vector<double> grid(b_grid.begin(), b_grid.end());
  for (auto& b : grid) {
    if (!std::isfinite(b)) b = std::min(b, dist.effective_support().hi);
  }

  QuadOptions q;
  const double first_mass = dist.prob(a, grid.front());
  q.tol = opts.tol * std::clamp(first_mass, opts.mass_floor, 1.0);
  q.breakpoints = breakpoints_in(dist, a, grid.back());
  const auto rebased = [&dist, a](double x) { return dist.prob(a, x); };
  const RepeatedAntiderivative anti = repeated_antiderivative(rebased, a, grid, q);

  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double b = grid[i];
    const double mass = dist.prob(a, b);
    if (!(mass >= opts.mass_floor)) continue;
    const double f1 = anti.first(b);
    const double f2 = anti.second(b);
    const double r = f1 / mass;  // E[b - X | a < X < b]
    TruncatedMoments m;
    m.mass = mass;
    m.mean = b - r;
    m.variance = std::max(0.0, 2.0 * f2 / mass - r * r);
    m.route = MomentRoute::kFormula;
    m.error_estimate = (2.0 + 2.0 * r) * anti.abs_error_estimate / mass;
    out[i] = m;
  }
  return out;
}

TruncatedMoments truncated_variance_formula(const Distribution& dist, double a, double b,
                                            const MomentOptions& opts) {
  const Interval iv = clip_to_effective(dist, Interval::make(a, b));
  const double grid[] = {iv.hi};
  const auto prof = truncated_variance_profile(dist, iv.lo, grid, opts);
  if (!prof[0]) degenerate(iv.lo, iv.hi, dist.prob(iv.lo, iv.hi));
  return *prof[0];
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

std::vector<double> spaced_points(const Distribution& dist, Interval w, std::size_t n, GridSpacing spacing) {
  std::vector<double> pts;
  if (n < 2) throw DomainError("sweep grid needs at least two points per axis");
  pts.reserve(n);
  if (spacing == GridSpacing::kUniform) {
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back(w.lo + (w.hi - w.lo) * static_cast<double>(i) / static_cast<double>(n - 1));
    }
  } else {
    const double plo = dist.cdf(w.lo);
    const double phi = dist.cdf(w.hi);
    pts.push_back(w.lo);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double p = plo + (phi - plo) * static_cast<double>(i) / static_cast<double>(n - 1);
      double x = (p > 0.0 && p < 1.0) ? dist.quantile(p) : w.lo;
      x = std::clamp(x, w.lo, w.hi);
      pts.push_back(x);
    }
    pts.push_back(w.hi);
  }
  pts.back() = w.hi;
  return pts;
}

void merge_points(std::vector<double>& pts, std::span<const double> extra, Interval w) {
  for (double e : extra) {
    if (e >= w.lo && e <= w.hi) pts.push_back(e);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

std::string window_text(Interval w) { return "(" + fmt_num(w.lo) + ", " + fmt_num(w.hi) + ")"; }

}  // namespace

SweepGrid make_sweep_grid(const Distribution& dist, Interval window, std::size_t n_a, std::size_t n_b,
                          GridSpacing spacing, std::span<const double> extra_points) {
  window = Interval::make(window.lo, window.hi);
  Interval w = window;
  const Interval eff = dist.effective_support();
  w.lo = std::max(w.lo, eff.lo);
  w.hi = std::min(w.hi, eff.hi);
  if (!(w.lo < w.hi)) throw DomainError("sweep window does not intersect the effective support");
  SweepGrid g;
  g.a_values = spaced_points(dist, w, n_a, spacing);
  g.b_values = spaced_points(dist, w, n_b, spacing);
  merge_points(g.a_values, extra_points, w);
  merge_points(g.b_values, extra_points, w);
  g.description = std::string(spacing == GridSpacing::kQuantile ? "quantile-spaced " : "x-uniform ") +
                  std::to_string(n_a) + "x" + std::to_string(n_b) + " on " + window_text(w);
  if (!extra_points.empty()) g.description += " plus " + std::to_string(extra_points.size()) + " extra points";
  return g;
}

MonotonicityReport monotonicity_sweep(const Distribution& dist, Interval window, std::size_t n_a,
                                      std::size_t n_b, double tol, const SweepOptions& opts) {
  const SweepGrid g = make_sweep_grid(dist, window, n_a, n_b, opts.spacing, opts.extra_points);
  return monotonicity_sweep(dist, g, tol, opts);
}

MonotonicityReport monotonicity_sweep(const Distribution& dist, const SweepGrid& grid, double tol,
                                      const SweepOptions& opts) {
  if (dist.is_discrete()) throw KindMismatchError("monotonicity_sweep: use discrete_monotonicity for lattices");
  if (!(tol > 0.0)) throw DomainError("monotonicity_sweep: tolerance must be positive");
  const auto& as = grid.a_values;
  const auto& bs = grid.b_values;
  for (std::size_t i = 1; i < as.size(); ++i) {
    if (!(as[i] > as[i - 1])) throw DomainError("monotonicity_sweep: a grid must be strictly increasing");
  }
  for (std::size_t j = 1; j < bs.size(); ++j) {
    if (!(bs[j] > bs[j - 1])) throw DomainError("monotonicity_sweep: b grid must be strictly increasing");
  }

  MonotonicityReport rep;
  rep.claim = "conditional variance is partially monotonic in the interval";
  rep.tolerance = tol;
  rep.grid_spec = grid.description.empty()
                      ? "explicit " + std::to_string(as.size()) + "x" + std::to_string(bs.size())
                      : grid.description;
  rep.grid_spec += std::string(", route ") + to_string(opts.route);

  // var[i][j] for a_i < b_j.
  std::vector<std::vector<std::optional<double>>> var(as.size(), std::vector<std::optional<double>>(bs.size()));
  for (std::size_t i = 0; i < as.size(); ++i) {
    const auto first = std::upper_bound(bs.begin(), bs.end(), as[i]);
    const std::size_t j0 = static_cast<std::size_t>(first - bs.begin());
    if (j0 >= bs.size()) continue;
    if (opts.route == MomentRoute::kFormula) {
      const auto prof = truncated_variance_profile(
          dist, as[i], std::span<const double>(bs.data() + j0, bs.size() - j0), opts.moments);
      for (std::size_t k = 0; k < prof.size(); ++k) {
        if (prof[k]) {
          var[i][j0 + k] = prof[k]->variance;
        } else {
          ++rep.skipped;
        }
      }
    } else {
      for (std::size_t j = j0; j < bs.size(); ++j) {
        try {
          var[i][j] = truncated_moments_oracle(dist, {as[i], bs[j]}, opts.moments).variance;
        } catch (const DegenerateIntervalError&) {
          ++rep.skipped;
        }
      }
    }
  }

  if (opts.direction != SweepDirection::kLower) {
    // Fixed a, growing b.
    for (std::size_t i = 0; i < as.size(); ++i) {
      std::optional<std::size_t> prev;
      for (std::size_t j = 0; j < bs.size(); ++j) {
        if (!var[i][j]) continue;
        if (prev) {
          const double inner = *var[i][*prev];
          const double outer = *var[i][j];
          if (outer - inner < -tol) rep.add_witness({as[i], bs[*prev], as[i], bs[j], inner, outer, outer - inner});
        }
        prev = j;
      }
    }
  }
  if (opts.direction != SweepDirection::kUpper) {
    // Fixed b, shrinking a (inner interval has the larger a).
    for (std::size_t j = 0; j < bs.size(); ++j) {
      std::optional<std::size_t> prev;
      for (std::size_t i = 0; i < as.size(); ++i) {
        if (!var[i][j]) continue;
        if (prev) {
          const double outer = *var[*prev][j];
          const double inner = *var[i][j];
          if (outer - inner < -tol) rep.add_witness({as[i], bs[j], as[*prev], bs[j], inner, outer, outer - inner});
        }
        prev = i;
      }
    }
  }
  return rep;
}

MonotonicityReport symmetric_sweep(const Distribution& dist, double center, std::span<const double> half_widths,
                                   double tol, const MomentOptions& opts) {
  if (!(tol > 0.0)) throw DomainError("symmetric_sweep: tolerance must be positive");
  MonotonicityReport rep;
  rep.claim = "conditional variance is nondecreasing over symmetric windows";
  rep.tolerance = tol;
  rep.grid_spec = std::to_string(half_widths.size()) + " half-widths about " + fmt_num(center);
  std::optional<std::pair<double, double>> prev;  // (w, var)
  for (std::size_t k = 0; k < half_widths.size(); ++k) {
    const double w = half_widths[k];
    if (!(w > 0.0) || (k > 0 && !(w > half_widths[k - 1]))) {
      throw DomainError("symmetric_sweep: half-widths must be positive and strictly increasing");
    }
    double v = 0.0;
    try {
      v = dist.is_discrete() ? truncated_moments_oracle(dist, {center - w, center + w}, opts).variance
                             : truncated_variance_formula(dist, center - w, center + w, opts).variance;
    } catch (const DegenerateIntervalError&) {
      ++rep.skipped;
      continue;
    }
    if (prev && v - prev->second < -tol) {
      rep.add_witness({center - prev->first, center + prev->first, center - w, center + w, prev->second, v,
                       v - prev->second});
    }
    prev = std::make_pair(w, v);
  }
  return rep;
}

}  // namespace uo
