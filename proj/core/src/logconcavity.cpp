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

#include "uo/logconcavity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "uo/errors.hpp"

namespace uo {

namespace {

std::vector<double> knots_between(const Distribution& dist, double lo, double hi) {
  std::vector<double> out;
  for (double k : dist.knots()) {
    if (k > lo && k < hi) out.push_back(k);
  }
  return out;
}

void require_continuous(const Distribution& dist, const char* what) {
  if (dist.is_discrete()) throw KindMismatchError(std::string(what) + " needs a continuous distribution");
}

std::vector<double> sorted_strict(std::span<const double> v, const char* what) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw DomainError(std::string(what) + ": grid has repeated points");
  }
  return out;
}

}  // namespace

const char* to_string(ConcavityStatus s) {
  switch (s) {
    case ConcavityStatus::kLogConcave:
      return "log-concave";
    case ConcavityStatus::kNotLogConcave:
      return "not-log-concave";
    case ConcavityStatus::kInconclusive:
      break;
  }
  return "inconclusive";
}

ConcavityVerdict is_log_concave(const GridFunction& h, double tol) {
  ConcavityVerdict out;
  out.tolerance = tol;
  std::vector<double> xs;
  std::vector<double> ls;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double y = h.ys()[i];
    if (y > 0.0 && std::isfinite(y)) {
      xs.push_back(h.xs()[i]);
      ls.push_back(std::log(y));
    } else {
      ++out.excluded_points;
    }
  }
  if (xs.size() < 3) return out;

  std::optional<ConcavityWitness> worst;
  double worst_excess = 0.0;
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
    const double span = xs[i + 1] - xs[i - 1];
    const double w_minus = (xs[i + 1] - xs[i]) / span;
    const double w_plus = (xs[i] - xs[i - 1]) / span;
    const double d = 2.0 * (w_minus * ls[i - 1] + w_plus * ls[i + 1] - ls[i]);
    const double scale = std::max({1.0, std::abs(ls[i - 1]), std::abs(ls[i]), std::abs(ls[i + 1])});
    const double excess = d - tol * scale;
    if (excess > 0.0 && (!worst || excess > worst_excess)) {
      worst = ConcavityWitness{xs[i - 1], xs[i], xs[i + 1], d};
      worst_excess = excess;
    }
  }
  out.verdict = worst ? ConcavityStatus::kNotLogConcave : ConcavityStatus::kLogConcave;
  out.witness = worst;
  return out;
}

GridFunction upper_endpoint_integral(const Distribution& dist, double a, std::span<const double> b_grid) {
  require_continuous(dist, "upper_endpoint_integral");
  const std::vector<double> bs = sorted_strict(b_grid, "upper_endpoint_integral");
  if (bs.empty()) throw DomainError("upper_endpoint_integral: empty grid");
  if (!(bs.front() > a)) throw DomainError("upper_endpoint_integral: grid must lie above a");
  QuadOptions q{kPanelQuadTol, 0, knots_between(dist, a, bs.back())};
  const RepeatedAntiderivative r = repeated_antiderivative([&](double x) { return dist.prob(a, x); }, a, bs, q);
  std::vector<double> ys(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) ys[i] = r.second(bs[i]);
  if (bs.size() == 1) return GridFunction({a, bs[0]}, {0.0, ys[0]});
  return GridFunction(bs, std::move(ys));
}

GridFunction lower_endpoint_integral(const Distribution& dist, std::span<const double> a_grid, double b) {
  require_continuous(dist, "lower_endpoint_integral");
  const std::vector<double> as = sorted_strict(a_grid, "lower_endpoint_integral");
  if (as.empty()) throw DomainError("lower_endpoint_integral: empty grid");
  if (!(as.back() < b)) throw DomainError("lower_endpoint_integral: grid must lie below b");
  // Reflect: t = b - x, H(t) = F(b) - F(b - t), K(a) = int_0^{b-a} (T - t) H(t) dt.
  std::vector<double> ts(as.size());
  for (std::size_t i = 0; i < as.size(); ++i) ts[i] = b - as[as.size() - 1 - i];
  std::vector<double> tk;
  for (double k : knots_between(dist, as.front(), b)) tk.push_back(b - k);
  std::sort(tk.begin(), tk.end());
  QuadOptions q{kPanelQuadTol, 0, std::move(tk)};
  const RepeatedAntiderivative r =
      repeated_antiderivative([&](double t) { return dist.prob(b - t, b); }, 0.0, ts, q);
  std::vector<double> ys(as.size());
  for (std::size_t i = 0; i < as.size(); ++i) ys[i] = r.second(b - as[i]);
  if (as.size() == 1) return GridFunction({as[0], b}, {ys[0], 0.0});
  return GridFunction(as, std::move(ys));
}

ConcavityVerdict upper_endpoint_condition(const Distribution& dist, double a, std::span<const double> b_grid,
                                          double tol) {
  if (b_grid.size() < 3) {
    ConcavityVerdict v;
    v.tolerance = tol;
    return v;
  }
  return is_log_concave(upper_endpoint_integral(dist, a, b_grid), tol);
}

ConcavityVerdict lower_endpoint_condition(const Distribution& dist, std::span<const double> a_grid, double b,
                                          double tol) {
  if (a_grid.size() < 3) {
    ConcavityVerdict v;
    v.tolerance = tol;
    return v;
  }
  return is_log_concave(lower_endpoint_integral(dist, a_grid, b), tol);
}

std::vector<SlopeSignSample> variance_slope_values(const Distribution& dist, double a,
                                                   std::span<const double> b_grid) {
  require_continuous(dist, "variance_slope_values");
  const std::vector<double> bs = sorted_strict(b_grid, "variance_slope_values");
  if (bs.empty()) return {};
  if (!(bs.front() > a)) throw DomainError("variance_slope_values: grid must lie above a");
  QuadOptions q{kPanelQuadTol, 0, knots_between(dist, a, bs.back())};
  const RepeatedAntiderivative r = repeated_antiderivative([&](double x) { return dist.prob(a, x); }, a, bs, q);
  std::vector<SlopeSignSample> out(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const double f1 = r.first(bs[i]);
    out[i] = {bs[i], f1 * f1 - dist.prob(a, bs[i]) * r.second(bs[i])};
  }
  return out;
}

MonotonicityReport variance_slope_sign_check(const Distribution& dist, double a, std::span<const double> b_grid,
                                             double tol) {
  MonotonicityReport rep;
  rep.claim = "variance slope numerator F1^2 - F*F2 is nonnegative";
  rep.tolerance = tol;
  rep.grid_spec = std::to_string(b_grid.size()) + " upper ends, lower end fixed";
  for (const SlopeSignSample& s : variance_slope_values(dist, a, b_grid)) {
    if (s.d < -tol) rep.add_witness({a, s.b, a, s.b, 0.0, s.d, s.d});
  }
  return rep;
}

}  // namespace uo
