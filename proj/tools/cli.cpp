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

#include "cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "uo/diff_uncertainty.hpp"
#include "uo/discrete_embed.hpp"
#include "uo/distribution.hpp"
#include "uo/distribution_io.hpp"
#include "uo/errors.hpp"
#include "uo/logconcavity.hpp"
#include "uo/orders.hpp"
#include "uo/serialize.hpp"
#include "uo/trunc_moments.hpp"

namespace uo::cli {

namespace {

using nlohmann::json;

struct Config {
  std::string dist_spec;
  std::string pdf_file;
  std::string pmf_file;
  double tol = 1e-7;
  std::size_t grid = 0;  // 0: command default
  std::string out_path;
  std::string format = "json";

  std::string interval;
  std::string window;
  std::string spacing = "quantile";
  std::string direction = "both";
  std::string route = "formula";

  std::string against;
  std::string order = "dispersion";
  std::string condition;
  std::string against_condition;
  std::string alphas;

  double b = 0.0;
  std::string box;
  std::size_t n_u = kDefaultDiffGridSize;
  std::string b_grid;
  double box_lo = 0.0;
  std::string phi = "entropy";

  std::string link;

  int components = 3;
  bool symmetric = false;
};

struct Output {
  json doc;
  std::string csv;
  std::string text;
  int code = kOk;
};

struct Input {
  Distribution dist;
  std::string label;
  std::optional<PmfTable> pmf;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

std::vector<double> parse_list(const std::string& s, const char* what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("{}: '{}' is not a number", what, item));
    }
    if (used != item.size()) throw UsageError(fmt::format("{}: '{}' is not a number", what, item));
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(fmt::format("{}: empty list", what));
  return out;
}

Interval parse_pair(const std::string& s, const char* what) {
  const std::vector<double> v = parse_list(s, what);
  if (v.size() != 2) throw UsageError(fmt::format("{}: expected lo,hi", what));
  if (!(v[0] < v[1])) throw UsageError(fmt::format("{}: need lo < hi", what));
  return {v[0], v[1]};
}

std::size_t grid_or(const Config& c, std::size_t fallback) {
  const std::size_t n = c.grid == 0 ? fallback : c.grid;
  if (n < 2) throw UsageError("--grid must be at least 2");
  return n;
}

Input load_input(const Config& c) {
  const int given = !c.dist_spec.empty() + !c.pdf_file.empty() + !c.pmf_file.empty();
  if (given != 1) throw UsageError("give exactly one of --dist, --pdf-file, --pmf-file");
  if (!c.dist_spec.empty()) {
    Distribution d = parse_distribution(c.dist_spec);
    std::optional<PmfTable> pmf;
    if (d.is_discrete()) pmf = d.to_pmf_table();
    return {d, d.to_string(), pmf};
  }
  if (!c.pdf_file.empty()) return {load_density_csv(c.pdf_file), "pdf-file:" + c.pdf_file, std::nullopt};
  PmfTable t = load_pmf_csv(c.pmf_file);
  return {Distribution::from_pmf(t), "pmf-file:" + c.pmf_file, t};
}

void require_continuous(const Input& in, const char* command) {
  if (in.dist.is_discrete()) {
    throw UsageError(fmt::format("{} needs a continuous distribution (use `embed` for lattice inputs)", command));
  }
}

Interval clip(const Distribution& d, Interval w) {
  const Interval eff = d.effective_support();
  return {std::isfinite(w.lo) ? w.lo : std::max(w.lo, eff.lo), std::isfinite(w.hi) ? w.hi : std::min(w.hi, eff.hi)};
}

const char* verdict_words(Verdict v) { return v == Verdict::kHolds ? "holds" : "FAILS"; }

std::string witness_text(const MonotonicityWitness& w) {
  return fmt::format("  var on ({}, {}) = {} exceeds var on ({}, {}) = {} (margin {})\n", num(w.a1), num(w.b1),
                     num(w.var1), num(w.a2), num(w.b2), num(w.var2), num(w.margin));
}

std::string report_text(const MonotonicityReport& r, std::size_t max_witnesses = 5) {
  std::string s = fmt::format("claim: {}\nverdict: {} (tolerance {}, {} violations, {} cells skipped)\ngrid: {}\n",
                              r.claim, verdict_words(r.verdict), num(r.tolerance), r.witnesses.size(), r.skipped,
                              r.grid_spec);
  std::vector<MonotonicityWitness> ws = r.witnesses;
  std::stable_sort(ws.begin(), ws.end(), [](const auto& x, const auto& y) { return x.margin < y.margin; });
  for (std::size_t i = 0; i < ws.size() && i < max_witnesses; ++i) s += witness_text(ws[i]);
  return s;
}

std::string report_csv(const MonotonicityReport& r) {
  std::string s = "a_inner,b_inner,a_outer,b_outer,var_inner,var_outer,margin\n";
  for (const auto& w : r.witnesses) {
    s += fmt::format("{},{},{},{},{},{},{}\n", num(w.a1), num(w.b1), num(w.a2), num(w.b2), num(w.var1), num(w.var2),
                     num(w.margin));
  }
  return s;
}

std::string concavity_text(const char* name, const ConcavityVerdict& v) {
  std::string s = fmt::format("{}: {} (tolerance {}, {} points excluded)\n", name, to_string(v.verdict),
                              num(v.tolerance), v.excluded_points);
  if (v.witness) {
    s += fmt::format("  log second difference {} at ({}, {}, {})\n", num(v.witness->second_diff),
                     num(v.witness->x_minus), num(v.witness->x_0), num(v.witness->x_plus));
  }
  return s;
}

std::string order_text(const OrderVerdict& v) {
  std::string s = fmt::format("{} order: {} (tolerance {}; {})\n", to_string(v.order), verdict_words(v.verdict),
                              num(v.tolerance), v.grid_spec);
  if (v.witness) {
    std::vector<std::string> p;
    std::vector<std::string> q;
    for (double x : v.witness->probes) p.push_back(num(x));
    for (double x : v.witness->values) q.push_back(num(x));
    s += fmt::format("  probes [{}] values [{}] margin {}\n", fmt::join(p, ", "), fmt::join(q, ", "),
                     num(v.witness->margin));
  }
  return s;
}

std::string slope_text(const MonotonicityReport& r, std::size_t max_points = 5) {
  std::string s = fmt::format("{}: {} (tolerance {}, {} negative points; {})\n", r.claim, verdict_words(r.verdict),
                              num(r.tolerance), r.witnesses.size(), r.grid_spec);
  for (std::size_t i = 0; i < r.witnesses.size() && i < max_points; ++i) {
    s += fmt::format("  numerator {} at b = {}\n", num(r.witnesses[i].margin), num(r.witnesses[i].b2));
  }
  return s;
}

// ---------------------------------------------------------------------------
// moments

TruncatedMoments embedded_formula(const PmfTable& pmf, Interval iv) {
  const Distribution y = embed(pmf);
  const double lo = std::ceil(iv.lo) - 0.5;
  const double hi = std::floor(iv.hi) + 0.5;
  if (!(lo < hi)) throw DegenerateIntervalError("integer window is empty", 0.0);
  TruncatedMoments m = truncated_variance_formula(y, lo, hi);
  m.variance = std::max(0.0, m.variance - 1.0 / 12.0);
  return m;
}

Output cmd_moments(const Config& c) {
  if (c.interval.empty()) throw UsageError("moments needs --interval lo,hi");
  const Input in = load_input(c);
  const Interval iv = parse_pair(c.interval, "--interval");
  const TruncatedMoments oracle = truncated_moments_oracle(in.dist, iv);
  const TruncatedMoments formula =
      in.pmf ? embedded_formula(*in.pmf, iv) : truncated_variance_formula(in.dist, iv.lo, iv.hi);
  const double diff = std::abs(formula.variance - oracle.variance);

  Output o;
  o.doc = {{"command", "moments"},
           {"input", in.label},
           {"interval", {json_number(iv.lo), json_number(iv.hi)}},
           {"closed_integer_window", in.dist.is_discrete()},
           {"formula", to_json(formula)},
           {"oracle", to_json(oracle)},
           {"formula_via_embedding", in.pmf.has_value()},
           {"variance_abs_difference", json_number(diff)}};
  o.csv = "route,mass,mean,variance,error_estimate\n";
  for (const TruncatedMoments* m : {&formula, &oracle}) {
    o.csv += fmt::format("{},{},{},{},{}\n", to_string(m->route), num(m->mass), num(m->mean), num(m->variance),
                         num(m->error_estimate));
  }
  o.text = fmt::format(
      "conditional moments of {} on ({}, {}){}\n"
      "{:<14} {:>22} {:>22} {:>22}\n"
      "{:<14} {:>22} {:>22} {:>22}\n"
      "{:<14} {:>22} {:>22} {:>22}\n"
      "routes differ by {} in variance\n",
      in.label, num(iv.lo), num(iv.hi), in.dist.is_discrete() ? " (integers, ends included)" : "", "route", "mass",
      "mean", "variance", "cdf integrals", num(formula.mass), num(formula.mean), num(formula.variance),
      "direct", num(oracle.mass), num(oracle.mean), num(oracle.variance), num(diff));
  return o;
}

// ---------------------------------------------------------------------------
// sweep

SweepDirection parse_direction(const std::string& s) {
  if (s == "both") return SweepDirection::kBoth;
  if (s == "upper") return SweepDirection::kUpper;
  if (s == "lower") return SweepDirection::kLower;
  throw UsageError("--direction must be both, upper or lower");
}

Output cmd_sweep(const Config& c) {
  if (c.window.empty()) throw UsageError("sweep needs --window lo,hi");
  const Input in = load_input(c);
  const Interval w = parse_pair(c.window, "--window");
  const SweepDirection dir = parse_direction(c.direction);
  MonotonicityReport rep;
  if (in.pmf) {
    if (!std::isfinite(w.lo) || !std::isfinite(w.hi)) throw UsageError("lattice sweeps need a finite window");
    rep = discrete_monotonicity(*in.pmf, static_cast<long>(std::ceil(w.lo)), static_cast<long>(std::floor(w.hi)),
                                c.tol, dir);
  } else {
    SweepOptions opts;
    if (c.spacing == "uniform") {
      opts.spacing = GridSpacing::kUniform;
    } else if (c.spacing != "quantile") {
      throw UsageError("--spacing must be quantile or uniform");
    }
    if (c.route == "oracle") {
      opts.route = MomentRoute::kOracle;
    } else if (c.route != "formula") {
      throw UsageError("--route must be formula or oracle");
    }
    opts.direction = dir;
    const std::size_t n = grid_or(c, 21);
    rep = monotonicity_sweep(in.dist, w, n, n, c.tol, opts);
  }
  Output o;
  o.doc = {{"command", "sweep"},
           {"input", in.label},
           {"window", {json_number(w.lo), json_number(w.hi)}},
           {"direction", c.direction},
           {"report", to_json(rep)}};
  o.csv = report_csv(rep);
  o.text = fmt::format("partial monotonicity sweep of {} on ({}, {})\n", in.label, num(w.lo), num(w.hi)) +
           report_text(rep);
  return o;
}

// ---------------------------------------------------------------------------
// conditions

Output cmd_conditions(const Config& c) {
  if (c.window.empty()) throw UsageError("conditions needs --window lo,hi");
  const Input in = load_input(c);
  require_continuous(in, "conditions");
  const Interval w = clip(in.dist, parse_pair(c.window, "--window"));
  const std::size_t n = grid_or(c, 201);
  std::vector<double> bs(n);
  std::vector<double> as(n);
  for (std::size_t i = 0; i < n; ++i) {
    bs[i] = w.lo + (w.hi - w.lo) * static_cast<double>(i + 1) / static_cast<double>(n);
    as[i] = w.lo + (w.hi - w.lo) * static_cast<double>(i) / static_cast<double>(n);
  }
  const ConcavityVerdict upper = upper_endpoint_condition(in.dist, w.lo, bs, c.tol);
  const ConcavityVerdict lower = lower_endpoint_condition(in.dist, as, w.hi, c.tol);
  const MonotonicityReport slope = variance_slope_sign_check(in.dist, w.lo, bs, 1e-9);

  Output o;
  o.doc = {{"command", "conditions"},
           {"input", in.label},
           {"window", {json_number(w.lo), json_number(w.hi)}},
           {"grid_points", n},
           {"upper_endpoint", to_json(upper)},
           {"lower_endpoint", to_json(lower)},
           {"slope_sign", to_json(slope)}};
  o.csv = "condition,verdict,x_minus,x_0,x_plus,second_diff\n";
  for (const auto& [name, v] : {std::pair{"upper_endpoint", &upper}, std::pair{"lower_endpoint", &lower}}) {
    if (v->witness) {
      o.csv += fmt::format("{},{},{},{},{},{}\n", name, to_string(v->verdict), num(v->witness->x_minus),
                           num(v->witness->x_0), num(v->witness->x_plus), num(v->witness->second_diff));
    } else {
      o.csv += fmt::format("{},{},,,,\n", name, to_string(v->verdict));
    }
  }
  o.text = fmt::format("log-concavity conditions for {} on ({}, {}), {} grid points\n", in.label, num(w.lo),
                       num(w.hi), n) +
           concavity_text("double integral of F(x)-F(a) in b (variance grows with b)", upper) +
           concavity_text("double integral of F(b)-F(x) in a (variance shrinks as a grows)", lower) +
           slope_text(slope);
  return o;
}

// ---------------------------------------------------------------------------
// orders

Output cmd_orders(const Config& c) {
  if (c.against.empty()) throw UsageError("orders needs --against SPEC");
  const Input in = load_input(c);
  const Distribution g = parse_distribution(c.against);
  require_continuous(in, "orders");
  if (g.is_discrete()) throw UsageError("orders needs a continuous --against distribution");
  const Interval cf = c.condition.empty() ? in.dist.support() : parse_pair(c.condition, "--condition");
  const Interval cg =
      c.against_condition.empty() ? g.support() : parse_pair(c.against_condition, "--against-condition");

  OrderVerdict v;
  if (c.order == "dispersion") {
    std::vector<double> alphas;
    if (c.alphas.empty()) {
      for (int i = 1; i <= 9; ++i) alphas.push_back(i / 10.0);
    } else {
      alphas = parse_list(c.alphas, "--alphas");
    }
    v = dispersion_order(truncated_quantile(in.dist, cf), truncated_quantile(g, cg), alphas, c.tol);
  } else if (c.order == "stochastic" || c.order == "likelihood-ratio") {
    Interval w;
    if (!c.window.empty()) {
      w = parse_pair(c.window, "--window");
    } else {
      const Interval ef = clip(in.dist, cf);
      const Interval eg = clip(g, cg);
      w = {std::min(ef.lo, eg.lo), std::max(ef.hi, eg.hi)};
    }
    const std::size_t n = grid_or(c, 101);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) xs[i] = w.lo + (w.hi - w.lo) * static_cast<double>(i) / (n - 1.0);
    if (c.order == "stochastic") {
      v = stochastic_order(truncated_cdf(in.dist, cf), truncated_cdf(g, cg), xs, c.tol);
    } else {
      const auto sample = [&xs](const Distribution& d, Interval iv) {
        const double m = d.prob(iv.lo, iv.hi);
        if (!(m > 0.0)) throw DegenerateIntervalError("conditioning interval has zero mass", m);
        std::vector<double> ys(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
          ys[i] = (xs[i] > iv.lo && xs[i] < iv.hi) ? d.pdf(xs[i]) / m : 0.0;
        }
        return GridFunction(xs, std::move(ys));
      };
      v = likelihood_ratio_order(sample(in.dist, cf), sample(g, cg), c.tol);
    }
  } else {
    throw UsageError("--order must be dispersion, stochastic or likelihood-ratio");
  }

  Output o;
  o.doc = {{"command", "orders"},
           {"input", in.label},
           {"against", g.to_string()},
           {"condition", {json_number(cf.lo), json_number(cf.hi)}},
           {"against_condition", {json_number(cg.lo), json_number(cg.hi)}},
           {"verdict", to_json(v)}};
  o.csv = "order,verdict,margin\n" + fmt::format("{},{},{}\n", to_string(v.order), to_string(v.verdict),
                                                  v.witness ? num(v.witness->margin) : "");
  o.text = fmt::format("{} on ({}, {}) against {} on ({}, {})\n", in.label, num(cf.lo), num(cf.hi), g.to_string(),
                       num(cg.lo), num(cg.hi)) +
           order_text(v);
  return o;
}

// ---------------------------------------------------------------------------
// diff

Output cmd_diff(const Config& c) {
  const Input in = load_input(c);
  require_continuous(in, "diff");
  Interval box;
  if (!c.box.empty()) {
    box = parse_pair(c.box, "--box");
  } else if (c.b > 0.0) {
    box = {0.0, c.b};
  } else {
    throw UsageError("diff needs --b B or --box lo,hi");
  }
  const DiffDensity dd = diff_density(in.dist, box, c.n_u);
  const OrderVerdict mono = g_monotone_check(dd, c.tol);
  const std::size_t half = dd.u_grid.size() / 2;

  Output o;
  o.doc = {{"command", "diff"},
           {"input", in.label},
           {"box", {json_number(dd.box.lo), json_number(dd.box.hi)}},
           {"n_u", dd.u_grid.size()},
           {"g_at_zero", json_number(dd.g_values[half])},
           {"normalization", json_number(dd.normalization)},
           {"parent_log_concave", to_string(dd.parent_log_concave)},
           {"g_nonincreasing", to_json(mono)}};
  o.text = fmt::format(
      "density of X1 - X2 given both in ({}, {}) for {}\n"
      "g(0) = {}, integral = {}, parent density {}\n"
      "g nonincreasing in |u|: {}",
      num(dd.box.lo), num(dd.box.hi), in.label, num(dd.g_values[half]), num(dd.normalization),
      to_string(dd.parent_log_concave), order_text(mono));
  if (dd.parent_log_concave != ConcavityStatus::kLogConcave) {
    o.text += "warning: parent density is not log-concave on the box; monotonicity of g is not guaranteed\n";
  }

  if (!c.b_grid.empty()) {
    std::vector<double> bs = parse_list(c.b_grid, "--b-grid");
    std::sort(bs.begin(), bs.end());
    const std::size_t n = grid_or(c, 33);
    std::vector<double> us(n);
    for (std::size_t i = 0; i < n; ++i) us[i] = bs.back() * static_cast<double>(i) / static_cast<double>(n);
    const OrderVerdict tp2 = tp2_check(diff_density_kernel(in.dist, us, bs), c.tol);
    o.doc["tp2"] = to_json(tp2);
    o.text += "kernel g(u; b) over the b grid\n" + order_text(tp2);
  }
  o.csv = "u,g\n";
  for (std::size_t i = 0; i < dd.u_grid.size(); ++i) o.csv += num(dd.u_grid[i]) + "," + num(dd.g_values[i]) + "\n";
  return o;
}

// ---------------------------------------------------------------------------
// entropy

Output cmd_entropy(const Config& c) {
  if (c.b_grid.empty()) throw UsageError("entropy needs --b-grid b1,b2,...");
  const Input in = load_input(c);
  require_continuous(in, "entropy");
  const std::vector<double> bs = parse_list(c.b_grid, "--b-grid");
  for (std::size_t i = 0; i < bs.size(); ++i) {
    if (!(bs[i] > c.box_lo) || (i > 0 && !(bs[i] > bs[i - 1]))) {
      throw UsageError("--b-grid must increase and exceed --box-lo");
    }
  }
  std::function<IntegralValue(double)> eval;
  std::string quantity;
  if (c.phi == "entropy") {
    quantity = "entropy of X1 - X2 (nats)";
    eval = [&](double b) { return shannon_entropy_u(in.dist, Interval{c.box_lo, b}); };
  } else {
    RealFn phi;
    if (c.phi == "gini") {
      phi = [](double u) { return std::abs(u); };
    } else if (c.phi == "half-square") {
      phi = [](double u) { return 0.5 * u * u; };
    } else if (c.phi == "fourth") {
      phi = [](double u) { return u * u * u * u; };
    } else {
      throw UsageError("--phi must be entropy, gini, half-square or fourth");
    }
    quantity = "E phi(X1 - X2) with phi = " + c.phi;
    eval = [&, phi](double b) { return expected_phi(in.dist, Interval{c.box_lo, b}, phi); };
  }

  std::vector<IntegralValue> rows;
  for (double b : bs) rows.push_back(eval(b));

  Output o;
  json jr = json::array();
  o.csv = "b,value,error_estimate\n";
  o.text = fmt::format("{} for {} on boxes ({}, b)\n{:>12} {:>24} {:>14}\n", quantity, in.label, num(c.box_lo), "b",
                       "value", "error");
  for (const auto& r : rows) {
    jr.push_back(to_json(r));
    o.csv += fmt::format("{},{},{}\n", num(r.box_hi), num(r.value), num(r.error_estimate));
    o.text += fmt::format("{:>12} {:>24} {:>14}\n", num(r.box_hi), num(r.value), num(r.error_estimate));
  }
  o.doc = {{"command", "entropy"},
           {"input", in.label},
           {"quantity", c.phi},
           {"box_lo", json_number(c.box_lo)},
           {"rows", std::move(jr)},
           {"monotone", nullptr}};
  if (rows.size() >= 2) {
    MonotonicityReport rep;
    rep.claim = quantity + " is nondecreasing in b";
    rep.tolerance = c.tol;
    rep.grid_spec = std::to_string(rows.size()) + " upper box ends";
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double m = rows[i].value - rows[i - 1].value;
      if (m < -c.tol) {
        rep.add_witness({c.box_lo, rows[i - 1].box_hi, c.box_lo, rows[i].box_hi, rows[i - 1].value, rows[i].value, m});
      }
    }
    o.doc["monotone"] = to_json(rep);
    o.text += report_text(rep);
  }
  return o;
}

// ---------------------------------------------------------------------------
// embed

Output cmd_embed(const Config& c) {
  const Input in = load_input(c);
  if (!in.pmf) throw UsageError("embed needs a lattice input (--pmf-file or a discrete --dist)");
  const PmfTable& t = *in.pmf;
  const Distribution y = embed(t);

  Output o;
  json rows = json::array();
  o.csv = "k,y_lo,y_hi,density\n";
  for (std::size_t i = 0; i < t.ks.size(); ++i) {
    const double k = static_cast<double>(t.ks[i]);
    rows.push_back({{"k", t.ks[i]}, {"y_lo", k - 0.5}, {"y_hi", k + 0.5}, {"density", json_number(t.ps[i])}});
    o.csv += fmt::format("{},{},{},{}\n", t.ks[i], num(k - 0.5), num(k + 0.5), num(t.ps[i]));
  }
  o.doc = {{"command", "embed"},
           {"input", in.label},
           {"dropped_tail_mass", json_number(t.dropped_tail_mass)},
           {"blocks", std::move(rows)},
           {"link", nullptr}};
  o.text = fmt::format("step density for {}: {} unit blocks on ({}, {}], dropped tail mass {}\n", in.label,
                       t.ks.size(), num(t.ks.front() - 0.5), num(t.ks.back() + 0.5), num(t.dropped_tail_mass));
  if (!c.link.empty()) {
    const std::vector<double> ab = parse_list(c.link, "--link");
    if (ab.size() != 2 || ab[0] != std::floor(ab[0]) || ab[1] != std::floor(ab[1])) {
      throw UsageError("--link expects two integers a,b");
    }
    const LinkCheck lc = link_check_detail(t, static_cast<long>(ab[0]), static_cast<long>(ab[1]));
    o.doc["link"] = to_json(lc);
    o.text += fmt::format(
        "var(X | {} <= X <= {}) = {}\nvar(Y | {} < Y <= {}) = {}\nresidual after the 1/12 correction: {}\n",
        num(ab[0]), num(ab[1]), num(lc.discrete_variance), num(ab[0] - 0.5), num(ab[1] + 0.5),
        num(lc.embedded_variance), num(lc.residual));
  }
  return o;
}

// ---------------------------------------------------------------------------
// counterexample

constexpr double kConfirmMargin = -1e-3;

struct Candidate {
  std::vector<double> weights;
  std::vector<double> locations;
  double sigma = 0.0;

  Distribution build() const {
    std::vector<MixtureComponent> cs;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      cs.push_back({weights[i], Distribution::normal(locations[i], sigma)});
    }
    return cs.size() == 1 ? cs[0].dist : Distribution::mixture(std::move(cs));
  }
};

std::vector<Candidate> search_space(int components, bool symmetric) {
  const std::vector<double> sigmas = {0.01, 0.03, 0.1};
  std::vector<Candidate> out;
  if (symmetric) {
    for (double s : sigmas) {
      for (double l : {10.0, 5.0, 1.0}) out.push_back({{0.5, 0.5}, {-l, l}, s});
    }
    return out;
  }
  switch (components) {
    case 1:
      for (double s : {0.01, 0.03, 0.1, 1.0}) out.push_back({{1.0}, {0.0}, s});
      break;
    case 2:
      for (double s : sigmas) {
        for (const auto& w : std::vector<std::vector<double>>{{0.5, 0.5}, {0.25, 0.75}, {0.75, 0.25}}) {
          for (double l : {10.0, 5.0, 2.0}) out.push_back({w, {0.0, l}, s});
        }
      }
      break;
    case 3:
      for (double s : sigmas) {
        for (const auto& w : std::vector<std::vector<double>>{
                 {1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.25, 0.25}, {0.25, 0.5, 0.25}}) {
          for (double l : {10.0, 5.0, 2.0}) {
            for (double d : {0.1, 0.5, 1.0}) out.push_back({w, {0.0, l, l + d}, s});
          }
        }
      }
      break;
    default:
      throw UsageError("--components must be 1, 2 or 3");
  }
  return out;
}

std::optional<MonotonicityWitness> confirm(const Distribution& d, const MonotonicityReport& rep) {
  std::vector<MonotonicityWitness> ws = rep.witnesses;
  std::stable_sort(ws.begin(), ws.end(), [](const auto& x, const auto& y) { return x.margin < y.margin; });
  for (const auto& w : ws) {
    try {
      const double v1 = truncated_moments_oracle(d, {w.a1, w.b1}).variance;
      const double v2 = truncated_moments_oracle(d, {w.a2, w.b2}).variance;
      if (v2 - v1 < kConfirmMargin) return MonotonicityWitness{w.a1, w.b1, w.a2, w.b2, v1, v2, v2 - v1};
    } catch (const DegenerateIntervalError&) {
    }
  }
  return std::nullopt;
}

Output cmd_counterexample(const Config& c) {
  const std::vector<Candidate> space = search_space(c.components, c.symmetric);
  const std::size_t n = grid_or(c, 21);
  std::string space_desc =
      c.symmetric ? "two equal normal spikes at +-L, L in {10, 5, 1}, sd in {0.01, 0.03, 0.1}, symmetric windows"
                  : fmt::format("{}-component normal mixtures, sd in {{0.01, 0.03, 0.1}}, coarse location/weight grid",
                                c.components);
  std::size_t tried = 0;
  for (const Candidate& cand : space) {
    ++tried;
    const Distribution d = cand.build();
    MonotonicityReport rep;
    if (c.symmetric) {
      const double l = cand.locations.back();
      std::vector<double> hw(n);
      for (std::size_t i = 0; i < n; ++i) hw[i] = (l + 1.0) * static_cast<double>(i + 1) / static_cast<double>(n);
      rep = symmetric_sweep(d, 0.0, hw, c.tol);
    } else {
      const auto [mn, mx] = std::minmax_element(cand.locations.begin(), cand.locations.end());
      SweepOptions opts;
      for (std::size_t i = 0; i + 1 < cand.locations.size(); ++i) {
        opts.extra_points.push_back(0.5 * (cand.locations[i] + cand.locations[i + 1]));
      }
      rep = monotonicity_sweep(d, {*mn - 1.0, *mx + 1.0}, n, n, c.tol, opts);
    }
    if (rep.verdict == Verdict::kHolds) continue;
    const std::optional<MonotonicityWitness> w = confirm(d, rep);
    if (!w) continue;

    Output o;
    o.doc = {{"command", "counterexample"},
             {"search_space", space_desc},
             {"candidates_tried", tried},
             {"found", true},
             {"mixture", d.to_string()},
             {"confirmed_witness", to_json(*w)},
             {"report", to_json(rep)}};
    o.csv = report_csv(rep);
    o.text = fmt::format(
        "counterexample to partial monotonicity of the conditional variance after {} candidates\n"
        "mixture: {}\nconfirmed by direct integration:\n{}",
        tried, d.to_string(), witness_text(*w)) +
             report_text(rep);
    return o;
  }
  Output o;
  o.code = kExhausted;
  o.doc = {{"command", "counterexample"},
           {"search_space", space_desc},
           {"candidates_tried", tried},
           {"found", false},
           {"message", "no counterexample found in search space"}};
  o.csv = "a_inner,b_inner,a_outer,b_outer,var_inner,var_outer,margin\n";
  o.text = fmt::format("no counterexample found in search space ({} candidates: {})\n", tried, space_desc);
  return o;
}

// ---------------------------------------------------------------------------

void emit(const Output& o, const Config& c, std::ostream& out) {
  std::string body;
  if (c.format == "json") {
    body = o.doc.dump(2) + "\n";
  } else if (c.format == "csv") {
    body = o.csv;
  } else {
    body = o.text;
  }
  if (c.out_path.empty()) {
    out << body;
    return;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) throw UsageError("cannot open --out file " + c.out_path);
  f << body;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Truncated moments, log-concavity conditions, stochastic orders and difference entropies.", "uo"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  app.add_option("--dist", c.dist_spec, "Distribution, e.g. normal:0,1 or mixture:0.5*normal:0,1|0.5*cauchy");
  app.add_option("--pdf-file", c.pdf_file, "CSV density table with header x,pdf");
  app.add_option("--pmf-file", c.pmf_file, "CSV pmf table with header k,pmf");
  app.add_option("--tol", c.tol, "Verdict tolerance")->check(CLI::PositiveNumber);
  app.add_option("--grid", c.grid, "Grid points per axis (command default if omitted)");
  app.add_option("--out", c.out_path, "Write the report to this file");
  app.add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv", "text"}));

  auto* moments = app.add_subcommand("moments", "Conditional mean and variance on an interval, both routes");
  moments->add_option("--interval", c.interval, "lo,hi");

  auto* sweep = app.add_subcommand("sweep", "Partial monotonicity sweep of the conditional variance");
  sweep->add_option("--window", c.window, "lo,hi");
  sweep->add_option("--spacing", c.spacing, "quantile or uniform");
  sweep->add_option("--direction", c.direction, "both, upper or lower");
  sweep->add_option("--route", c.route, "formula or oracle");

  auto* conditions = app.add_subcommand("conditions", "Log-concavity conditions for each endpoint");
  conditions->add_option("--window", c.window, "lo,hi");

  auto* orders = app.add_subcommand("orders", "Dispersion, stochastic or likelihood-ratio order");
  orders->add_option("--against", c.against, "Second distribution");
  orders->add_option("--order", c.order, "dispersion, stochastic or likelihood-ratio");
  orders->add_option("--condition", c.condition, "Condition the first distribution on lo,hi");
  orders->add_option("--against-condition", c.against_condition, "Condition the second distribution on lo,hi");
  orders->add_option("--alphas", c.alphas, "Probability levels for the dispersion order");
  orders->add_option("--window", c.window, "Probe range lo,hi");

  auto* diff = app.add_subcommand("diff", "Density of the difference of two conditioned copies");
  diff->add_option("--b", c.b, "Box (0, b)");
  diff->add_option("--box", c.box, "Box lo,hi");
  diff->add_option("--n-u", c.n_u, "u grid size (odd)");
  diff->add_option("--b-grid", c.b_grid, "Upper box ends for the total positivity check");

  auto* entropy = app.add_subcommand("entropy", "Entropy or E phi of the difference over a grid of boxes");
  entropy->add_option("--b-grid", c.b_grid, "b1,b2,...");
  entropy->add_option("--box-lo", c.box_lo, "Lower end of every box");
  entropy->add_option("--phi", c.phi, "entropy, gini, half-square or fourth");

  auto* embed_cmd = app.add_subcommand("embed", "Step-density embedding of a lattice distribution");
  embed_cmd->add_option("--link", c.link, "Integer window a,b for the variance link check");

  auto* counter = app.add_subcommand("counterexample", "Search normal mixtures for a variance decrease");
  counter->add_option("--components", c.components, "1, 2 or 3");
  counter->add_flag("--symmetric", c.symmetric, "Two symmetric spikes, symmetric windows");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o;
    std::ostringstream e2;
    const int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? kOk : kUsage;
  }

  try {
    Output o;
    if (moments->parsed()) {
      o = cmd_moments(c);
    } else if (sweep->parsed()) {
      o = cmd_sweep(c);
    } else if (conditions->parsed()) {
      o = cmd_conditions(c);
    } else if (orders->parsed()) {
      o = cmd_orders(c);
    } else if (diff->parsed()) {
      o = cmd_diff(c);
    } else if (entropy->parsed()) {
      o = cmd_entropy(c);
    } else if (embed_cmd->parsed()) {
      o = cmd_embed(c);
    } else {
      o = cmd_counterexample(c);
    }
    emit(o, c, out);
    if (o.code == kExhausted) err << "no counterexample found in search space\n";
    return o.code;
  } catch (const DegenerateIntervalError& e) {
    err << "degenerate input: " << e.what() << "\n";
    return kDegenerate;
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace uo::cli
