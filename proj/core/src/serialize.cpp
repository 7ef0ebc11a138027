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

#include "uo/serialize.hpp"

#include <cmath>

namespace uo {

using nlohmann::json;

json json_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json to_json(const TruncatedMoments& m) {
  return {{"mass", json_number(m.mass)},
          {"mean", json_number(m.mean)},
          {"variance", json_number(m.variance)},
          {"route", to_string(m.route)},
          {"error_estimate", json_number(m.error_estimate)}};
}

json to_json(const MonotonicityWitness& w) {
  return {{"a1", json_number(w.a1)}, {"b1", json_number(w.b1)},   {"a2", json_number(w.a2)},
          {"b2", json_number(w.b2)}, {"var1", json_number(w.var1)}, {"var2", json_number(w.var2)},
          {"margin", json_number(w.margin)}};
}

json to_json(const MonotonicityReport& r) {
  json ws = json::array();
  for (const auto& w : r.witnesses) ws.push_back(to_json(w));
  return {{"claim", r.claim},
          {"verdict", to_string(r.verdict)},
          {"tolerance", json_number(r.tolerance)},
          {"grid", r.grid_spec},
          {"skipped", r.skipped},
          {"n_violations", r.witnesses.size()},
          {"witnesses", std::move(ws)}};
}

json to_json(const ConcavityVerdict& v) {
  json out = {{"verdict", to_string(v.verdict)},
              {"tol", json_number(v.tolerance)},
              {"excluded_points", v.excluded_points},
              {"witness", nullptr}};
  if (v.witness) {
    out["witness"] = {{"x_minus", json_number(v.witness->x_minus)},
                      {"x_0", json_number(v.witness->x_0)},
                      {"x_plus", json_number(v.witness->x_plus)},
                      {"second_diff", json_number(v.witness->second_diff)}};
  }
  return out;
}

json to_json(const OrderVerdict& v) {
  json out = {{"order", to_string(v.order)},
              {"verdict", to_string(v.verdict)},
              {"grid", v.grid_spec},
              {"tol", json_number(v.tolerance)},
              {"witness", nullptr}};
  if (v.witness) {
    json probes = json::array();
    json values = json::array();
    for (double p : v.witness->probes) probes.push_back(json_number(p));
    for (double x : v.witness->values) values.push_back(json_number(x));
    out["witness"] = {{"probes", std::move(probes)}, {"values", std::move(values)},
                      {"margin", json_number(v.witness->margin)}};
  }
  return out;
}

json to_json(const LinkCheck& c) {
  return {{"discrete", {{"mass", json_number(c.discrete_mass)},
                        {"mean", json_number(c.discrete_mean)},
                        {"variance", json_number(c.discrete_variance)}}},
          {"embedded", {{"mass", json_number(c.embedded_mass)},
                        {"mean", json_number(c.embedded_mean)},
                        {"variance", json_number(c.embedded_variance)}}},
          {"residual", json_number(c.residual)}};
}

json to_json(const SlopeCrossCheck& c) {
  return {{"verdict", to_string(c.verdict)},
          {"lhs", json_number(c.lhs)},
          {"rhs", json_number(c.rhs)},
          {"margin", json_number(c.margin)},
          {"step", json_number(c.step)}};
}

json to_json(const IntegralValue& v) {
  return {{"b", json_number(v.box_hi)},
          {"value", json_number(v.value)},
          {"error_estimate", json_number(v.error_estimate)}};
}

json to_json(const EntropyChain& c) {
  const auto ineq = [](const InequalityCheck& i) {
    return json{{"lhs", json_number(i.lhs)}, {"rhs", json_number(i.rhs)}, {"holds", i.holds}};
  };
  return {{"b1", json_number(c.b1)},
          {"b2", json_number(c.b2)},
          {"tol", json_number(c.tolerance)},
          {"cross_vs_entropy", ineq(c.cross_vs_entropy)},
          {"entropy_vs_cross", ineq(c.entropy_vs_cross)},
          {"entropy_growth", ineq(c.entropy_growth)},
          {"all_hold", c.all_hold()}};
}

json to_json(const PmfTable& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.ks.size(); ++i) rows.push_back({{"k", t.ks[i]}, {"pmf", json_number(t.ps[i])}});
  return {{"rows", std::move(rows)}, {"dropped_tail_mass", json_number(t.dropped_tail_mass)}};
}

}  // namespace uo
