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

#include "uo/distribution_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <vector>

#include "uo/errors.hpp"

namespace uo {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view s, int line = 0) {
  s = trim(s);
  if (s.empty()) throw ParseError("empty numeric field", line);
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    // Allow simple fractions such as 1/3 in mixture weights.
    const auto slash = s.find('/');
    if (slash != std::string_view::npos) {
      const double num = parse_double(s.substr(0, slash), line);
      const double den = parse_double(s.substr(slash + 1), line);
      if (den == 0.0) throw ParseError("division by zero in '" + std::string(s) + "'", line);
      return num / den;
    }
    throw ParseError("not a number: '" + std::string(s) + "'", line);
  }
  return v;
}

long parse_long(std::string_view s, int line) {
  s = trim(s);
  long v = 0;
  const char* first = s.data();
  if (!s.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("not an integer: '" + std::string(s) + "'", line);
  }
  return v;
}

std::vector<double> parse_params(std::string_view s) {
  std::vector<double> out;
  if (trim(s).empty()) return out;
  for (auto part : split(s, ',')) out.push_back(parse_double(part));
  return out;
}

void expect_count(const std::string& fam, const std::vector<double>& p, std::size_t lo, std::size_t hi) {
  if (p.size() < lo || p.size() > hi) {
    throw ParseError(fam + ": expected " + std::to_string(lo) +
                     (hi != lo ? "-" + std::to_string(hi) : std::string()) + " parameters, got " +
                     std::to_string(p.size()));
  }
}

std::vector<std::string_view> read_rows(std::istream& in, std::vector<std::string>& storage) {
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    storage.push_back(line);
  }
  std::vector<std::string_view> rows(storage.begin(), storage.end());
  return rows;
}

std::string lower(std::string_view s) {
  std::string r(s);
  std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return std::tolower(c); });
  return r;
}

void check_header(std::string_view header, const char* a, const char* b) {
  const auto cols = split(header, ',');
  if (cols.size() != 2 || lower(trim(cols[0])) != a || lower(trim(cols[1])) != b) {
    throw ParseError(std::string("expected header '") + a + "," + b + "'", 1);
  }
}

}  // namespace

Distribution parse_distribution(std::string_view spec) {
  spec = trim(spec);
  if (spec.empty()) throw ParseError("empty distribution spec");
  const auto colon = spec.find(':');
  const std::string fam = lower(trim(spec.substr(0, colon)));
  const std::string_view rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  if (fam == "mixture" || fam == "mix") {
    std::vector<MixtureComponent> comps;
    for (auto part : split(rest, '|')) {
      part = trim(part);
      const auto star = part.find('*');
      if (star == std::string_view::npos) {
        throw ParseError("mixture component '" + std::string(part) + "' must be WEIGHT*SPEC");
      }
      comps.push_back({parse_double(part.substr(0, star)), parse_distribution(part.substr(star + 1))});
    }
    // Fractions like 1/3 typed by hand rarely sum to 1 exactly.
    double total = 0.0;
    for (const auto& c : comps) total += c.weight;
    if (std::abs(total - 1.0) > 1e-9) throw ParseError("mixture weights must sum to 1");
    for (auto& c : comps) c.weight /= total;
    return Distribution::mixture(std::move(comps));
  }

  const auto p = parse_params(rest);
  if (fam == "normal" || fam == "gaussian") {
    expect_count(fam, p, 0, 2);
    return Distribution::normal(p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0);
  }
  if (fam == "uniform") {
    expect_count(fam, p, 0, 2);
    return Distribution::uniform(p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0);
  }
  if (fam == "logistic") {
    expect_count(fam, p, 0, 2);
    return Distribution::logistic(p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0);
  }
  if (fam == "laplace" || fam == "double-exponential" || fam == "double_exponential") {
    expect_count(fam, p, 0, 2);
    return Distribution::double_exponential(p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0);
  }
  if (fam == "weibull") {
    expect_count(fam, p, 1, 2);
    return Distribution::weibull(p[0], p.size() > 1 ? p[1] : 1.0);
  }
  if (fam == "gamma") {
    expect_count(fam, p, 1, 2);
    return Distribution::gamma(p[0], p.size() > 1 ? p[1] : 1.0);
  }
  if (fam == "lognormal") {
    expect_count(fam, p, 0, 2);
    return Distribution::lognormal(p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0);
  }
  if (fam == "cauchy") {
    expect_count(fam, p, 0, 2);
    return Distribution::cauchy(p.size() > 0 ? p[0] : 0.0, p.size() > 1 ? p[1] : 1.0);
  }
  if (fam == "t" || fam == "student-t" || fam == "student_t") {
    expect_count(fam, p, 1, 1);
    return Distribution::student_t(p[0]);
  }
  if (fam == "geometric") {
    expect_count(fam, p, 1, 1);
    return Distribution::geometric(p[0]);
  }
  if (fam == "poisson") {
    expect_count(fam, p, 1, 1);
    return Distribution::poisson(p[0]);
  }
  throw ParseError("unknown distribution family '" + fam + "'");
}

Distribution read_density_csv(std::istream& in) {
  std::vector<std::string> storage;
  const auto rows = read_rows(in, storage);
  if (rows.empty()) throw ParseError("empty density file");
  check_header(rows[0], "x", "pdf");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i + 1);
    if (trim(rows[i]).empty()) continue;
    const auto cols = split(rows[i], ',');
    if (cols.size() != 2) throw ParseError("expected two columns", line);
    const double x = parse_double(cols[0], line);
    const double y = parse_double(cols[1], line);
    if (!std::isfinite(x) || !std::isfinite(y) || y < 0.0) {
      throw ParseError("density values must be finite and nonnegative", line);
    }
    if (!xs.empty() && x <= xs.back()) throw ParseError("x must be strictly increasing", line);
    xs.push_back(x);
    ys.push_back(y);
  }
  if (xs.size() < 2) throw ParseError("density file needs at least two rows");
  try {
    return Distribution::tabulated(std::move(xs), std::move(ys));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

Distribution load_density_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open density file '" + path + "'");
  return read_density_csv(in);
}

PmfTable read_pmf_csv(std::istream& in) {
  std::vector<std::string> storage;
  const auto rows = read_rows(in, storage);
  if (rows.empty()) throw ParseError("empty pmf file");
  check_header(rows[0], "k", "pmf");
  std::map<long, double> entries;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const int line = static_cast<int>(i + 1);
    if (trim(rows[i]).empty()) continue;
    const auto cols = split(rows[i], ',');
    if (cols.size() != 2) throw ParseError("expected two columns", line);
    const long k = parse_long(cols[0], line);
    const double p = parse_double(cols[1], line);
    if (!std::isfinite(p) || p < 0.0) throw ParseError("pmf values must be finite and nonnegative", line);
    if (!entries.emplace(k, p).second) throw ParseError("duplicate k = " + std::to_string(k), line);
  }
  if (entries.empty()) throw ParseError("pmf file has no rows");
  double total = 0.0;
  for (const auto& [k, p] : entries) total += p;
  if (std::abs(total - 1.0) > 1e-6) {
    throw ParseError("pmf values sum to " + std::to_string(total) + ", expected 1");
  }
  std::vector<long> ks;
  std::vector<double> ps;
  for (const auto& [k, p] : entries) {
    ks.push_back(k);
    ps.push_back(p / total);
  }
  return PmfTable::make(std::move(ks), std::move(ps));
}

PmfTable load_pmf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open pmf file '" + path + "'");
  return read_pmf_csv(in);
}

}  // namespace uo
