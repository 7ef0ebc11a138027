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

// Independent reference computations for the tests. Nothing here calls the
// library's quadrature or moment code.

#ifndef UO_TESTS_SUPPORT_ORACLES_HPP_
#define UO_TESTS_SUPPORT_ORACLES_HPP_

#include <cmath>
#include <functional>
#include <map>
#include <numbers>

namespace uo::oracle {

inline double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
inline double Phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Composite Simpson with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

struct Moments {
  double mass;
  double mean;
  double variance;
};

// Standard normal on (a, b).
inline Moments truncated_normal(double a, double b) {
  const double z = Phi(b) - Phi(a);
  const double m = (phi(a) - phi(b)) / z;
  const double v = 1.0 + (a * phi(a) - b * phi(b)) / z - m * m;
  return {z, m, v};
}

// Standard Cauchy on (a, b) from the antiderivatives of x/(1+x^2) and
// x^2/(1+x^2).
inline Moments truncated_cauchy(double a, double b) {
  const double pi = std::numbers::pi;
  const double mass = (std::atan(b) - std::atan(a)) / pi;
  const double m1 = std::log((1.0 + b * b) / (1.0 + a * a)) / (2.0 * pi * mass);
  const double m2 = ((b - a) - (std::atan(b) - std::atan(a))) / (pi * mass);
  return {mass, m1, m2 - m1 * m1};
}

// Brute-force sums over a point-mass table {k: p} restricted to [a, b].
inline Moments discrete(const std::map<long, double>& pmf, long a, long b) {
  double m0 = 0.0;
  double m1 = 0.0;
  double m2 = 0.0;
  for (const auto& [k, p] : pmf) {
    if (k < a || k > b) continue;
    m0 += p;
    m1 += p * k;
    m2 += p * k * static_cast<double>(k);
  }
  const double mean = m1 / m0;
  return {m0, mean, m2 / m0 - mean * mean};
}

// Entropy of the triangular density on (-b, b).
inline double triangular_entropy(double b) { return 0.5 + std::log(b); }

// Density of the difference of two independent half-normals.
inline double half_normal_difference_density(double u) {
  return std::exp(-u * u / 4.0) * std::erfc(std::abs(u) / 2.0) / std::sqrt(std::numbers::pi);
}

}  // namespace uo::oracle

#endif  // UO_TESTS_SUPPORT_ORACLES_HPP_
