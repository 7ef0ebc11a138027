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

#ifndef UO_DISCRETE_EMBED_HPP_
#define UO_DISCRETE_EMBED_HPP_

#include "uo/distribution.hpp"
#include "uo/trunc_moments.hpp"

namespace uo {

// Step density equal to p(k) on (k - 0.5, k + 0.5] for every k between the
// smallest and largest table entry (gaps get density 0).
Distribution embed(const PmfTable& pmf);

// Both sides of the variance link on the integer window [a, b].
struct LinkCheck {
  double discrete_mass = 0.0;
  double discrete_mean = 0.0;
  double discrete_variance = 0.0;
  double embedded_mass = 0.0;
  double embedded_mean = 0.0;
  double embedded_variance = 0.0;
  // discrete_variance - embedded_variance + 1/12
  double residual = 0.0;
};

// var(X | a <= X <= b) against var(Y | a - 0.5 < Y <= b + 0.5) for the
// embedded Y. DegenerateIntervalError for a zero-mass window.
LinkCheck link_check_detail(const PmfTable& pmf, long a, long b);
double link_check(const PmfTable& pmf, long a, long b);

// Every integer sub-interval [a, b] of [lo, hi] with positive mass: the
// variance must not drop when b grows (a fixed) or when a shrinks (b fixed).
// Neighbouring positive-mass cells are compared.
MonotonicityReport discrete_monotonicity(const PmfTable& pmf, long lo, long hi, double tol,
                                         SweepDirection direction = SweepDirection::kBoth);

}  // namespace uo

#endif  // UO_DISCRETE_EMBED_HPP_
