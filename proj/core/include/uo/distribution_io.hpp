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

#ifndef UO_DISTRIBUTION_IO_HPP_
#define UO_DISTRIBUTION_IO_HPP_

#include <istream>
#include <string>
#include <string_view>

#include "uo/distribution.hpp"

namespace uo {

// Parses the `family:param,param` mini-language:
//
//   normal:mu,sigma   uniform:lo,hi   logistic[:mu,s]   laplace[:mu,b]
//   weibull:c[,scale] gamma:c[,scale] lognormal[:mu,sigma]
//   cauchy[:loc,scale]  t:nu  geometric:p  poisson:lambda
//   mixture:w*SPEC|w*SPEC|...
//
// `double-exponential` and `student-t` are accepted as aliases. Throws
// ParseError on malformed input and DomainError on invalid parameters.
Distribution parse_distribution(std::string_view spec);

// CSV with header `x,pdf` and strictly increasing x. Renormalised on load.
Distribution read_density_csv(std::istream& in);
Distribution load_density_csv(const std::string& path);

// CSV with header `k,pmf` and integer k. Sums within 1e-6 of 1 are
// renormalised exactly; anything further off is rejected.
PmfTable read_pmf_csv(std::istream& in);
PmfTable load_pmf_csv(const std::string& path);

}  // namespace uo

#endif  // UO_DISTRIBUTION_IO_HPP_
