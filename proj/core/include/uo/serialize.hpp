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

#ifndef UO_SERIALIZE_HPP_
#define UO_SERIALIZE_HPP_

#include <nlohmann/json.hpp>

#include "uo/diff_uncertainty.hpp"
#include "uo/discrete_embed.hpp"
#include "uo/logconcavity.hpp"
#include "uo/orders.hpp"
#include "uo/trunc_moments.hpp"

namespace uo {

// JSON views of report types. Non-finite numbers are written as the strings
// "inf", "-inf" and "nan".
nlohmann::json to_json(const TruncatedMoments& m);
nlohmann::json to_json(const MonotonicityWitness& w);
nlohmann::json to_json(const MonotonicityReport& r);
nlohmann::json to_json(const ConcavityVerdict& v);
nlohmann::json to_json(const OrderVerdict& v);
nlohmann::json to_json(const LinkCheck& c);
nlohmann::json to_json(const SlopeCrossCheck& c);
nlohmann::json to_json(const IntegralValue& v);
nlohmann::json to_json(const EntropyChain& c);
nlohmann::json to_json(const PmfTable& t);

nlohmann::json json_number(double x);

}  // namespace uo

#endif  // UO_SERIALIZE_HPP_
