// Copyright 2026 The steerlab developers
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

#pragma once

#include <variant>
#include <vector>

#include <json.hpp>

#include "steerlab/convex_witness.hpp"
#include "steerlab/joint_measurability.hpp"
#include "steerlab/lhs_model.hpp"

namespace steerlab {

/// Malformed or schema-violating input document.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State files carry exactly one of:
///   {"matrix": 4x4 nested [re, im] entries}
///   {"pauli": {"a": [3], "b": [3], "T": [3][3]}}
Mat4 state_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const Mat4& rho);

nlohmann::json matrix_to_json(const Mat2& m);
nlohmann::json matrix_to_json(const Mat4& m);

std::vector<Vec3> directions_from_json(const nlohmann::json& j);

/// POVM input: an array of {"k": .., "m": [3]} members, or a built-in family
/// such as {"family": "unsharp", "eta": 0.5}.
std::variant<std::vector<DichotomicQubitPOVM>, PovmFamily> povm_input_from_json(
    const nlohmann::json& j);

nlohmann::json to_json(const CriterionReport& rep);
nlohmann::json to_json(const LhsVerificationReport& rep);
nlohmann::json to_json(const Decomposition& d);
nlohmann::json to_json(const JmReport& rep);
nlohmann::json to_json(const CanonicalizationRecord& rec);

}  // namespace steerlab
