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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "steerlab/json_io.hpp"
#include "test_util.hpp"

using namespace steerlab;
using namespace test_util;
using nlohmann::json;

TEST_CASE("state round trip through the matrix schema") {
  std::mt19937_64 rng(151);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat4 rho = random_density(rng);
    const Mat4 back = state_from_json(state_to_json(rho));
    CHECK((rho - back).norm() < 1e-15);
  }
}

TEST_CASE("pauli schema composes the state") {
  const json j = {{"pauli",
                   {{"a", {0.0, 0.0, 0.0}},
                    {"b", {0.0, 0.0, 0.0}},
                    {"T",
                     {{-0.5, 0.0, 0.0}, {0.0, -0.5, 0.0}, {0.0, 0.0, -0.5}}}}}};
  CHECK((state_from_json(j) - werner(0.5)).norm() < 1e-12);
}

TEST_CASE("schema violations are rejected") {
  CHECK_THROWS_AS(state_from_json(json::object()), SchemaError);
  CHECK_THROWS_AS(state_from_json(json{{"matrix", 3}}), SchemaError);
  CHECK_THROWS_AS(state_from_json(json::array()), SchemaError);

  json both = state_to_json(werner(0.5));
  both["pauli"] = {{"a", {0, 0, 0}}, {"b", {0, 0, 0}}, {"T", json::array()}};
  CHECK_THROWS_AS(state_from_json(both), SchemaError);

  json bad_entry = state_to_json(werner(0.5));
  bad_entry["matrix"][0][0] = 1.0;  // not an [re, im] pair
  CHECK_THROWS_AS(state_from_json(bad_entry), SchemaError);
}

TEST_CASE("povm inputs") {
  const json list = json::array(
      {{{"k", 1.0}, {"m", {0.0, 0.0, 0.5}}}, {{"k", 1.0}, {"m", {0.5, 0.0, 0.0}}}});
  const auto parsed = povm_input_from_json(list);
  REQUIRE(std::holds_alternative<std::vector<DichotomicQubitPOVM>>(parsed));
  const auto& povms = std::get<std::vector<DichotomicQubitPOVM>>(parsed);
  CHECK(povms.size() == 2);
  CHECK(povms[0].k == doctest::Approx(1.0));
  CHECK(povms[0].m.isApprox(Vec3(0, 0, 0.5)));

  const auto family =
      povm_input_from_json(json{{"family", "unsharp"}, {"eta", 0.5}});
  REQUIRE(std::holds_alternative<PovmFamily>(family));
  CHECK(std::get<PovmFamily>(family).global_margin.value() ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(povm_input_from_json(json{{"family", "mystery"}}),
                  SchemaError);
  CHECK_THROWS_AS(povm_input_from_json(json::array()), SchemaError);
}

TEST_CASE("directions parsing") {
  const std::vector<Vec3> dirs =
      directions_from_json(json::array({{0, 0, 1}, {1, 0, 0}}));
  CHECK(dirs.size() == 2);
  CHECK(dirs[0].isApprox(Vec3(0, 0, 1)));
  CHECK_THROWS_AS(directions_from_json(json::array()), SchemaError);
  CHECK_THROWS_AS(directions_from_json(json::array({{1, 0}})), SchemaError);
}

TEST_CASE("report serializations carry the expected fields") {
  CriterionReport rep;
  rep.max_value = 1.0;
  rep.argmax = Vec3(0, 0, 1);
  rep.certified_upper_bound = 1.0;
  rep.verdict = Verdict::CertifiedUnsteerable;
  rep.method = CriterionMethod::AxialClosedForm;
  rep.grid_n = 20000;
  rep.refine_iters = 200;
  const json j = to_json(rep);
  CHECK(j["verdict"] == "CertifiedUnsteerable");
  CHECK(j["method"] == "AxialClosedForm");
  CHECK(j["max_value"] == doctest::Approx(1.0));

  LhsVerificationReport lhs;
  lhs.directions.push_back({Vec3(0, 0, 1), 1e-12, 2e-3});
  lhs.bob_marginal_dist = 1e-3;
  lhs.n_samples = 1000;
  lhs.seed = 42;
  const json lj = to_json(lhs);
  CHECK(lj["n"] == 1000);
  CHECK(lj["seed"] == 42);
  CHECK(lj["directions"].size() == 1);

  Decomposition d{0.5, 0.25 * Mat4::Identity(), 0.25 * Mat4::Identity()};
  const json dj = to_json(d);
  CHECK(dj["p"] == doctest::Approx(0.5));
  CHECK(dj["sigma"].size() == 4);
  CHECK(dj["sigma"][0][0].size() == 2);
}
