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

#include "steerlab/json_io.hpp"

namespace steerlab {

namespace {

using nlohmann::json;

double number_at(const json& j, const char* what) {
  if (!j.is_number()) throw SchemaError(std::string(what) + ": expected number");
  return j.get<double>();
}

Complex complex_entry(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw SchemaError("matrix entries must be [re, im] pairs");
  return Complex(number_at(j[0], "re"), number_at(j[1], "im"));
}

Vec3 vec3_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3)
    throw SchemaError(std::string(what) + ": expected a 3-vector");
  return Vec3(number_at(j[0], what), number_at(j[1], what),
              number_at(j[2], what));
}

json vec3_to(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

}  // namespace

Mat4 state_from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("state: expected a JSON object");
  const bool has_matrix = j.contains("matrix");
  const bool has_pauli = j.contains("pauli");
  if (has_matrix == has_pauli)
    throw SchemaError(
        "state: exactly one of \"matrix\" or \"pauli\" must be present");

  if (has_matrix) {
    const json& m = j["matrix"];
    if (!m.is_array() || m.size() != 4)
      throw SchemaError("state: \"matrix\" must be a 4x4 array");
    Mat4 rho;
    for (int r = 0; r < 4; ++r) {
      if (!m[r].is_array() || m[r].size() != 4)
        throw SchemaError("state: \"matrix\" must be a 4x4 array");
      for (int c = 0; c < 4; ++c) rho(r, c) = complex_entry(m[r][c]);
    }
    return rho;
  }

  const json& p = j["pauli"];
  if (!p.is_object() || !p.contains("a") || !p.contains("b") ||
      !p.contains("T"))
    throw SchemaError("state: \"pauli\" needs fields a, b, T");
  PauliForm form;
  form.a = vec3_from(p["a"], "pauli.a");
  form.b = vec3_from(p["b"], "pauli.b");
  if (!p["T"].is_array() || p["T"].size() != 3)
    throw SchemaError("state: pauli.T must be a 3x3 array");
  for (int r = 0; r < 3; ++r) {
    if (!p["T"][r].is_array() || p["T"][r].size() != 3)
      throw SchemaError("state: pauli.T must be a 3x3 array");
    for (int c = 0; c < 3; ++c)
      form.T(r, c) = number_at(p["T"][r][c], "pauli.T");
  }
  return pauli_compose(form);
}

namespace {
template <typename M>
json matrix_json_impl(const M& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(row);
  }
  return rows;
}
}  // namespace

json matrix_to_json(const Mat2& m) { return matrix_json_impl(m); }
json matrix_to_json(const Mat4& m) { return matrix_json_impl(m); }

json state_to_json(const Mat4& rho) { return json{{"matrix", matrix_to_json(rho)}}; }

std::vector<Vec3> directions_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw SchemaError("directions: expected a non-empty array of 3-vectors");
  std::vector<Vec3> dirs;
  dirs.reserve(j.size());
  for (const json& entry : j) dirs.push_back(vec3_from(entry, "direction"));
  return dirs;
}

std::variant<std::vector<DichotomicQubitPOVM>, PovmFamily> povm_input_from_json(
    const json& j) {
  if (j.is_array()) {
    if (j.empty()) throw SchemaError("povm list: empty");
    std::vector<DichotomicQubitPOVM> povms;
    povms.reserve(j.size());
    for (const json& entry : j) {
      if (!entry.is_object() || !entry.contains("k") || !entry.contains("m"))
        throw SchemaError("povm list: members need fields k and m");
      povms.push_back(DichotomicQubitPOVM{number_at(entry["k"], "povm.k"),
                                          vec3_from(entry["m"], "povm.m")});
    }
    return povms;
  }
  if (j.is_object() && j.contains("family")) {
    const std::string name = j["family"].get<std::string>();
    if (name == "unsharp") {
      if (!j.contains("eta")) throw SchemaError("unsharp family: missing eta");
      return unsharp_family(number_at(j["eta"], "eta"));
    }
    throw SchemaError("unknown povm family: " + name);
  }
  throw SchemaError("povm input: expected an array or a family object");
}

json to_json(const CriterionReport& rep) {
  return json{{"max_value", rep.max_value},
              {"argmax", vec3_to(rep.argmax)},
              {"certified_upper_bound", rep.certified_upper_bound},
              {"verdict", to_string(rep.verdict)},
              {"method", to_string(rep.method)},
              {"grid_n", rep.grid_n},
              {"refine_iters", rep.refine_iters}};
}

json to_json(const LhsVerificationReport& rep) {
  json dirs = json::array();
  for (const DirectionCheck& c : rep.directions)
    dirs.push_back(json{{"direction", vec3_to(c.direction)},
                        {"analytic_dist", c.analytic_dist},
                        {"empirical_dist", c.empirical_dist}});
  return json{{"directions", dirs},
              {"bob_marginal_dist", rep.bob_marginal_dist},
              {"n", rep.n_samples},
              {"seed", rep.seed}};
}

json to_json(const Decomposition& d) {
  return json{{"p", d.p},
              {"sigma", matrix_to_json(d.sigma)},
              {"rho_sep", matrix_to_json(d.rho_sep)}};
}

json to_json(const JmReport& rep) {
  return json{{"all_pass", rep.all_pass},
              {"worst_margin", rep.worst_margin},
              {"worst_direction", vec3_to(rep.worst_direction)},
              {"worst_margin_relabeled", rep.worst_margin_relabeled},
              {"certification", rep.certification == JmCertification::Certified
                                    ? "certified"
                                    : "sampled-only"},
              {"n_samples", rep.n_samples}};
}

json to_json(const CanonicalizationRecord& rec) {
  json ra = json::array();
  json rb = json::array();
  for (int r = 0; r < 3; ++r) {
    json row_a = json::array();
    json row_b = json::array();
    for (int c = 0; c < 3; ++c) {
      row_a.push_back(rec.alice_rotation(r, c));
      row_b.push_back(rec.bob_rotation(r, c));
    }
    ra.push_back(row_a);
    rb.push_back(row_b);
  }
  return json{{"a", vec3_to(rec.canonical.a)},
              {"t", vec3_to(rec.canonical.t)},
              {"alice_rotation", ra},
              {"bob_rotation", rb},
              {"whitening_applied", rec.whitening_applied}};
}

}  // namespace steerlab
