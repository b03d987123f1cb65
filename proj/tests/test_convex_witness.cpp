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

#include "steerlab/convex_witness.hpp"
#include "steerlab/family.hpp"
#include "test_util.hpp"

using namespace steerlab;
using namespace test_util;

namespace {

// Equal mixture of the visibility-1/2 isotropic state and the classically
// correlated state; fails the criterion directly but is certifiable by
// decomposition.
Mat4 mixed_witness_state() {
  const Mat4 iso =
      0.5 * (projector(bell_phi_plus()) + 0.25 * Mat4::Identity());
  return 0.5 * iso + 0.5 * classically_correlated_z();
}

}  // namespace

TEST_CASE("the witness example violates the criterion directly") {
  const Mat4 rho = mixed_witness_state();
  const PauliForm f = pauli_decompose(rho);
  CHECK(f.T(2, 2) == doctest::Approx(0.75).epsilon(1e-12));
  const CanonicalState can = canonicalize(rho).canonical;
  const CriterionReport rep = evaluate_criterion(can);
  CHECK(rep.verdict == Verdict::CriterionViolated);
  CHECK(rep.max_value == doctest::Approx(1.5).epsilon(1e-9));
  CHECK(std::abs(rep.argmax[2]) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("extract_sigma recovers the isotropic part") {
  const Mat4 rho = mixed_witness_state();
  const Mat4 iso =
      0.5 * (projector(bell_phi_plus()) + 0.25 * Mat4::Identity());
  const SigmaCandidate cand =
      extract_sigma(rho, 0.5, classically_correlated_z());
  CHECK(cand.validity.valid);
  CHECK((cand.sigma - iso).norm() < 1e-12);

  const SigmaCandidate full = extract_sigma(rho, 1.0, Mat4::Identity());
  CHECK((full.sigma - rho).norm() < 1e-14);

  const Mat4 separable = family_state({0.2, 0.4});
  const SigmaCandidate self = extract_sigma(separable, 0.05, separable);
  CHECK((self.sigma - separable).norm() < 1e-12);

  CHECK_THROWS_AS(extract_sigma(rho, 0.0, classically_correlated_z()),
                  std::invalid_argument);
}

TEST_CASE("extract_sigma reports non-positive candidates without throwing") {
  const Mat4 rho = 0.25 * Mat4::Identity();
  const SigmaCandidate cand =
      extract_sigma(rho, 0.2, classically_correlated_z());
  CHECK_FALSE(cand.validity.valid);
  CHECK(cand.validity.min_eigenvalue < 0.0);
}

TEST_CASE("verify_decomposition accepts the known certificate and rejects fakes") {
  const Mat4 rho = mixed_witness_state();
  const Mat4 iso =
      0.5 * (projector(bell_phi_plus()) + 0.25 * Mat4::Identity());
  const Decomposition good{0.5, iso, classically_correlated_z()};
  CHECK(verify_decomposition(rho, good));

  // Entangled "separable part" must be rejected.
  const Decomposition bad_sep{0.5, iso, projector(bell_phi_plus())};
  CHECK_FALSE(verify_decomposition(rho, bad_sep));

  // Wrong reconstruction must be rejected.
  const Decomposition bad_recon{0.6, iso, classically_correlated_z()};
  CHECK_FALSE(verify_decomposition(rho, bad_recon));

  // Sigma violating the criterion must be rejected.
  const Decomposition bad_sigma{1.0, rho, classically_correlated_z()};
  CHECK_FALSE(verify_decomposition(rho, bad_sigma));
}

TEST_CASE("strengthen certifies the mixed witness state") {
  const Mat4 rho = mixed_witness_state();
  const std::optional<Decomposition> d = strengthen(rho, 10000, 1);
  REQUIRE(d.has_value());
  CHECK(verify_decomposition(rho, *d));
  CHECK(d->p == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(trace_distance(d->rho_sep, classically_correlated_z()) < 1e-6);
}

TEST_CASE("strengthen returns the trivial decomposition for certified states") {
  const Mat4 rho = werner(0.4);
  const std::optional<Decomposition> d = strengthen(rho, 2000, 3);
  REQUIRE(d.has_value());
  CHECK(d->p == doctest::Approx(1.0));
  CHECK((d->sigma - rho).norm() < 1e-14);
  CHECK(verify_decomposition(rho, *d));
}

TEST_CASE("strengthen gives up on the maximally entangled state") {
  const std::optional<Decomposition> d =
      strengthen(projector(bell_phi_plus()), 1500, 5);
  CHECK_FALSE(d.has_value());
}

TEST_CASE("strengthen succeeds across seeds and re-verifies independently") {
  const Mat4 rho = mixed_witness_state();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::optional<Decomposition> d = strengthen(rho, 10000, seed);
    REQUIRE(d.has_value());
    CHECK(verify_decomposition(rho, *d));
  }
}
