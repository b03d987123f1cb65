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

#include <cstdlib>

#include "steerlab/lhs_model.hpp"
#include "test_util.hpp"

using namespace steerlab;
using namespace test_util;

namespace {

std::vector<Direction> axis_directions() {
  std::vector<Direction> dirs;
  for (int axis = 0; axis < 3; ++axis)
    for (int sign : {1, -1}) {
      Vec3 v = Vec3::Zero();
      v[axis] = sign;
      dirs.emplace_back(v);
    }
  return dirs;
}

const CanonicalState kWernerHalf{Vec3::Zero(), Vec3(0.5, -0.5, 0.5)};

}  // namespace

TEST_CASE("cap_eigenvalues endpoints and the hemisphere") {
  EigPair full = cap_eigenvalues(-1.0);
  CHECK(full.alpha == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(full.beta == doctest::Approx(0.5).epsilon(1e-14));

  EigPair empty = cap_eigenvalues(1.0);
  CHECK(empty.alpha == doctest::Approx(0.0));
  CHECK(empty.beta == doctest::Approx(0.0));

  EigPair hemi = cap_eigenvalues(0.0);
  CHECK(hemi.alpha == doctest::Approx(3.0 / 8).epsilon(1e-14));
  CHECK(hemi.beta == doctest::Approx(1.0 / 8).epsilon(1e-14));

  CHECK_THROWS_AS(cap_eigenvalues(1.5), std::invalid_argument);
}

TEST_CASE("cap eigenvalues agree with direct quadrature of the cap integral") {
  // Independent oracle: integrate (1/4pi) |l><l| over the cap s.l >= c with
  // a fine theta-phi product rule and diagonalize the result.
  const Vec3 s_hat(0, 0, 1);
  for (double c : {-1.0, -0.62, -0.25, 0.0, 0.31, 0.77, 1.0}) {
    const double theta_c = std::acos(c);
    const int n_theta = 4000;
    Mat2 integral = Mat2::Zero();
    for (int i = 0; i < n_theta; ++i) {
      const double theta = theta_c * (i + 0.5) / n_theta;
      // The phi integral kills off-diagonals and leaves 2 pi on the diagonal.
      Mat2 slice = Mat2::Zero();
      const double ct = std::cos(theta / 2);
      const double st = std::sin(theta / 2);
      slice(0, 0) = ct * ct;
      slice(1, 1) = st * st;
      integral += slice * std::sin(theta) * (theta_c / n_theta) * 0.5;
    }
    const EigPair closed = cap_eigenvalues(c);
    CHECK(integral(0, 0).real() == doctest::Approx(closed.alpha).epsilon(1e-7));
    CHECK(integral(1, 1).real() == doctest::Approx(closed.beta).epsilon(1e-7));
  }
}

TEST_CASE("single-shot responses reproduce the cap integral statistically") {
  std::mt19937_64 rng(211);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  MixedResponse resp;
  resp.cap.s_hat = Vec3(0.3, -0.4, 0.866).normalized();
  resp.cap.c = 0.2;
  resp.w = 0.7;
  const int n = 200000;
  Mat2 sum = Mat2::Zero();
  int plus = 0;
  for (int i = 0; i < n; ++i) {
    const Vec3 lambda = random_unit(rng);
    if (respond(resp, lambda, uni(rng)) == 1) {
      ++plus;
      sum += bloch_projector(lambda);
    }
  }
  const Mat2 empirical = sum / n;
  const EigPair curve = cap_eigenvalues(resp.cap.c);
  const Mat2 expected =
      resp.w * bloch_operator(0.5 * (1.0 - resp.cap.c),
                              0.25 * (1.0 - resp.cap.c * resp.cap.c) *
                                  resp.cap.s_hat);
  CHECK(trace_distance(empirical, expected) < 5.0 / std::sqrt(double(n)));
  CHECK(static_cast<double>(plus) / n ==
        doctest::Approx(resp.w * (curve.alpha + curve.beta))
            .epsilon(5.0 / std::sqrt(double(n))));
}

TEST_CASE("the achievable eigenvalue curve is concave") {
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const EigPair p1 = cap_eigenvalues(uni(rng));
    const EigPair p2 = cap_eigenvalues(uni(rng));
    const double beta_mid = 0.5 * (p1.beta + p2.beta);
    const double alpha_mid = 0.5 * (p1.alpha + p2.alpha);
    CHECK(alpha_mid <= std::sqrt(2.0 * beta_mid) - beta_mid + 1e-12);
  }
}

TEST_CASE("fit_response closed form") {
  const MixedResponse hemi = fit_response({3.0 / 8, 1.0 / 8}, Vec3(0, 0, 1));
  CHECK(hemi.cap.c == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(hemi.w == doctest::Approx(1.0).epsilon(1e-14));

  const MixedResponse full = fit_response({0.5, 0.5}, Vec3(0, 0, 1));
  CHECK(full.cap.c == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(full.w == doctest::Approx(1.0).epsilon(1e-14));

  const MixedResponse mixed = fit_response({0.25, 0.25}, Vec3(1, 0, 0));
  CHECK(mixed.cap.c == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(mixed.w == doctest::Approx(0.5).epsilon(1e-14));

  CHECK_THROWS_AS(fit_response({0.5, 0.0}, Vec3(0, 0, 1)), NotReproducible);
}

TEST_CASE("fit_response reproduces every feasible target exactly") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  int tested = 0;
  while (tested < 500) {
    const double beta = 0.5 * uni(rng);
    const double alpha =
        beta + (std::sqrt(2.0 * beta) - 2.0 * beta) * uni(rng);
    if (alpha < beta) continue;
    ++tested;
    const MixedResponse resp = fit_response({alpha, beta}, Vec3(0, 0, 1));
    const EigPair curve = cap_eigenvalues(resp.cap.c);
    CHECK(resp.w * curve.alpha == doctest::Approx(alpha).epsilon(1e-12));
    CHECK(resp.w * curve.beta == doctest::Approx(beta).epsilon(1e-12));
    CHECK(resp.w <= 1.0);
    CHECK(resp.cap.c >= -1.0);
    CHECK(resp.cap.c <= 1.0);
  }
}

TEST_CASE("respond") {
  MixedResponse resp;
  resp.cap.s_hat = Vec3(0, 0, 1);
  resp.cap.c = 0.0;
  resp.w = 1.0;
  CHECK(respond(resp, Vec3(0, 0, 1), 0.5) == 1);
  CHECK(respond(resp, Vec3(0, 0, -1), 0.5) == -1);
  CHECK(respond(resp, Vec3(1, 0, 0), 0.5) == 1);  // sgn(0) counts as +1

  resp.w = 0.0;
  CHECK(respond(resp, Vec3(0, 0, 1), 0.0) == -1);
}

TEST_CASE("analytic route equals the direct steered state") {
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 200; ++trial) {
    const Direction x(random_unit(rng));
    CHECK(trace_distance(analytic_lhs_steered(kWernerHalf, x),
                         steered_state(kWernerHalf, x)) < 1e-12);
  }

  const CanonicalState trivial{Vec3::Zero(), Vec3::Zero()};
  CHECK((analytic_lhs_steered(trivial, Direction(Vec3(0, 1, 0))) -
         0.25 * Mat2::Identity())
            .norm() < 1e-13);
}

TEST_CASE("analytic route on the family boundary state") {
  // Ansatz canonical data at p = 0.6.
  const double p = 0.6;
  const double a_z = std::sqrt((2 - p) * (2 * p - 1) / p);
  const CanonicalState s{Vec3(0, 0, a_z),
                         Vec3(1 - p, -(1 - p), (1 - p) * (1 - p) / p)};
  const Direction z(Vec3(0, 0, 1));
  CHECK(trace_distance(analytic_lhs_steered(s, z), steered_state(s, z)) <
        1e-10);
  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 50; ++trial) {
    const Direction x(random_unit(rng));
    CHECK(trace_distance(analytic_lhs_steered(s, x), steered_state(s, x)) <
          1e-10);
  }
}

TEST_CASE("complementary response completes the assemblage") {
  std::mt19937_64 rng(109);
  for (int trial = 0; trial < 100; ++trial) {
    const Direction x(random_unit(rng));
    const MixedResponse resp =
        fit_response(steered_eigs(kWernerHalf, x),
                     kWernerHalf.t.cwiseProduct(x.hat).normalized());
    const Mat2 plus = analytic_lhs_steered(kWernerHalf, x);
    // The -1 outcome integrates the complement cap plus the deterministic
    // branch of the mixture.
    const double c = resp.cap.c;
    const Mat2 complement =
        bloch_operator(0.5 * (1.0 + c),
                       -0.25 * (1.0 - c * c) * resp.cap.s_hat);
    const Mat2 minus =
        resp.w * complement + (1.0 - resp.w) * 0.5 * Mat2::Identity();
    CHECK((plus + minus - 0.5 * Mat2::Identity()).norm() < 1e-13);
  }
}

TEST_CASE("analytic route refuses an infeasible direction") {
  const CanonicalState cc{Vec3::Zero(), Vec3(0, 0, 1)};
  CHECK_THROWS_AS(analytic_lhs_steered(cc, Direction(Vec3(0, 0, 1))),
                  NotReproducible);
}

TEST_CASE("simulate_assemblage input validation") {
  CHECK_THROWS_AS(
      simulate_assemblage(kWernerHalf, axis_directions(), 10, 1),
      std::invalid_argument);

  const CanonicalState cc{Vec3::Zero(), Vec3(0, 0, 1)};
  try {
    simulate_assemblage(cc, axis_directions(), 5000, 1);
    FAIL("expected NotReproducible");
  } catch (const NotReproducible& e) {
    CHECK(std::string(e.what()).find("direction") != std::string::npos);
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("simulate_assemblage converges on the Werner boundary state") {
  const LhsVerificationReport rep =
      simulate_assemblage(kWernerHalf, axis_directions(), 100000, 12345);
  CHECK(rep.n_samples == 100000);
  CHECK(rep.seed == 12345);
  REQUIRE(rep.directions.size() == 6);
  for (const DirectionCheck& check : rep.directions) {
    CHECK(check.analytic_dist < 1e-12);
    CHECK(check.empirical_dist < 2e-2);
  }
  CHECK(rep.bob_marginal_dist < 4.0 / std::sqrt(100000.0));
}

TEST_CASE("simulate_assemblage on the maximally mixed target") {
  const CanonicalState trivial{Vec3::Zero(), Vec3::Zero()};
  const LhsVerificationReport rep = simulate_assemblage(
      trivial, {Direction(Vec3(0, 0, 1)), Direction(Vec3(1, 0, 0))}, 100000,
      7);
  for (const DirectionCheck& check : rep.directions)
    CHECK(check.empirical_dist < 1e-2);
}

TEST_CASE("simulation is reproducible and schedule independent") {
  const auto run = [] {
    return simulate_assemblage(kWernerHalf, axis_directions(), 200000, 99);
  };
  setenv("STEERLAB_THREADS", "1", 1);
  const LhsVerificationReport serial = run();
  setenv("STEERLAB_THREADS", "3", 1);
  const LhsVerificationReport threaded = run();
  unsetenv("STEERLAB_THREADS");
  REQUIRE(serial.directions.size() == threaded.directions.size());
  for (std::size_t i = 0; i < serial.directions.size(); ++i)
    CHECK(serial.directions[i].empirical_dist ==
          threaded.directions[i].empirical_dist);
  CHECK(serial.bob_marginal_dist == threaded.bob_marginal_dist);
}

TEST_CASE("empirical error shrinks roughly as one over sqrt(N)") {
  double mean_small = 0.0;
  double mean_large = 0.0;
  const LhsVerificationReport small =
      simulate_assemblage(kWernerHalf, axis_directions(), 10000, 2024);
  const LhsVerificationReport large =
      simulate_assemblage(kWernerHalf, axis_directions(), 1000000, 2024);
  for (const DirectionCheck& c : small.directions)
    mean_small += c.empirical_dist / 6.0;
  for (const DirectionCheck& c : large.directions)
    mean_large += c.empirical_dist / 6.0;
  const double slope = (std::log10(mean_large) - std::log10(mean_small)) / 2.0;
  CHECK(slope < -0.2);
  CHECK(slope > -0.8);
}
