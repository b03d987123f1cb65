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

#include <cstdint>
#include <vector>

#include "steerlab/steering_criterion.hpp"

namespace steerlab {

/// Deterministic response outputting +1 when the hidden Bloch vector lies in
/// the spherical cap s_hat . lambda >= c.
struct CapResponse {
  Vec3 s_hat;
  double c;  // cap threshold in [-1, 1]; cap angle arccos(c)
};

/// Cap response used with probability w; outputs -1 otherwise.
struct MixedResponse {
  CapResponse cap;
  double w;
};

/// The target steered state lies above the achievable eigenvalue curve of the
/// cap-response model, i.e. (alpha + beta)^2 > 2 beta.
class NotReproducible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Eigenvalues of the cap integral over uniform pure hidden states:
/// beta' = (1 - c)^2 / 8, alpha' = sqrt(2 beta') - beta'.
EigPair cap_eigenvalues(double c);

/// Closed-form inversion: with r = alpha/beta, c* = (r - 3)/(r + 1) and
/// w = (alpha + beta)^2 / (2 beta) reproduce the target exactly. Throws
/// NotReproducible when (alpha + beta)^2 > 2 beta.
MixedResponse fit_response(const EigPair& target, const Vec3& s_hat);

/// Single-shot response: coin < w selects the cap (sgn(0) counts as +1),
/// otherwise the outcome is -1. Returns +1 or -1.
int respond(const MixedResponse& resp, const Vec3& lambda_hat, double coin);

/// Steered state reproduced through the cap-integral route; agrees with
/// steered_state whenever the model applies.
Mat2 analytic_lhs_steered(const CanonicalState& state, const Direction& x);

struct DirectionCheck {
  Vec3 direction;
  double analytic_dist;
  double empirical_dist;
};

struct LhsVerificationReport {
  std::vector<DirectionCheck> directions;
  double bob_marginal_dist;
  std::int64_t n_samples;
  std::uint64_t seed;
};

inline constexpr std::int64_t kMinLhsSamples = 1000;

/// Monte Carlo check of the model: samples hidden vectors uniformly
/// (inverse-CDF, seeded, chunk-reproducible) and compares the empirical
/// assemblage against steered_state per direction.
LhsVerificationReport simulate_assemblage(const CanonicalState& state,
                                          const std::vector<Direction>& dirs,
                                          std::int64_t n_samples,
                                          std::uint64_t seed);

/// splitmix64 step; used to derive independent per-chunk substreams.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace steerlab
