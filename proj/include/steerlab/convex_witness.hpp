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
#include <optional>

#include "steerlab/steering_criterion.hpp"

namespace steerlab {

/// Certificate that rho = p sigma + (1 - p) rho_sep with sigma passing the
/// unsteerability criterion and rho_sep separable, which makes rho
/// unsteerable from Alice to Bob even though rho itself may fail the
/// criterion.
struct Decomposition {
  double p;
  Mat4 sigma;
  Mat4 rho_sep;
};

struct SigmaCandidate {
  Mat4 sigma;
  StateValidity validity;
};

/// sigma = (rho - (1 - p) rho_sep) / p. A non-PSD result invalidates the
/// candidate (reported, not thrown); p = 0 is an error.
SigmaCandidate extract_sigma(const Mat4& rho, double p, const Mat4& rho_sep);

/// End-to-end re-verification of a decomposition, independent of how it was
/// found: reconstruction, state validity, PPT of the separable part, and a
/// certified criterion verdict for sigma.
bool verify_decomposition(const Mat4& rho, const Decomposition& d,
                          int grid_n = 20000);

/// Searches for a certifying decomposition over mixtures of up to four
/// product states plus the classically correlated axis states. Deterministic
/// warm starts are tried before seeded random restarts; the budget counts
/// objective evaluations. Returns nothing when the budget is exhausted
/// (inconclusive, not a steerability verdict).
std::optional<Decomposition> strengthen(const Mat4& rho, int budget = 10000,
                                        std::uint64_t seed = 0);

}  // namespace steerlab
