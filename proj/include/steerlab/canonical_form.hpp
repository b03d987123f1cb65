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

#include "steerlab/qubit_algebra.hpp"

namespace steerlab {

/// Two-qubit state with Bob's marginal maximally mixed and a diagonal
/// correlation matrix: rho = (I + a.sigma x I + sum_i t_i sigma_i x sigma_i)/4.
///
/// Conventions: |t_x| >= |t_y|; when the state is axially symmetric
/// (two equal |t_i| with the Bloch vector along the remaining axis, or a ~ 0)
/// the symmetry axis is placed on z and a_z is made non-negative. A negative
/// sign forced by det(T) < 0 is carried by t_y.
struct CanonicalState {
  Vec3 a;
  Vec3 t;
};

/// Provenance of a canonical-form reduction.
struct CanonicalizationRecord {
  CanonicalState canonical;
  Mat3 alice_rotation;  // R_A, det +1; R_A * T * R_B^T = diag(t)
  Mat3 bob_rotation;    // R_B, det +1
  bool whitening_applied;
};

/// Bob's marginal has an eigenvalue below the rank tolerance, so the
/// whitening map is not invertible.
class BobMarginalPure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rank tolerance on the smaller eigenvalue of Bob's marginal.
inline constexpr double kBobRankTol = 1e-8;

Mat4 reconstruct(const CanonicalState& state);

/// Conjugates rho by I x rho_B^{-1/2} and renormalizes; the output has
/// Bob's marginal equal to I/2. Throws BobMarginalPure when rho_B is
/// (numerically) pure.
Mat4 bob_whitening(const Mat4& rho, double rank_tol = kBobRankTol);

/// Diagonalizes the correlation matrix of a form with b = 0 by a signed SVD
/// restricted to SO(3) rotations, then applies the axis and sign conventions
/// documented on CanonicalState.
CanonicalizationRecord diagonalize_correlation(const PauliForm& form);

/// bob_whitening followed by diagonalize_correlation.
CanonicalizationRecord canonicalize(const Mat4& rho);

}  // namespace steerlab
