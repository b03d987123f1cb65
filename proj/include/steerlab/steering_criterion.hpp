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

#include <vector>

#include "steerlab/canonical_form.hpp"

namespace steerlab {

/// Unit vector on the Bloch sphere describing a projective measurement.
struct Direction {
  Vec3 hat;
  explicit Direction(const Vec3& v) : hat(v) {
    const double n = v.norm();
    if (n < 1e-12)
      throw std::invalid_argument("Direction: vector is numerically zero");
    hat /= n;
  }
};

enum class Verdict { CertifiedUnsteerable, CriterionViolated, Inconclusive };
enum class CriterionMethod { AxialClosedForm, GridRefine };

/// Absolute slack absorbing rounding noise at the decision boundary; inputs
/// are analytically specified, so anything larger signals a real violation.
inline constexpr double kVerdictTol = 1e-9;

struct CriterionReport {
  double max_value;
  Vec3 argmax;
  double certified_upper_bound;
  Verdict verdict;
  CriterionMethod method;
  int grid_n;
  int refine_iters;
};

const char* to_string(Verdict v);
const char* to_string(CriterionMethod m);

/// Bob's sub-normalized conditional state for outcome +1 along x:
/// (1/4) [ (1 + a.x) I + (T x).sigma ].
Mat2 steered_state(const CanonicalState& state, const Direction& x);

/// Eigenvalues (1 + a.x +- ||T x||) / 4 of the steered state.
EigPair steered_eigs(const CanonicalState& state, const Direction& x);

/// f(x) = (a.x)^2 + 2 ||T x||; the state is unsteerable from Alice to Bob
/// whenever max_x f(x) <= 1.
double criterion_value_at(const CanonicalState& state, const Direction& x);

/// Near-uniform lattice on the unit sphere (golden-angle spiral).
std::vector<Vec3> fibonacci_sphere(int n);

/// Chord covering radius bound for fibonacci_sphere(n).
double fibonacci_covering_radius(int n);

/// Maximizes f over the sphere. Axially symmetric states (|t_x| = |t_y| with
/// the Bloch vector on z) use the exact stationary-point analysis; everything
/// else uses a Fibonacci grid, projected-gradient refinement from the best 16
/// seeds, and a Lipschitz certificate L = 2||a||^2 + 2 sigma_max(T) on the
/// grid gap. Inconclusive results are reported as such, never rounded.
CriterionReport evaluate_criterion(const CanonicalState& state,
                                   int grid_n = 20000, int refine_iters = 200);

/// Conditional states (sigma_+, sigma_-) from measuring (I +- x.sigma)/2 on
/// Alice's side of an arbitrary two-qubit state.
std::pair<Mat2, Mat2> assemblage_at(const Mat4& rho, const Direction& x);
std::vector<std::pair<Mat2, Mat2>> assemblage(
    const Mat4& rho, const std::vector<Direction>& directions);

}  // namespace steerlab
