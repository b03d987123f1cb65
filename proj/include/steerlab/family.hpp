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

#include <iosfwd>
#include <vector>

#include "steerlab/steering_criterion.hpp"

namespace steerlab {

/// Parameters of the one-way steering family
/// rho(p, chi) = p |psi_chi><psi_chi| + (1 - p) rho_A(chi) x I/2,
/// |psi_chi> = cos(chi)|00> + sin(chi)|11>, p in [0,1], chi in (0, pi/4].
struct FamilyParams {
  double p;
  double chi;
};

enum class RegionLabel { Separable, BothUnsteerable, OneWay, Unresolved };

const char* to_string(RegionLabel label);

struct ClassificationRecord {
  bool entangled;
  bool unsteerable_a_to_b;
  // Rests on the filter map plus known Werner steerability above p = 1/2,
  // not on an implemented steering detector.
  bool steerable_b_to_a;
  static constexpr const char* kSteerableBaProvenance = "analytic-citation";
  bool one_way;
  double chsh_value;
  double criterion_max;
  RegionLabel region;
};

Mat4 family_state(const FamilyParams& params);

/// Closed form for unsteerability Alice -> Bob:
/// cos^2(2 chi) >= (2p - 1) / ((2 - p) p^3); always true for p <= 1/2.
bool unsteerable_ab_condition(const FamilyParams& params);

/// The chi sitting exactly on the unsteerability boundary for p in [1/2, 1).
double ansatz_chi(double p);

/// Canonical form of the family in closed form: a = (0, 0, a_z),
/// t = (t_x, -t_x, t_z).
CanonicalState family_canonical(const FamilyParams& params);

/// Sum of the two largest eigenvalues of T^T T; CHSH is violated by some
/// pair of measurements iff the value exceeds 1.
double horodecki_chsh(const Mat4& rho);

/// Conjugates by the local filter diag(1/cos chi, 1/sin chi) on Alice's side
/// and renormalizes; maps rho(p, chi) to rho(p, pi/4).
Mat4 filter_chi(const Mat4& rho, double chi);

/// (1/2) rho(p, chi) + (1/2) |0><0| x rho_B; the POVM-robust one-way example.
Mat4 povm_one_way_state(const FamilyParams& params);

/// Minimum eigenvalue of the partial transpose; >= 0 iff separable.
double ppt_min_eigenvalue(const Mat4& rho);
bool is_entangled_ppt(const Mat4& rho, double tol = kDefaultTol);

/// Smallest p for which the filtered POVM one-way state (chi on the boundary)
/// violates CHSH. Bisection over (0.51, 0.999); throws when the bracket does
/// not straddle the predicate.
double povm_chsh_threshold(double tol);

ClassificationRecord classify(const FamilyParams& params, int grid_n = 20000);

struct ScanRow {
  double p;
  double chi;
  ClassificationRecord record;
};

std::vector<ScanRow> scan_grid(int p_steps, int chi_steps, int grid_n = 20000);

/// CSV columns: p, chi, entangled, unsteerable_AB, steerable_BA, region_label,
/// criterion_max, chsh_M. Numbers use 9 significant digits.
void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

}  // namespace steerlab
