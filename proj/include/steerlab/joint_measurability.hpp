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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "steerlab/lhs_model.hpp"

namespace steerlab {

/// Two-outcome qubit POVM M+ = (k I + m.sigma)/2, M- = I - M+;
/// valid when ||m|| <= k <= 2 - ||m||.
struct DichotomicQubitPOVM {
  double k;
  Vec3 m;
};

bool povm_valid(const DichotomicQubitPOVM& povm, double tol = kDefaultTol);

/// k(k - 2) + 2||m||; the POVM family is certified jointly measurable when
/// this is <= 0 for every member.
double jm_margin(const DichotomicQubitPOVM& povm);
bool jm_sufficient(const DichotomicQubitPOVM& povm);

/// Assemblage obtained on the maximally mixed state: sigma_+- = M_+- / 2.
std::pair<Mat2, Mat2> povm_to_assemblage(const DichotomicQubitPOVM& povm);

/// A continuous family of dichotomic POVMs indexed by a direction. When the
/// margin reduces to a direction-independent scalar the family carries a
/// global bound and sampling verdicts upgrade to certified.
struct PovmFamily {
  std::string name;
  std::function<DichotomicQubitPOVM(const Vec3&)> at;
  std::optional<double> global_margin;
};

/// Unsharp spin measurements M+- = (I +- eta n.sigma)/2 over all axes n;
/// margin 2 eta - 1 independent of direction.
PovmFamily unsharp_family(double eta);

enum class JmCertification { Certified, SampledOnly };

struct JmReport {
  bool all_pass;
  double worst_margin;
  Vec3 worst_direction;
  double worst_margin_relabeled;  // outcomes swapped: (k, m) -> (2-k, -m)
  JmCertification certification;
  int n_samples;
};

/// Evaluates the margin over a Fibonacci direction grid. Certified only when
/// the family carries a global bound; otherwise the verdict is sampled-only.
JmReport jm_family_sampler(const PovmFamily& family, int grid_n = 1000);

/// Exhaustive check of a finite POVM list (certified by construction).
JmReport jm_check_list(const std::vector<DichotomicQubitPOVM>& povms);

/// Classical post-processing of the continuous parent G = |l><l|/(2 pi)
/// reproducing a POVM that passes the sufficient test.
struct ParentPostprocessing {
  MixedResponse response;
};

ParentPostprocessing parent_postprocessing(const DichotomicQubitPOVM& povm);

}  // namespace steerlab
