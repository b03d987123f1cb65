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

#include "steerlab/joint_measurability.hpp"

#include <cmath>

namespace steerlab {

namespace {

DichotomicQubitPOVM relabeled(const DichotomicQubitPOVM& povm) {
  return DichotomicQubitPOVM{2.0 - povm.k, -povm.m};
}

void require_valid(const DichotomicQubitPOVM& povm) {
  if (!povm_valid(povm))
    throw std::invalid_argument(
        "POVM outside the validity window ||m|| <= k <= 2 - ||m||");
}

}  // namespace

bool povm_valid(const DichotomicQubitPOVM& povm, double tol) {
  const double n = povm.m.norm();
  return n <= povm.k + tol && povm.k <= 2.0 - n + tol;
}

double jm_margin(const DichotomicQubitPOVM& povm) {
  return povm.k * (povm.k - 2.0) + 2.0 * povm.m.norm();
}

bool jm_sufficient(const DichotomicQubitPOVM& povm) {
  require_valid(povm);
  return jm_margin(povm) <= 0.0;
}

std::pair<Mat2, Mat2> povm_to_assemblage(const DichotomicQubitPOVM& povm) {
  const Mat2 m_plus = bloch_operator(povm.k, povm.m);
  return {0.5 * m_plus, 0.5 * (Mat2::Identity() - m_plus)};
}

PovmFamily unsharp_family(double eta) {
  if (eta < 0.0 || eta > 1.0)
    throw std::domain_error("unsharp_family: eta must lie in [0, 1]");
  PovmFamily family;
  family.name = "unsharp";
  family.at = [eta](const Vec3& n) {
    return DichotomicQubitPOVM{1.0, eta * n.normalized()};
  };
  family.global_margin = 2.0 * eta - 1.0;
  return family;
}

JmReport jm_family_sampler(const PovmFamily& family, int grid_n) {
  JmReport rep;
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  rep.worst_margin_relabeled = rep.worst_margin;
  rep.worst_direction = Vec3::UnitZ();
  rep.n_samples = grid_n;
  for (const Vec3& dir : fibonacci_sphere(grid_n)) {
    const DichotomicQubitPOVM povm = family.at(dir);
    require_valid(povm);
    const double margin = jm_margin(povm);
    if (margin > rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_direction = dir;
    }
    rep.worst_margin_relabeled =
        std::max(rep.worst_margin_relabeled, jm_margin(relabeled(povm)));
  }
  if (family.global_margin) {
    rep.certification = JmCertification::Certified;
    rep.all_pass = *family.global_margin <= 0.0;
  } else {
    rep.certification = JmCertification::SampledOnly;
    rep.all_pass = rep.worst_margin <= 0.0;
  }
  return rep;
}

JmReport jm_check_list(const std::vector<DichotomicQubitPOVM>& povms) {
  if (povms.empty()) throw std::invalid_argument("jm_check_list: empty family");
  JmReport rep;
  rep.worst_margin = -std::numeric_limits<double>::infinity();
  rep.worst_margin_relabeled = rep.worst_margin;
  rep.worst_direction = Vec3::UnitZ();
  rep.n_samples = static_cast<int>(povms.size());
  for (const DichotomicQubitPOVM& povm : povms) {
    require_valid(povm);
    const double margin = jm_margin(povm);
    if (margin > rep.worst_margin) {
      rep.worst_margin = margin;
      const double n = povm.m.norm();
      rep.worst_direction = n > 1e-14 ? Vec3(povm.m / n) : Vec3::UnitZ();
    }
    rep.worst_margin_relabeled =
        std::max(rep.worst_margin_relabeled, jm_margin(relabeled(povm)));
  }
  rep.certification = JmCertification::Certified;
  rep.all_pass = rep.worst_margin <= 0.0;
  return rep;
}

ParentPostprocessing parent_postprocessing(const DichotomicQubitPOVM& povm) {
  require_valid(povm);
  const double n = povm.m.norm();
  if (jm_margin(povm) > 1e-12)
    throw NotReproducible(
        "parent_postprocessing: POVM fails the sufficient test");
  // Eigenvalues of M+/2.
  const EigPair target{0.25 * (povm.k + n), 0.25 * (povm.k - n)};
  const Vec3 s_hat = n > 1e-14 ? Vec3(povm.m / n) : Vec3::UnitZ();
  return ParentPostprocessing{fit_response(target, s_hat)};
}

}  // namespace steerlab
