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

#include "steerlab/family.hpp"

#include <cmath>
#include <ostream>

#include "steerlab/parallel.hpp"

namespace steerlab {

namespace {

constexpr double kQuarterPi = M_PI / 4.0;

void validate(const FamilyParams& params) {
  if (!(params.p >= 0.0 && params.p <= 1.0))
    throw std::domain_error("family: p must lie in [0, 1]");
  if (!(params.chi > 0.0 && params.chi <= kQuarterPi + 1e-12))
    throw std::domain_error("family: chi must lie in (0, pi/4]");
}

double boundary_rhs(double p) { return (2.0 * p - 1.0) / ((2.0 - p) * p * p * p); }

}  // namespace

const char* to_string(RegionLabel label) {
  switch (label) {
    case RegionLabel::Separable:
      return "Separable";
    case RegionLabel::BothUnsteerable:
      return "BothUnsteerable";
    case RegionLabel::OneWay:
      return "OneWay";
    default:
      return "Unresolved";
  }
}

Mat4 family_state(const FamilyParams& params) {
  validate(params);
  const double c = std::cos(params.chi);
  const double s = std::sin(params.chi);
  Eigen::Vector4cd psi;
  psi << c, 0, 0, s;
  const Mat4 pure = psi * psi.adjoint();
  Mat2 rho_a = Mat2::Zero();
  rho_a(0, 0) = c * c;
  rho_a(1, 1) = s * s;
  return params.p * pure +
         (1.0 - params.p) * kron(rho_a, 0.5 * Mat2::Identity());
}

bool unsteerable_ab_condition(const FamilyParams& params) {
  validate(params);
  if (params.p <= 0.5) return true;
  const double c2 = std::cos(2.0 * params.chi);
  // Closed boundary: a hair of rounding must not flip points sitting on it.
  return c2 * c2 >= boundary_rhs(params.p) - 1e-12;
}

double ansatz_chi(double p) {
  if (p < 0.5) throw std::domain_error("ansatz_chi: p must be >= 1/2");
  if (p >= 1.0)
    throw std::domain_error("ansatz_chi: p = 1 gives chi = 0, outside (0, pi/4]");
  const double rhs = boundary_rhs(p);
  if (rhs > 1.0)
    throw std::domain_error("ansatz_chi: boundary value exceeds 1");
  return 0.5 * std::acos(std::sqrt(std::max(0.0, rhs)));
}

CanonicalState family_canonical(const FamilyParams& params) {
  validate(params);
  const double c = std::cos(2.0 * params.chi);
  const double p = params.p;
  const double denom = 1.0 - p * p * c * c;
  const double a_z = (1.0 - p * p) * c / denom;
  const double t_z = p * (1.0 - c * c) / denom;
  const double t_x = p * std::sqrt((1.0 - c * c) / denom);
  return CanonicalState{Vec3(0, 0, a_z), Vec3(t_x, -t_x, t_z)};
}

double horodecki_chsh(const Mat4& rho) {
  const Mat3 t = pauli_decompose(rho).T;
  Eigen::SelfAdjointEigenSolver<Mat3> es(t.transpose() * t,
                                         Eigen::EigenvaluesOnly);
  const Vec3 ev = es.eigenvalues();  // ascending
  return ev[1] + ev[2];
}

Mat4 filter_chi(const Mat4& rho, double chi) {
  if (!(chi > 0.0 && chi <= kQuarterPi + 1e-12))
    throw std::domain_error("filter_chi: chi must lie in (0, pi/4]");
  Mat2 f = Mat2::Zero();
  f(0, 0) = 1.0 / std::cos(chi);
  f(1, 1) = 1.0 / std::sin(chi);
  const Mat4 filter = kron(f, identity2());
  Mat4 out = filter * rho * filter;
  out /= out.trace().real();
  return out;
}

Mat4 povm_one_way_state(const FamilyParams& params) {
  const Mat4 rho = family_state(params);
  const Mat2 rho_b = partial_trace_alice(rho);
  Mat2 ket0 = Mat2::Zero();
  ket0(0, 0) = 1.0;
  return 0.5 * rho + 0.5 * kron(ket0, rho_b);
}

double ppt_min_eigenvalue(const Mat4& rho) {
  return eig_hermitian(partial_transpose_bob(rho)).values.minCoeff();
}

bool is_entangled_ppt(const Mat4& rho, double tol) {
  return ppt_min_eigenvalue(rho) < -tol;
}

double povm_chsh_threshold(double tol) {
  if (tol < 1e-6)
    throw std::invalid_argument("povm_chsh_threshold: tol must be >= 1e-6");
  auto violates = [](double p) {
    const double chi = ansatz_chi(p);
    const Mat4 filtered = filter_chi(povm_one_way_state({p, chi}), chi);
    return horodecki_chsh(filtered) > 1.0;
  };
  double lo = 0.51;
  double hi = 0.999;
  if (violates(lo) || !violates(hi))
    throw std::runtime_error(
        "povm_chsh_threshold: predicate does not straddle the bracket");
  for (int it = 0; it < 60 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    (violates(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ClassificationRecord classify(const FamilyParams& params, int grid_n) {
  const Mat4 rho = family_state(params);
  ClassificationRecord rec;
  rec.entangled = is_entangled_ppt(rho);
  rec.unsteerable_a_to_b = unsteerable_ab_condition(params);
  rec.steerable_b_to_a = params.p > 0.5;
  rec.one_way = rec.unsteerable_a_to_b && rec.steerable_b_to_a;
  rec.chsh_value = horodecki_chsh(rho);
  rec.criterion_max = evaluate_criterion(canonicalize(rho).canonical, grid_n)
                          .max_value;
  if (!rec.entangled)
    rec.region = RegionLabel::Separable;
  else if (params.p <= 0.5)
    rec.region = RegionLabel::BothUnsteerable;
  else if (rec.unsteerable_a_to_b)
    rec.region = RegionLabel::OneWay;
  else
    rec.region = RegionLabel::Unresolved;
  return rec;
}

std::vector<ScanRow> scan_grid(int p_steps, int chi_steps, int grid_n) {
  if (p_steps < 2 || chi_steps < 1)
    throw std::invalid_argument("scan_grid: need p_steps >= 2, chi_steps >= 1");
  std::vector<ScanRow> rows(static_cast<std::size_t>(p_steps) *
                            static_cast<std::size_t>(chi_steps));
  parallel_chunks(rows.size(), 64, [&](std::size_t lo, std::size_t hi,
                                       std::size_t) {
    for (std::size_t idx = lo; idx < hi; ++idx) {
      const int i = static_cast<int>(idx) / chi_steps;
      const int j = static_cast<int>(idx) % chi_steps;
      const double p = static_cast<double>(i) / (p_steps - 1);
      const double chi = kQuarterPi * (j + 1) / chi_steps;
      rows[idx] = ScanRow{p, chi, classify({p, chi}, grid_n)};
    }
  });
  return rows;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "p,chi,entangled,unsteerable_AB,steerable_BA,region_label,"
        "criterion_max,chsh_M\n";
  os.precision(9);
  for (const ScanRow& row : rows) {
    const ClassificationRecord& r = row.record;
    os << row.p << ',' << row.chi << ',' << (r.entangled ? 1 : 0) << ','
       << (r.unsteerable_a_to_b ? 1 : 0) << ',' << (r.steerable_b_to_a ? 1 : 0)
       << ',' << to_string(r.region) << ',' << r.criterion_max << ','
       << r.chsh_value << '\n';
  }
}

}  // namespace steerlab
