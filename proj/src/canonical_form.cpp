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

#include "steerlab/canonical_form.hpp"

#include <array>
#include <cmath>

namespace steerlab {

namespace {

constexpr double kAxisTol = 1e-9;

// Rotation permutation sending old axis perm[i] to new axis i. The
// permutation is made even (det +1) by the callers' choice of ordering.
Mat3 axis_permutation(const std::array<int, 3>& perm) {
  Mat3 p = Mat3::Zero();
  for (int i = 0; i < 3; ++i) p(i, perm[i]) = 1.0;
  return p;
}

bool is_even(const std::array<int, 3>& perm) {
  int inversions = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0;
}

// SO(3) rotation taking v/||v|| to +z.
Mat3 rotation_to_z(const Vec3& v) {
  const Vec3 u = v.normalized();
  if (u[2] > 1.0 - 1e-14) return Mat3::Identity();
  if (u[2] < -1.0 + 1e-14) return Vec3(1, -1, -1).asDiagonal();
  const Vec3 axis = u.cross(Vec3::UnitZ()).normalized();
  return Eigen::AngleAxisd(std::acos(std::clamp(u[2], -1.0, 1.0)), axis)
      .toRotationMatrix();
}

}  // namespace

Mat4 reconstruct(const CanonicalState& state) {
  PauliForm f;
  f.a = state.a;
  f.b = Vec3::Zero();
  f.T = state.t.asDiagonal();
  return pauli_compose(f);
}

Mat4 bob_whitening(const Mat4& rho, double rank_tol) {
  const Mat2 rho_b = partial_trace_alice(rho);
  Eig2 eig = eig_hermitian(rho_b);
  if (eig.values[1] < rank_tol)
    throw BobMarginalPure(
        "bob_whitening: Bob marginal eigenvalue " +
        std::to_string(eig.values[1]) + " below rank tolerance");
  Mat2 inv_sqrt = Mat2::Zero();
  for (int i = 0; i < 2; ++i)
    inv_sqrt += (1.0 / std::sqrt(eig.values[i])) * eig.vectors.col(i) *
                eig.vectors.col(i).adjoint();
  const Mat4 filter = kron(identity2(), inv_sqrt);
  Mat4 out = filter * rho * filter;
  out /= out.trace().real();
  return out;
}

CanonicalizationRecord diagonalize_correlation(const PauliForm& form) {
  if (form.b.norm() > kAxisTol)
    throw std::invalid_argument(
        "diagonalize_correlation: Bob Bloch vector must vanish");

  Eigen::JacobiSVD<Mat3> svd(form.T,
                             Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  const double du = u.determinant() < 0 ? -1.0 : 1.0;
  const double dv = v.determinant() < 0 ? -1.0 : 1.0;

  // T = U S V^T with singular values descending; push the determinant
  // corrections into the last diagonal entry.
  Mat3 ra = Vec3(1, 1, du).asDiagonal() * u.transpose();
  Mat3 rb = Vec3(1, 1, dv).asDiagonal() * v.transpose();
  Vec3 t = svd.singularValues();
  t[2] *= du * dv;
  Vec3 a = ra * form.a;

  // Degenerate correlation matrices leave rotational freedom; spend it on
  // aligning the Bloch vector with +z.
  if (t.cwiseAbs().maxCoeff() <= 1e-12) {
    ra = form.a.norm() > kAxisTol ? rotation_to_z(form.a) : Mat3::Identity();
    rb = Mat3::Identity();
    a = ra * form.a;
    t = Vec3::Zero();
  } else if (std::abs(std::abs(t[0]) - std::abs(t[1])) <= kAxisTol &&
             std::abs(std::abs(t[1]) - std::abs(t[2])) <= kAxisTol &&
             a.norm() > kAxisTol && std::hypot(a[0], a[1]) > kAxisTol) {
    // Fully degenerate |t|: any rotation Q on Alice's side is matched by
    // S Q S on Bob's side (S the sign pattern of t) without leaving the
    // diagonal form.
    const Mat3 q = rotation_to_z(a);
    Vec3 signs;
    for (int i = 0; i < 3; ++i) signs[i] = t[i] < 0 ? -1.0 : 1.0;
    const Mat3 s = signs.asDiagonal();
    ra = q * ra;
    rb = s * q * s * rb;
    a = q * a;
  }

  // Axis relabeling: make axial symmetry land in the (|t_x| = |t_y|,
  // a along z) arrangement whenever it exists.
  auto equal_mag = [&](int i, int j) {
    return std::abs(std::abs(t[i]) - std::abs(t[j])) <= kAxisTol;
  };
  std::array<int, 3> perm = {0, 1, 2};
  bool relabel = false;
  if (a.norm() <= kAxisTol) {
    if (!equal_mag(0, 1) && equal_mag(1, 2)) {
      perm = {1, 2, 0};
      relabel = true;
    }
  } else {
    int axis = -1;
    for (int k = 0; k < 3; ++k) {
      Vec3 residual = a;
      residual[k] = 0.0;
      if (residual.norm() <= kAxisTol) axis = k;
    }
    if (axis >= 0) {
      const int i = (axis + 1) % 3;
      const int j = (axis + 2) % 3;
      if (equal_mag(i, j) && axis != 2) {
        perm = {i, j, axis};
        if (!is_even(perm)) std::swap(perm[0], perm[1]);
        relabel = true;
      }
    }
  }
  if (relabel) {
    const Mat3 p = axis_permutation(perm);
    ra = p * ra;
    rb = p * rb;
    a = p * a;
    t = Vec3(t[perm[0]], t[perm[1]], t[perm[2]]);
  }

  // a_z >= 0 when a lies on the z axis: rotate by pi about x on Alice's side.
  if (a[2] < -1e-12 && std::hypot(a[0], a[1]) <= kAxisTol) {
    const Mat3 flip = Vec3(1, -1, -1).asDiagonal();
    ra = flip * ra;
    a = flip * a;
    t = Vec3(t[0], -t[1], -t[2]);
  }

  // Sign convention: all entries non-negative except t_y, which carries the
  // sign of det(T); realized by pi rotations on Bob's side (even sign flips).
  {
    Vec3 target = t.cwiseAbs();
    double det_sign = 1.0;
    bool has_zero = false;
    for (int i = 0; i < 3; ++i) {
      if (std::abs(t[i]) <= 1e-12)
        has_zero = true;
      else if (t[i] < 0)
        det_sign = -det_sign;
    }
    if (!has_zero && det_sign < 0) target[1] = -target[1];
    Vec3 eps = Vec3::Ones();
    int flips = 0;
    for (int i = 0; i < 3; ++i) {
      const bool neg = t[i] < 0;
      const bool want_neg = target[i] < 0;
      if (neg != want_neg && std::abs(t[i]) > 1e-12) {
        eps[i] = -1.0;
        ++flips;
      }
    }
    if (flips % 2 == 1) {
      // Parity excess lands on a numerically-zero entry.
      for (int i = 2; i >= 0; --i)
        if (std::abs(t[i]) <= 1e-12) {
          eps[i] = -eps[i];
          break;
        }
    }
    rb = Mat3(eps.asDiagonal()) * rb;
    t = t.cwiseProduct(eps);
  }

  CanonicalizationRecord rec;
  rec.canonical = CanonicalState{a, t};
  rec.alice_rotation = ra;
  rec.bob_rotation = rb;
  rec.whitening_applied = false;
  return rec;
}

CanonicalizationRecord canonicalize(const Mat4& rho) {
  const Mat2 rho_b = partial_trace_alice(rho);
  const bool already_white =
      trace_distance(rho_b, 0.5 * Mat2::Identity()) <= 1e-12;
  const Mat4 white = bob_whitening(rho);
  CanonicalizationRecord rec = diagonalize_correlation(pauli_decompose(white));
  rec.whitening_applied = !already_white;
  return rec;
}

}  // namespace steerlab
