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

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace steerlab {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Absolute tolerance used for Hermiticity, trace and eigenvalue checks.
inline constexpr double kDefaultTol = 1e-9;

const Mat2& pauli(int i);  // i = 0,1,2 -> sigma_x, sigma_y, sigma_z
const Mat2& identity2();

/// (w * I + r.sigma) / 2
Mat2 bloch_operator(double w, const Vec3& r);

/// Projector onto the +1 eigenstate of n.sigma; n must be unit length.
Mat2 bloch_projector(const Vec3& n);

Mat4 kron(const Mat2& a, const Mat2& b);

/// Bloch/Pauli view of a two-qubit operator:
/// rho = (I + a.sigma x I + I x b.sigma + sum_ij T_ij sigma_i x sigma_j) / 4.
struct PauliForm {
  Vec3 a;
  Vec3 b;
  Mat3 T;
};

/// Ordered eigenvalue pair of a sub-normalized 2x2 operator.
struct EigPair {
  double alpha;  // larger
  double beta;   // smaller
};

PauliForm pauli_decompose(const Mat4& rho);
Mat4 pauli_compose(const PauliForm& form);

Mat2 partial_trace_alice(const Mat4& rho);
Mat2 partial_trace_bob(const Mat4& rho);
Mat4 partial_transpose_bob(const Mat4& rho);

struct Eig2 {
  Eigen::Vector2d values;  // descending
  Mat2 vectors;            // columns, matching values
};
struct Eig4 {
  Eigen::Vector4d values;  // descending
  Mat4 vectors;
};

Eig2 eig_hermitian(const Mat2& m, double tol = kDefaultTol);
Eig4 eig_hermitian(const Mat4& m, double tol = kDefaultTol);

double trace_distance(const Mat2& a, const Mat2& b);
double trace_distance(const Mat4& a, const Mat4& b);

struct StateValidity {
  double hermiticity_defect;
  double trace_defect;
  double min_eigenvalue;
  bool valid;
};

StateValidity is_valid_state(const Mat2& rho, double tol = kDefaultTol);
StateValidity is_valid_state(const Mat4& rho, double tol = kDefaultTol);

double hermiticity_defect(const Mat2& m);
double hermiticity_defect(const Mat4& m);

}  // namespace steerlab
