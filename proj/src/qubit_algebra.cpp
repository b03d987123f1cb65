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

#include "steerlab/qubit_algebra.hpp"

namespace steerlab {

namespace {
const Complex kI(0.0, 1.0);
}

const Mat2& pauli(int i) {
  static const Mat2 sx = (Mat2() << 0, 1, 1, 0).finished();
  static const Mat2 sy = (Mat2() << 0, -kI, kI, 0).finished();
  static const Mat2 sz = (Mat2() << 1, 0, 0, -1).finished();
  switch (i) {
    case 0:
      return sx;
    case 1:
      return sy;
    case 2:
      return sz;
    default:
      throw std::out_of_range("pauli index must be 0, 1 or 2");
  }
}

const Mat2& identity2() {
  static const Mat2 id = Mat2::Identity();
  return id;
}

Mat2 bloch_operator(double w, const Vec3& r) {
  Mat2 m = w * Mat2::Identity();
  for (int i = 0; i < 3; ++i) m += r[i] * pauli(i);
  return 0.5 * m;
}

Mat2 bloch_projector(const Vec3& n) { return bloch_operator(1.0, n); }

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

double hermiticity_defect(const Mat2& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Mat4& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

PauliForm pauli_decompose(const Mat4& rho) {
  if (hermiticity_defect(rho) > kDefaultTol)
    throw std::invalid_argument("pauli_decompose: input is not Hermitian");
  PauliForm f;
  for (int i = 0; i < 3; ++i) {
    f.a[i] = (kron(pauli(i), identity2()) * rho).trace().real();
    f.b[i] = (kron(identity2(), pauli(i)) * rho).trace().real();
    for (int j = 0; j < 3; ++j)
      f.T(i, j) = (kron(pauli(i), pauli(j)) * rho).trace().real();
  }
  return f;
}

Mat4 pauli_compose(const PauliForm& form) {
  Mat4 rho = Mat4::Identity();
  for (int i = 0; i < 3; ++i) {
    rho += form.a[i] * kron(pauli(i), identity2());
    rho += form.b[i] * kron(identity2(), pauli(i));
    for (int j = 0; j < 3; ++j)
      rho += form.T(i, j) * kron(pauli(i), pauli(j));
  }
  return 0.25 * rho;
}

Mat2 partial_trace_bob(const Mat4& rho) {
  Mat2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out(i, j) = rho(2 * i, 2 * j) + rho(2 * i + 1, 2 * j + 1);
  return out;
}

Mat2 partial_trace_alice(const Mat4& rho) {
  Mat2 out;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) out(k, l) = rho(k, l) + rho(2 + k, 2 + l);
  return out;
}

Mat4 partial_transpose_bob(const Mat4& rho) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          out(2 * i + k, 2 * j + l) = rho(2 * i + l, 2 * j + k);
  return out;
}

Eig2 eig_hermitian(const Mat2& m, double tol) {
  if (hermiticity_defect(m) > tol)
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat2> es(m);
  Eig2 out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

Eig4 eig_hermitian(const Mat4& m, double tol) {
  if (hermiticity_defect(m) > tol)
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Mat4> es(m);
  Eig4 out;
  out.values = es.eigenvalues().reverse();
  out.vectors = es.eigenvectors().rowwise().reverse();
  return out;
}

namespace {
template <typename M>
double trace_distance_impl(const M& a, const M& b) {
  Eigen::SelfAdjointEigenSolver<M> es(a - b, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

template <typename M>
StateValidity validity_impl(const M& rho, double tol) {
  StateValidity v;
  v.hermiticity_defect = hermiticity_defect(rho);
  v.trace_defect = std::abs(rho.trace().real() - 1.0) +
                   std::abs(rho.trace().imag());
  M sym = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<M> es(sym, Eigen::EigenvaluesOnly);
  v.min_eigenvalue = es.eigenvalues().minCoeff();
  v.valid = v.hermiticity_defect <= tol && v.trace_defect <= tol &&
            v.min_eigenvalue >= -tol;
  return v;
}
}  // namespace

double trace_distance(const Mat2& a, const Mat2& b) {
  return trace_distance_impl(a, b);
}

double trace_distance(const Mat4& a, const Mat4& b) {
  return trace_distance_impl(a, b);
}

StateValidity is_valid_state(const Mat2& rho, double tol) {
  return validity_impl(rho, tol);
}

StateValidity is_valid_state(const Mat4& rho, double tol) {
  return validity_impl(rho, tol);
}

}  // namespace steerlab
