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

#include "steerlab/convex_witness.hpp"

#include <array>
#include <cmath>
#include <random>

#include "steerlab/family.hpp"
#include "steerlab/lhs_model.hpp"

namespace steerlab {

namespace {

// Search coordinates: p, seven mixture weights (four product states, three
// classically correlated axis states), and Bloch angles (theta, phi) for the
// eight product-state vectors.
constexpr int kNumProducts = 4;
constexpr int kNumCc = 3;
constexpr int kWeightOffset = 1;
constexpr int kAngleOffset = kWeightOffset + kNumProducts + kNumCc;
constexpr int kNumCoords = kAngleOffset + 4 * kNumProducts;
constexpr double kAcceptTol = 5e-10;
constexpr double kMinP = 0.05;

using Coords = std::array<double, kNumCoords>;

Vec3 angles_to_unit(double theta, double phi) {
  return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
              std::cos(theta));
}

Mat4 cc_state(int axis) {
  Vec3 n = Vec3::Zero();
  n[axis] = 1.0;
  return 0.5 * (kron(bloch_projector(n), bloch_projector(n)) +
                kron(bloch_projector(-n), bloch_projector(-n)));
}

Mat4 build_separable(const Coords& x) {
  std::array<double, kNumProducts + kNumCc> w{};
  double total = 0.0;
  for (int i = 0; i < kNumProducts + kNumCc; ++i) {
    w[static_cast<std::size_t>(i)] = std::max(0.0, x[kWeightOffset + i]);
    total += w[static_cast<std::size_t>(i)];
  }
  if (total < 1e-12) return 0.25 * Mat4::Identity();
  Mat4 sep = Mat4::Zero();
  for (int i = 0; i < kNumProducts; ++i) {
    const int base = kAngleOffset + 4 * i;
    const Vec3 u = angles_to_unit(x[base], x[base + 1]);
    const Vec3 v = angles_to_unit(x[base + 2], x[base + 3]);
    sep += (w[static_cast<std::size_t>(i)] / total) *
           kron(bloch_projector(u), bloch_projector(v));
  }
  for (int i = 0; i < kNumCc; ++i)
    sep += (w[static_cast<std::size_t>(kNumProducts + i)] / total) *
           cc_state(i);
  return sep;
}

struct Objective {
  const Mat4& rho;
  int inner_grid;
  int& budget;

  double operator()(const Coords& x) const {
    --budget;
    const double p = x[0];
    const Mat4 sep = build_separable(x);
    const Mat4 sigma = (rho - (1.0 - p) * sep) / p;
    const double psd_defect =
        std::max(0.0, -eig_hermitian(sigma).values.minCoeff());
    if (psd_defect > 1e-6) return 10.0 + 50.0 * psd_defect;
    try {
      const CanonicalState can = canonicalize(sigma).canonical;
      const double crit = evaluate_criterion(can, inner_grid, 60).max_value;
      return std::max(crit - 1.0, 50.0 * psd_defect);
    } catch (const BobMarginalPure&) {
      return 10.0 + 50.0 * psd_defect;
    }
  }
};

struct Bounds {
  double lo;
  double hi;
};

Bounds coord_bounds(int c) {
  if (c == 0) return {kMinP, 1.0};
  if (c < kAngleOffset) return {0.0, 1.0};
  const bool is_theta = (c - kAngleOffset) % 2 == 0;
  return {0.0, is_theta ? M_PI : 2.0 * M_PI};
}

// Coarse scan plus golden-section refinement of a single coordinate.
double minimize_coordinate(const Objective& obj, Coords& x, int c,
                           double current_value) {
  const Bounds b = coord_bounds(c);
  const double original = x[c];
  double best_pos = original;
  double best_val = current_value;
  constexpr int kScan = 9;
  for (int i = 0; i < kScan && obj.budget > 0; ++i) {
    const double pos = b.lo + (b.hi - b.lo) * i / (kScan - 1);
    x[c] = pos;
    const double v = obj(x);
    if (v < best_val) {
      best_val = v;
      best_pos = pos;
    }
  }
  const double span = (b.hi - b.lo) / (kScan - 1);
  double lo = std::max(b.lo, best_pos - span);
  double hi = std::min(b.hi, best_pos + span);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  x[c] = x1;
  double f1 = obj.budget > 0 ? obj(x) : best_val;
  x[c] = x2;
  double f2 = obj.budget > 0 ? obj(x) : best_val;
  for (int it = 0; it < 70 && hi - lo > 1e-13 && obj.budget > 0; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      x[c] = x1;
      f1 = obj(x);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      x[c] = x2;
      f2 = obj(x);
    }
  }
  const double mid = 0.5 * (lo + hi);
  x[c] = mid;
  const double fm = obj.budget > 0 ? obj(x) : best_val;
  if (fm < best_val) {
    best_val = fm;
    best_pos = mid;
  }
  if (f1 < best_val) {
    best_val = f1;
    best_pos = x1;
  }
  if (f2 < best_val) {
    best_val = f2;
    best_pos = x2;
  }
  x[c] = best_pos;
  return best_val;
}

double coordinate_descent(const Objective& obj, Coords& x) {
  double value = obj(x);
  for (int sweep = 0; sweep < 6 && obj.budget > 0; ++sweep) {
    const double before = value;
    for (int c = 0; c < kNumCoords && obj.budget > 0; ++c)
      value = minimize_coordinate(obj, x, c, value);
    if (value <= kAcceptTol || before - value < 1e-14) break;
  }
  return value;
}

Coords warm_start(int which) {
  Coords x{};
  x[0] = 0.75;
  if (which < kNumCc) {
    x[kWeightOffset + kNumProducts + which] = 1.0;  // one cc axis state
  } else {
    // Four +-z product states mixing to I/4.
    for (int i = 0; i < kNumProducts; ++i) {
      x[kWeightOffset + i] = 0.25;
      const int base = kAngleOffset + 4 * i;
      x[base] = (i / 2 == 0) ? 0.0 : M_PI;      // theta_u
      x[base + 2] = (i % 2 == 0) ? 0.0 : M_PI;  // theta_v
    }
  }
  return x;
}

Coords random_start(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  Coords x{};
  x[0] = 0.4 + 0.55 * uni(rng);
  for (int i = 0; i < kNumProducts + kNumCc; ++i)
    x[kWeightOffset + i] = uni(rng);
  for (int i = 0; i < kNumProducts; ++i) {
    const int base = kAngleOffset + 4 * i;
    x[base] = M_PI * uni(rng);
    x[base + 1] = 2.0 * M_PI * uni(rng);
    x[base + 2] = M_PI * uni(rng);
    x[base + 3] = 2.0 * M_PI * uni(rng);
  }
  return x;
}

}  // namespace

SigmaCandidate extract_sigma(const Mat4& rho, double p, const Mat4& rho_sep) {
  if (!(p > 0.0 && p <= 1.0))
    throw std::invalid_argument("extract_sigma: p must lie in (0, 1]");
  SigmaCandidate cand;
  cand.sigma = (rho - (1.0 - p) * rho_sep) / p;
  cand.validity = is_valid_state(cand.sigma);
  return cand;
}

bool verify_decomposition(const Mat4& rho, const Decomposition& d,
                          int grid_n) {
  if (!(d.p > 0.0 && d.p <= 1.0 + 1e-12)) return false;
  const Mat4 recon = d.p * d.sigma + (1.0 - d.p) * d.rho_sep;
  if (trace_distance(recon, rho) > 1e-9) return false;
  if (!is_valid_state(d.sigma).valid) return false;
  if (!is_valid_state(d.rho_sep).valid) return false;
  if (ppt_min_eigenvalue(d.rho_sep) < -kDefaultTol) return false;
  try {
    const CanonicalState can = canonicalize(d.sigma).canonical;
    return evaluate_criterion(can, grid_n).verdict ==
           Verdict::CertifiedUnsteerable;
  } catch (const BobMarginalPure&) {
    return false;
  }
}

std::optional<Decomposition> strengthen(const Mat4& rho, int budget,
                                        std::uint64_t seed) {
  // The state may already pass the criterion directly.
  try {
    if (evaluate_criterion(canonicalize(rho).canonical).verdict ==
        Verdict::CertifiedUnsteerable) {
      Decomposition d{1.0, rho, 0.25 * Mat4::Identity()};
      if (verify_decomposition(rho, d)) return d;
    }
  } catch (const BobMarginalPure&) {
  }

  Objective obj{rho, 800, budget};
  std::mt19937_64 rng(splitmix64(seed));

  int start_index = 0;
  while (obj.budget > 0) {
    Coords x = start_index < kNumCc + 1 ? warm_start(start_index)
                                        : random_start(rng);
    ++start_index;
    const double value = coordinate_descent(obj, x);
    if (value <= kAcceptTol) {
      Decomposition d{x[0], extract_sigma(rho, x[0], build_separable(x)).sigma,
                      build_separable(x)};
      if (verify_decomposition(rho, d)) return d;
    }
  }
  return std::nullopt;
}

}  // namespace steerlab
