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

#include "steerlab/steering_criterion.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "steerlab/parallel.hpp"

namespace steerlab {

namespace {

constexpr double kAxialTol = 1e-9;

// Chord covering radius of the golden-angle lattice measures ~2.72/sqrt(n)
// uniformly over n in [1e2, 5e4]; 3.0 leaves a safety margin.
constexpr double kCoveringConstant = 3.0;

double f_value(const Vec3& a, const Vec3& t, const Vec3& x) {
  const double ax = a.dot(x);
  const Vec3 tx = t.cwiseProduct(x);
  return ax * ax + 2.0 * tx.norm();
}

// Lexicographic comparison for the deterministic argmax tie-break.
bool lex_less(const Vec3& p, const Vec3& q) {
  for (int i = 0; i < 3; ++i) {
    if (p[i] < q[i]) return true;
    if (p[i] > q[i]) return false;
  }
  return false;
}

struct Best {
  double value = -1.0;
  Vec3 dir = Vec3::UnitZ();

  void consider(double v, const Vec3& d) {
    if (v > value || (v == value && lex_less(d, dir))) {
      value = v;
      dir = d;
    }
  }
};

// Projected gradient ascent with backtracking, staying on the sphere.
Best refine_from(const Vec3& a, const Vec3& t, Vec3 x, int max_iters) {
  Best best;
  double fx = f_value(a, t, x);
  best.consider(fx, x);
  double step = 0.1;
  for (int it = 0; it < max_iters; ++it) {
    const Vec3 tx = t.cwiseProduct(x);
    const double n = tx.norm();
    Vec3 grad = 2.0 * a.dot(x) * a;
    if (n > 1e-14) {
      grad += 2.0 * t.cwiseProduct(tx) / n;
    } else {
      // ||Tx|| vanishes: the norm term is not differentiable; restart the
      // ascent from a slightly perturbed point.
      Vec3 perturbed = (x + 1e-6 * Vec3(1, 1, 1)).normalized();
      grad = 2.0 * a.dot(perturbed) * a;
      x = perturbed;
      fx = f_value(a, t, x);
      best.consider(fx, x);
      continue;
    }
    Vec3 tangent = grad - grad.dot(x) * x;
    if (tangent.norm() < 1e-14) break;
    bool moved = false;
    while (step > 1e-12) {
      const Vec3 cand = (x + step * tangent).normalized();
      const double fc = f_value(a, t, cand);
      if (fc > fx) {
        x = cand;
        fx = fc;
        best.consider(fx, x);
        step *= 1.6;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) break;
  }
  return best;
}

bool axial_fast_path(const CanonicalState& s) {
  return std::hypot(s.a[0], s.a[1]) <= kAxialTol &&
         std::abs(std::abs(s.t[0]) - std::abs(s.t[1])) <= kAxialTol;
}

// Exact maximization for a = (0,0,a_z), |t_x| = |t_y|. With u = cos^2(theta),
// F(u) = a_z^2 u + 2 sqrt(t_x^2 + u (t_z^2 - t_x^2)) has its only interior
// stationary point at u* = t_x^2/(t_x^2 - t_z^2) - (t_x^2 - t_z^2)/a_z^4.
CriterionReport axial_closed_form(const CanonicalState& s) {
  const double az = s.a[2];
  const double tx2 = s.t[0] * s.t[0];
  const double tz2 = s.t[2] * s.t[2];
  auto f_of_u = [&](double u) {
    return az * az * u + 2.0 * std::sqrt(std::max(0.0, tx2 + u * (tz2 - tx2)));
  };

  Best best;
  best.consider(f_of_u(1.0), Vec3::UnitZ());
  best.consider(f_of_u(0.0), Vec3::UnitX());
  const double diff = tx2 - tz2;
  if (std::abs(diff) > 1e-15 && std::abs(az) > 1e-6) {
    const double u_star = tx2 / diff - diff / (az * az * az * az);
    if (u_star > 0.0 && u_star < 1.0) {
      const double ct = std::sqrt(u_star);
      best.consider(f_of_u(u_star),
                    Vec3(std::sqrt(1.0 - u_star), 0.0, ct));
    }
  }

  CriterionReport rep;
  rep.max_value = best.value;
  rep.argmax = best.dir;
  rep.certified_upper_bound = best.value;
  rep.method = CriterionMethod::AxialClosedForm;
  rep.grid_n = 0;
  rep.refine_iters = 0;
  return rep;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::CertifiedUnsteerable:
      return "CertifiedUnsteerable";
    case Verdict::CriterionViolated:
      return "CriterionViolated";
    default:
      return "Inconclusive";
  }
}

const char* to_string(CriterionMethod m) {
  return m == CriterionMethod::AxialClosedForm ? "AxialClosedForm"
                                               : "GridRefine";
}

Mat2 steered_state(const CanonicalState& state, const Direction& x) {
  const Vec3 tx = state.t.cwiseProduct(x.hat);
  return 0.5 * bloch_operator(1.0 + state.a.dot(x.hat), tx);
}

EigPair steered_eigs(const CanonicalState& state, const Direction& x) {
  const double ax = state.a.dot(x.hat);
  const double n = state.t.cwiseProduct(x.hat).norm();
  return EigPair{0.25 * (1.0 + ax + n), 0.25 * (1.0 + ax - n)};
}

double criterion_value_at(const CanonicalState& state, const Direction& x) {
  return f_value(state.a, state.t, x.hat);
}

std::vector<Vec3> fibonacci_sphere(int n) {
  if (n < 1) throw std::invalid_argument("fibonacci_sphere: n must be >= 1");
  const double golden_angle = M_PI * (3.0 - std::sqrt(5.0));
  std::vector<Vec3> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / n;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden_angle * i;
    pts[static_cast<std::size_t>(i)] =
        Vec3(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

double fibonacci_covering_radius(int n) {
  return kCoveringConstant / std::sqrt(static_cast<double>(n));
}

CriterionReport evaluate_criterion(const CanonicalState& state, int grid_n,
                                   int refine_iters) {
  if (grid_n < 100)
    throw std::invalid_argument("evaluate_criterion: grid_n must be >= 100");

  CriterionReport rep;
  if (axial_fast_path(state)) {
    rep = axial_closed_form(state);
  } else {
    const std::vector<Vec3> dirs = fibonacci_sphere(grid_n);
    std::vector<double> values(dirs.size());
    parallel_chunks(dirs.size(), 4096,
                    [&](std::size_t lo, std::size_t hi, std::size_t) {
                      for (std::size_t i = lo; i < hi; ++i)
                        values[i] = f_value(state.a, state.t, dirs[i]);
                    });

    Best grid_best;
    for (std::size_t i = 0; i < dirs.size(); ++i)
      grid_best.consider(values[i], dirs[i]);

    // Seed the local ascent from the 16 best lattice points.
    const int n_seeds = std::min<int>(16, grid_n);
    std::vector<std::size_t> order(dirs.size());
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + n_seeds, order.end(),
                      [&](std::size_t p, std::size_t q) {
                        if (values[p] != values[q]) return values[p] > values[q];
                        return lex_less(dirs[p], dirs[q]);
                      });

    std::vector<Best> refined(static_cast<std::size_t>(n_seeds));
    parallel_chunks(static_cast<std::size_t>(n_seeds), 1,
                    [&](std::size_t lo, std::size_t hi, std::size_t) {
                      for (std::size_t i = lo; i < hi; ++i)
                        refined[i] = refine_from(state.a, state.t,
                                                 dirs[order[i]], refine_iters);
                    });
    Best best = grid_best;
    for (const Best& b : refined) best.consider(b.value, b.dir);

    const double lipschitz =
        2.0 * state.a.squaredNorm() + 2.0 * state.t.cwiseAbs().maxCoeff();
    const double upper =
        grid_best.value + lipschitz * fibonacci_covering_radius(grid_n);

    rep.max_value = best.value;
    rep.argmax = best.dir;
    rep.certified_upper_bound = std::max(upper, best.value);
    rep.method = CriterionMethod::GridRefine;
  }
  rep.grid_n = grid_n;
  rep.refine_iters = refine_iters;

  if (rep.certified_upper_bound <= 1.0 + kVerdictTol)
    rep.verdict = Verdict::CertifiedUnsteerable;
  else if (rep.max_value > 1.0 + kVerdictTol)
    rep.verdict = Verdict::CriterionViolated;
  else
    rep.verdict = Verdict::Inconclusive;
  return rep;
}

std::pair<Mat2, Mat2> assemblage_at(const Mat4& rho, const Direction& x) {
  const Mat4 m_plus = kron(bloch_projector(x.hat), identity2());
  const Mat4 m_minus = kron(bloch_projector(-x.hat), identity2());
  return {partial_trace_alice(m_plus * rho),
          partial_trace_alice(m_minus * rho)};
}

std::vector<std::pair<Mat2, Mat2>> assemblage(
    const Mat4& rho, const std::vector<Direction>& directions) {
  std::vector<std::pair<Mat2, Mat2>> out;
  out.reserve(directions.size());
  for (const Direction& x : directions) out.push_back(assemblage_at(rho, x));
  return out;
}

}  // namespace steerlab
