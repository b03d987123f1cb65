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

#include "steerlab/lhs_model.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "steerlab/parallel.hpp"

namespace steerlab {

namespace {

constexpr double kFeasibilityTol = 1e-12;

// s_hat for a direction where ||T x|| = 0; any axis reproduces the isotropic
// target, z by convention.
Vec3 steering_axis(const CanonicalState& state, const Direction& x) {
  const Vec3 tx = state.t.cwiseProduct(x.hat);
  const double n = tx.norm();
  return n > 1e-14 ? Vec3(tx / n) : Vec3::UnitZ();
}

std::string vec_to_string(const Vec3& v) {
  std::ostringstream os;
  os << "(" << v[0] << ", " << v[1] << ", " << v[2] << ")";
  return os.str();
}

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

EigPair cap_eigenvalues(double c) {
  if (c < -1.0 - 1e-12 || c > 1.0 + 1e-12)
    throw std::invalid_argument("cap_eigenvalues: c must lie in [-1, 1]");
  c = std::clamp(c, -1.0, 1.0);
  const double beta = (1.0 - c) * (1.0 - c) / 8.0;
  const double alpha = std::sqrt(2.0 * beta) - beta;
  return EigPair{alpha, beta};
}

MixedResponse fit_response(const EigPair& target, const Vec3& s_hat) {
  const double alpha = target.alpha;
  const double beta = target.beta;
  if (beta < -1e-12 || alpha < beta - 1e-12)
    throw std::invalid_argument("fit_response: need alpha >= beta >= 0");
  const double sum = alpha + beta;
  if (sum * sum - 2.0 * beta > kFeasibilityTol) {
    std::ostringstream os;
    os << "fit_response: (alpha+beta)^2 = " << sum * sum << " exceeds 2 beta = "
       << 2.0 * beta;
    throw NotReproducible(os.str());
  }

  MixedResponse resp;
  resp.cap.s_hat = s_hat.normalized();
  if (beta <= 1e-18) {
    // Feasibility already forces alpha ~ 0; the all-minus response.
    resp.cap.c = 1.0;
    resp.w = 0.0;
    return resp;
  }
  const double r = alpha / beta;
  resp.cap.c = std::clamp((r - 3.0) / (r + 1.0), -1.0, 1.0);
  resp.w = std::clamp(sum * sum / (2.0 * beta), 0.0, 1.0);
  return resp;
}

int respond(const MixedResponse& resp, const Vec3& lambda_hat, double coin) {
  if (coin >= resp.w) return -1;
  return resp.cap.s_hat.dot(lambda_hat) - resp.cap.c >= 0.0 ? 1 : -1;
}

Mat2 analytic_lhs_steered(const CanonicalState& state, const Direction& x) {
  const Vec3 s_hat = steering_axis(state, x);
  const MixedResponse resp = fit_response(steered_eigs(state, x), s_hat);
  // Cap integrals: alpha' + beta' = (1 - c)/2, alpha' - beta' = (1 - c^2)/4.
  const double c = resp.cap.c;
  const double tr = 0.5 * (1.0 - c);
  const double diff = 0.25 * (1.0 - c * c);
  return resp.w * bloch_operator(tr, diff * s_hat);
}

LhsVerificationReport simulate_assemblage(const CanonicalState& state,
                                          const std::vector<Direction>& dirs,
                                          std::int64_t n_samples,
                                          std::uint64_t seed) {
  if (n_samples < kMinLhsSamples)
    throw std::invalid_argument(
        "simulate_assemblage: n_samples below the minimum of 1000");
  if (dirs.empty())
    throw std::invalid_argument("simulate_assemblage: no directions given");

  struct PerDirection {
    Vec3 s_hat;
    double c;
    double w;
    Mat2 target;
    Mat2 analytic;
  };
  std::vector<PerDirection> fits;
  fits.reserve(dirs.size());
  for (const Direction& x : dirs) {
    MixedResponse resp;
    try {
      resp = fit_response(steered_eigs(state, x), steering_axis(state, x));
    } catch (const NotReproducible& e) {
      throw NotReproducible("direction " + vec_to_string(x.hat) + ": " +
                            e.what());
    }
    fits.push_back(PerDirection{resp.cap.s_hat, resp.cap.c, resp.w,
                                steered_state(state, x),
                                analytic_lhs_steered(state, x)});
  }

  // Per chunk: count of cap hits and sum of hidden vectors inside each cap,
  // plus the overall hidden-vector sum for Bob's marginal. Everything else
  // follows from |lambda><lambda| = (I + lambda.sigma)/2.
  const std::size_t n = static_cast<std::size_t>(n_samples);
  const std::size_t chunk = 1 << 16;
  const std::size_t n_chunks = (n + chunk - 1) / chunk;
  const std::size_t d = dirs.size();

  std::vector<std::vector<std::int64_t>> counts(
      n_chunks, std::vector<std::int64_t>(d, 0));
  std::vector<std::vector<Vec3>> cap_sums(n_chunks,
                                          std::vector<Vec3>(d, Vec3::Zero()));
  std::vector<Vec3> marginal_sums(n_chunks, Vec3::Zero());

  parallel_chunks(n, chunk, [&](std::size_t lo, std::size_t hi,
                                std::size_t ci) {
    std::mt19937_64 rng(splitmix64(seed ^ (0x1234567890abcdefULL + ci)));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Vec3 marginal = Vec3::Zero();
    for (std::size_t i = lo; i < hi; ++i) {
      const double z = 1.0 - 2.0 * uni(rng);
      const double phi = 2.0 * M_PI * uni(rng);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const Vec3 lambda(r * std::cos(phi), r * std::sin(phi), z);
      marginal += lambda;
      for (std::size_t k = 0; k < d; ++k) {
        if (fits[k].s_hat.dot(lambda) - fits[k].c >= 0.0) {
          counts[ci][k] += 1;
          cap_sums[ci][k] += lambda;
        }
      }
    }
    marginal_sums[ci] = marginal;
  });

  // Reduce in chunk order for schedule-independent results.
  std::vector<std::int64_t> count(d, 0);
  std::vector<Vec3> cap_sum(d, Vec3::Zero());
  Vec3 marginal_sum = Vec3::Zero();
  for (std::size_t ci = 0; ci < n_chunks; ++ci) {
    marginal_sum += marginal_sums[ci];
    for (std::size_t k = 0; k < d; ++k) {
      count[k] += counts[ci][k];
      cap_sum[k] += cap_sums[ci][k];
    }
  }

  const double inv_n = 1.0 / static_cast<double>(n_samples);
  LhsVerificationReport rep;
  rep.n_samples = n_samples;
  rep.seed = seed;
  rep.directions.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    const Mat2 empirical =
        fits[k].w * inv_n *
        bloch_operator(static_cast<double>(count[k]), cap_sum[k]);
    DirectionCheck check;
    check.direction = dirs[k].hat;
    check.analytic_dist = trace_distance(fits[k].analytic, fits[k].target);
    check.empirical_dist = trace_distance(empirical, fits[k].target);
    rep.directions.push_back(check);
  }
  const Mat2 empirical_marginal =
      inv_n * bloch_operator(static_cast<double>(n_samples), marginal_sum);
  rep.bob_marginal_dist =
      trace_distance(empirical_marginal, 0.5 * Mat2::Identity());
  return rep;
}

}  // namespace steerlab
