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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "steerlab/family.hpp"
#include "steerlab/json_io.hpp"

namespace {

using steerlab::Mat4;
using steerlab::Vec3;
namespace sl = steerlab;
using nlohmann::json;

// Exit codes shared across subcommands:
//   0 success / certified       4 malformed input or I/O failure
//   1 violated / not certified  5 Bob marginal pure (no canonical form)
//   2 inconclusive              6 LHS model not reproducible
//   3 invalid state
constexpr int kExitCertified = 0;
constexpr int kExitViolated = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInvalidState = 3;
constexpr int kExitBadInput = 4;
constexpr int kExitBobPure = 5;
constexpr int kExitNotReproducible = 6;

struct BadInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidState : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw BadInput("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw BadInput(std::string("malformed JSON: ") + e.what());
  }
}

Mat4 load_state(const std::string& path, double tol) {
  const Mat4 rho = sl::state_from_json(parse_json(read_input(path)));
  const sl::StateValidity v = sl::is_valid_state(rho, tol);
  if (!v.valid) {
    std::ostringstream os;
    os << "invalid state:";
    if (v.hermiticity_defect > tol)
      os << " hermiticity defect " << v.hermiticity_defect;
    if (v.trace_defect > tol) os << " trace defect " << v.trace_defect;
    if (v.min_eigenvalue < -tol)
      os << " negative eigenvalue " << v.min_eigenvalue;
    throw InvalidState(os.str());
  }
  return rho;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw BadInput("cannot write " + out_path);
    out << j.dump(2) << "\n";
  }
}

int verdict_exit_code(sl::Verdict v) {
  switch (v) {
    case sl::Verdict::CertifiedUnsteerable:
      return kExitCertified;
    case sl::Verdict::CriterionViolated:
      return kExitViolated;
    default:
      return kExitInconclusive;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steerlab: unsteerability certificates and local hidden state "
               "simulation for two-qubit states"};
  app.require_subcommand(1);

  std::string state_path;
  std::string out_path;
  std::string directions_path;
  std::string povm_path;
  int grid_n = 20000;
  int refine_iters = 200;
  double tolerance = sl::kDefaultTol;
  int fibonacci_n = 0;
  std::int64_t samples = 1000000;
  std::uint64_t seed = 1;
  bool force = false;
  int p_steps = 50;
  int chi_steps = 50;
  double threshold_tol = 1e-5;
  int budget = 10000;

  CLI::App* check = app.add_subcommand(
      "check", "Evaluate the unsteerability criterion for a state file");
  check->add_option("state", state_path, "state JSON file or -")->required();
  check->add_option("--grid-n", grid_n, "sphere lattice size");
  check->add_option("--refine-iters", refine_iters, "local ascent iterations");
  check->add_option("--tolerance", tolerance, "validity tolerance");
  check->add_option("--out", out_path, "write the report here");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo check of the local hidden state model");
  simulate->add_option("state", state_path, "state JSON file or -")->required();
  simulate->add_option("--directions-file", directions_path,
                       "JSON array of measurement directions");
  simulate->add_option("--fibonacci", fibonacci_n,
                       "use a Fibonacci grid of this many directions");
  simulate->add_option("--samples", samples, "hidden-state sample count");
  simulate->add_option("--seed", seed, "RNG seed");
  simulate->add_option("--grid-n", grid_n, "criterion lattice size");
  simulate->add_flag("--force", force, "simulate even when not certified");
  simulate->add_option("--out", out_path, "write the report here");

  CLI::App* scan = app.add_subcommand(
      "scan-family", "Region map of the one-way steering family as CSV");
  scan->add_option("--p-steps", p_steps, "grid steps in p");
  scan->add_option("--chi-steps", chi_steps, "grid steps in chi");
  scan->add_option("--grid-n", grid_n, "criterion lattice size");
  scan->add_option("--out", out_path, "CSV output path (default stdout)");

  CLI::App* threshold = app.add_subcommand(
      "threshold", "CHSH threshold of the filtered POVM one-way family");
  threshold->add_option("--tol", threshold_tol, "bisection tolerance");

  CLI::App* jm = app.add_subcommand(
      "jm", "Joint measurability of a dichotomic qubit POVM family");
  jm->add_option("povms", povm_path, "POVM JSON file or -")->required();
  jm->add_option("--grid-n", grid_n, "sampling grid for continuous families");
  jm->add_option("--out", out_path, "write the report here");

  CLI::App* strengthen = app.add_subcommand(
      "strengthen", "Search for a convex decomposition certificate");
  strengthen->add_option("state", state_path, "state JSON file or -")
      ->required();
  strengthen->add_option("--budget", budget, "objective evaluation budget");
  strengthen->add_option("--seed", seed, "RNG seed");
  strengthen->add_option("--grid-n", grid_n, "criterion lattice size");
  strengthen->add_option("--out", out_path, "write the report here");

  CLI::App* canonicalize = app.add_subcommand(
      "canonicalize", "Reduce a state to canonical form");
  canonicalize->add_option("state", state_path, "state JSON file or -")
      ->required();
  canonicalize->add_option("--tolerance", tolerance, "validity tolerance");
  canonicalize->add_option("--out", out_path, "write the report here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      const Mat4 rho = load_state(state_path, tolerance);
      const sl::CanonicalizationRecord rec = sl::canonicalize(rho);
      const sl::CriterionReport rep =
          sl::evaluate_criterion(rec.canonical, grid_n, refine_iters);
      json j = sl::to_json(rep);
      j["params"] = json{{"grid_n", grid_n},
                         {"refine_iters", refine_iters},
                         {"tolerance", tolerance},
                         {"state", state_path}};
      emit(j, out_path);
      if (rep.verdict == sl::Verdict::Inconclusive)
        std::cerr << "inconclusive: the certified upper bound exceeds 1 while "
                     "the refined maximum does not; raise --grid-n to shrink "
                     "the certificate margin\n";
      return verdict_exit_code(rep.verdict);
    }

    if (simulate->parsed()) {
      if ((directions_path.empty()) == (fibonacci_n == 0))
        throw BadInput(
            "simulate: give exactly one of --directions-file or --fibonacci");
      const Mat4 rho = load_state(state_path, tolerance);
      const sl::CanonicalizationRecord rec = sl::canonicalize(rho);
      if (!force) {
        const sl::CriterionReport rep =
            sl::evaluate_criterion(rec.canonical, grid_n);
        if (rep.verdict != sl::Verdict::CertifiedUnsteerable) {
          std::cerr << "state not certified (verdict "
                    << sl::to_string(rep.verdict)
                    << "); pass --force to attempt anyway\n";
          return kExitViolated;
        }
      }
      std::vector<sl::Direction> dirs;
      if (!directions_path.empty()) {
        for (const Vec3& v : sl::directions_from_json(
                 parse_json(read_input(directions_path))))
          dirs.emplace_back(v);
      } else {
        for (const Vec3& v : sl::fibonacci_sphere(fibonacci_n))
          dirs.emplace_back(v);
      }
      const sl::LhsVerificationReport rep =
          sl::simulate_assemblage(rec.canonical, dirs, samples, seed);
      json j = sl::to_json(rep);
      j["params"] = json{{"samples", samples},
                         {"seed", seed},
                         {"grid_n", grid_n},
                         {"force", force},
                         {"state", state_path}};
      emit(j, out_path);
      return kExitCertified;
    }

    if (scan->parsed()) {
      const std::vector<sl::ScanRow> rows =
          sl::scan_grid(p_steps, chi_steps, grid_n);
      if (out_path.empty()) {
        sl::write_scan_csv(std::cout, rows);
      } else {
        std::ofstream out(out_path);
        if (!out) throw BadInput("cannot write " + out_path);
        sl::write_scan_csv(out, rows);
      }
      return kExitCertified;
    }

    if (threshold->parsed()) {
      const double p_star = sl::povm_chsh_threshold(threshold_tol);
      emit(json{{"p_star", p_star}, {"params", json{{"tol", threshold_tol}}}},
           out_path);
      return kExitCertified;
    }

    if (jm->parsed()) {
      const auto input = sl::povm_input_from_json(parse_json(read_input(povm_path)));
      sl::JmReport rep;
      if (std::holds_alternative<std::vector<sl::DichotomicQubitPOVM>>(input))
        rep = sl::jm_check_list(
            std::get<std::vector<sl::DichotomicQubitPOVM>>(input));
      else
        rep = sl::jm_family_sampler(std::get<sl::PovmFamily>(input), grid_n);
      json j = sl::to_json(rep);
      j["params"] = json{{"grid_n", grid_n}, {"povms", povm_path}};
      emit(j, out_path);
      return rep.all_pass ? kExitCertified : kExitViolated;
    }

    if (strengthen->parsed()) {
      const Mat4 rho = load_state(state_path, tolerance);
      const std::optional<sl::Decomposition> d =
          sl::strengthen(rho, budget, seed);
      if (!d) {
        std::cerr << "no certifying decomposition found within budget "
                  << budget << " (inconclusive)\n";
        return kExitViolated;
      }
      json j = sl::to_json(*d);
      j["verified"] = sl::verify_decomposition(rho, *d, grid_n);
      j["params"] = json{{"budget", budget},
                         {"seed", seed},
                         {"grid_n", grid_n},
                         {"state", state_path}};
      emit(j, out_path);
      return kExitCertified;
    }

    if (canonicalize->parsed()) {
      const Mat4 rho = load_state(state_path, tolerance);
      const sl::CanonicalizationRecord rec = sl::canonicalize(rho);
      json j = sl::to_json(rec);
      j["params"] = json{{"tolerance", tolerance}, {"state", state_path}};
      emit(j, out_path);
      return kExitCertified;
    }
  } catch (const BadInput& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  } catch (const sl::SchemaError& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  } catch (const InvalidState& e) {
    std::cerr << e.what() << "\n";
    return kExitInvalidState;
  } catch (const sl::BobMarginalPure& e) {
    std::cerr << e.what() << "\n";
    return kExitBobPure;
  } catch (const sl::NotReproducible& e) {
    std::cerr << e.what() << "\n";
    return kExitNotReproducible;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
