// Copyright 2026 The excl Authors
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

#include "excl/cli.hpp"

#include <chrono>
#include <cstdio>
#include <optional>

#include <CLI11.hpp>

#include "excl/certify.hpp"
#include "excl/errors.hpp"
#include "excl/io.hpp"
#include "excl/pbr.hpp"
#include "excl/solver.hpp"

namespace excl::cli {

namespace {

using io::json;
using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

int status_exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return kExitOk;
    case SolveStatus::max_iters: return kExitMaxIters;
    case SolveStatus::numerical_failure: return kExitNumerical;
  }
  return kExitNumerical;
}

json measurement_to_json(const std::vector<HermitianMatrix>& elements,
                         const std::vector<std::string>& labels, bool has_inconclusive) {
  json out;
  out["dim"] = elements.empty() ? 0 : elements.front().dim();
  out["has_inconclusive"] = has_inconclusive;
  json arr = json::array();
  for (std::size_t i = 0; i < elements.size(); ++i) {
    json e;
    e["label"] = i < labels.size() ? labels[i] : std::to_string(i + 1);
    e["matrix"] = io::matrix_to_json(elements[i]);
    arr.push_back(std::move(e));
  }
  out["elements"] = std::move(arr);
  return out;
}

struct SolveArgs {
  std::string ensemble_path;
  std::string variant = "min-error";
  int m = 0;  // 0: no reduction
  double gap_tol = 1e-9;
  double feas_tol = 1e-9;
  int max_iters = 200;
  std::uint64_t seed = 0;
  std::string out_path;
  bool timings = false;
};

int cmd_solve(const SolveArgs& a) {
  const auto t0 = clock_type::now();
  const io::LoadedEnsemble loaded = io::read_ensemble_file(a.ensemble_path);
  const auto variant = variant_from_name(a.variant);
  if (!variant) throw ParseError("", 0, "--variant", "unknown variant " + a.variant);

  OperatorSet ops = loaded.weighted;
  if (a.m > 0) ops = m_state_reduction(ops, a.m);

  const ExclusionModel model = ExclusionModel::build(*variant, ops);
  SolveOptions opts;
  opts.gap_tol = a.gap_tol;
  opts.feas_tol = a.feas_tol;
  opts.max_iters = a.max_iters;
  opts.seed = a.seed;
  const SolveReport rep = solve(model, opts);

  json out;
  out["command"] = "solve";
  out["ensemble"] = a.ensemble_path;
  out["variant"] = a.variant;
  if (a.m > 0) out["m"] = a.m;
  out["seed"] = a.seed;
  {
    json o;
    o["gap_tol"] = opts.gap_tol;
    o["feas_tol"] = opts.feas_tol;
    o["max_iters"] = opts.max_iters;
    out["options"] = std::move(o);
  }
  out["status"] = status_name(rep.status);
  out["alpha"] = rep.alpha;
  out["beta"] = rep.beta;
  out["gap"] = rep.gap;
  out["iterations"] = rep.iterations;
  out["restarts"] = rep.restarts;
  out["primal_residual"] = rep.primal_residual;
  out["dual_residual"] = rep.dual_residual;
  if (rep.primal.lambda) out["lambda"] = *rep.primal.lambda;
  out["measurement"] = measurement_to_json(rep.primal.m, ops.labels,
                                           model.variant() == Variant::unambiguous);
  {
    json cert;
    cert["N"] = io::matrix_to_json(rep.dual.n);
    const FeasibilityReport fr = model.dual_feasibility(rep.dual);
    json margins = json::array();
    for (const auto& [name, v] : fr.margins) margins.push_back(v);
    cert["margins"] = std::move(margins);
    if (!rep.dual.a.empty()) cert["a"] = rep.dual.a;
    out["certificate"] = std::move(cert);
  }
  if (a.timings) {
    json t;
    t["total_seconds"] = seconds_since(t0);
    out["timings"] = std::move(t);
  }
  io::write_text_file(a.out_path, io::dump_json(out));
  std::printf("solve %s: status=%s alpha=%.12g beta=%.12g gap=%.3g -> %s\n",
              variant_name(*variant), status_name(rep.status), rep.alpha, rep.beta, rep.gap,
              a.out_path.c_str());
  return status_exit_code(rep.status);
}

struct CertifyArgs {
  std::string ensemble_path;
  std::string measurement_path;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::string out_path;
  bool timings = false;
};

int cmd_certify(const CertifyArgs& a) {
  const auto t0 = clock_type::now();
  const io::LoadedEnsemble loaded = io::read_ensemble_file(a.ensemble_path);
  const Measurement m = io::read_measurement_file(a.measurement_path);
  const Certificate cert = theorem1_certificate(loaded.weighted, m, a.tol);
  const double alpha = exclusion_error(loaded.weighted, m);

  json out;
  out["command"] = "certify";
  out["ensemble"] = a.ensemble_path;
  out["measurement"] = a.measurement_path;
  out["seed"] = a.seed;
  out["tol"] = a.tol;
  out["is_optimal"] = cert.is_optimal;
  out["alpha"] = alpha;
  out["trace_N"] = cert.n.trace_real();
  out["hermiticity_residual"] = cert.hermiticity_residual;
  out["objective_match"] = cert.objective_match;
  out["margins"] = cert.margins;
  out["N"] = io::matrix_to_json(cert.n);
  if (a.timings) {
    json t;
    t["total_seconds"] = seconds_since(t0);
    out["timings"] = std::move(t);
  }
  io::write_text_file(a.out_path, io::dump_json(out));
  std::printf("certify: %s (alpha=%.12g, tr N=%.12g) -> %s\n",
              cert.is_optimal ? "optimal" : "not optimal", alpha, cert.n.trace_real(),
              a.out_path.c_str());
  return cert.is_optimal ? kExitOk : kExitNotOptimal;
}

struct BoundArgs {
  std::string ensemble_path;
  std::string which = "fidelity";
  double eps = 1e-3;
  std::uint64_t seed = 0;
  std::string out_path;
  bool timings = false;
};

int cmd_bound(const BoundArgs& a) {
  const auto t0 = clock_type::now();
  const io::LoadedEnsemble loaded = io::read_ensemble_file(a.ensemble_path);

  json out;
  out["command"] = "bound";
  out["ensemble"] = a.ensemble_path;
  out["which"] = a.which;
  out["seed"] = a.seed;

  if (a.which == "fidelity" || a.which == "witness") {
    if (!loaded.ensemble) {
      throw ParseError(a.ensemble_path, 0, "subnormalized",
                       "fidelity-based bounds need a proper ensemble, not derived operators");
    }
  }

  if (a.which == "fidelity") {
    const BoundReport r = fidelity_condition(*loaded.ensemble);
    out["value"] = r.value;
    out["threshold"] = r.threshold;
    out["exclusion_impossible"] = r.exclusion_impossible;
    out["verdict"] = r.note;
  } else if (a.which == "witness") {
    const auto [n, r] = witness_from_fidelity(*loaded.ensemble, a.eps);
    out["value"] = r.value;
    out["closed_form_trace"] = r.threshold;
    out["p"] = r.p;
    out["eps"] = r.eps;
    out["min_margin"] = r.min_margin;
    out["exclusion_impossible"] = r.exclusion_impossible;
    out["verdict"] = r.note;
    out["N"] = io::matrix_to_json(n);
  } else if (a.which == "perm") {
    const BoundReport r = perm_lower_bound(loaded.weighted, PermSearch::automatic, a.seed);
    out["value"] = r.value;
    json perm = json::array();
    for (int idx : r.permutation) perm.push_back(idx + 1);
    out["permutation"] = std::move(perm);
    out["exhaustive"] = r.exhaustive;
    out["permutations_tried"] = r.permutations_tried;
    out["min_margin"] = r.min_margin;
  } else {
    throw ParseError("", 0, "--which", "unknown bound kind " + a.which);
  }
  if (a.timings) {
    json t;
    t["total_seconds"] = seconds_since(t0);
    out["timings"] = std::move(t);
  }
  io::write_text_file(a.out_path, io::dump_json(out));
  std::printf("bound %s -> %s\n", a.which.c_str(), a.out_path.c_str());
  return kExitOk;
}

struct PbrArgs {
  int n = 1;
  double theta = 0.0;
  std::optional<double> theta_deg;
  std::string mode = "analytic";
  double gap_tol = 1e-9;
  std::uint64_t seed = 0;
  std::string out_path;
  bool timings = false;
};

int cmd_pbr(const PbrArgs& a) {
  const auto t0 = clock_type::now();
  const double theta =
      a.theta_deg ? (*a.theta_deg * 3.14159265358979323846 / 180.0) : a.theta;
  const PbrGame game = PbrGame::make(a.n, theta);
  const PbrReport rep = analyze(game);

  json out;
  out["command"] = "pbr";
  out["n"] = a.n;
  out["theta"] = theta;
  out["mode"] = a.mode;
  out["seed"] = a.seed;
  out["criterion_met"] = rep.criterion_met;
  out["c_theta"] = rep.c_theta;
  out["q"] = rep.q;
  out["p_win_global"] = rep.p_win_global;
  out["p_win_separable"] = rep.p_win_separable;
  out["alpha_analytic"] = rep.alpha_analytic;

  int code = kExitOk;
  if (a.mode == "sdp" || a.mode == "both") {
    const Ensemble ens = build_pbr_ensemble(game);
    const ExclusionModel model = ExclusionModel::build(Variant::min_error, ens.weighted_operators());
    SolveOptions opts;
    opts.gap_tol = a.gap_tol;
    opts.seed = a.seed;
    const SolveReport srep = solve(model, opts);
    out["alpha_sdp"] = srep.alpha;
    out["solver_status"] = status_name(srep.status);
    out["solver_iterations"] = srep.iterations;
    if (a.mode == "both") {
      out["consistency"] = std::abs(srep.alpha - rep.alpha_analytic);
    }
    code = status_exit_code(srep.status);
  } else if (a.mode != "analytic") {
    throw ParseError("", 0, "--mode", "unknown mode " + a.mode);
  }
  if (a.timings) {
    json t;
    t["total_seconds"] = seconds_since(t0);
    out["timings"] = std::move(t);
  }
  io::write_text_file(a.out_path, io::dump_json(out));
  std::printf("pbr n=%d theta=%.6g: p_win_global=%.12g p_win_separable=%.12g -> %s\n", a.n,
              theta, rep.p_win_global, rep.p_win_separable, a.out_path.c_str());
  return code;
}

struct ConvertArgs {
  std::string ensemble_path;
  std::string to = "discrimination";
  int m = 0;
  std::uint64_t seed = 0;
  std::string out_path;
};

int cmd_convert(const ConvertArgs& a) {
  const io::LoadedEnsemble loaded = io::read_ensemble_file(a.ensemble_path);
  OperatorSet derived;
  if (a.to == "discrimination") {
    derived = to_discrimination(loaded.weighted);
  } else if (a.to == "m-exclusion") {
    if (a.m < 1) throw BadSubsetSize("m-exclusion needs --m >= 1");
    derived = m_state_reduction(loaded.weighted, a.m);
  } else {
    throw ParseError("", 0, "--to", "unknown conversion " + a.to);
  }

  json out;
  out["dim"] = derived.dim;
  out["subnormalized"] = true;
  json states = json::array();
  for (int i = 0; i < derived.count(); ++i) {
    json s;
    s["label"] = derived.labels[i];
    s["prob"] = derived.ops[i].trace_real();
    s["matrix"] = io::matrix_to_json(derived.ops[i]);
    states.push_back(std::move(s));
  }
  out["states"] = std::move(states);
  io::write_text_file(a.out_path, io::dump_json(out));
  std::printf("convert %s: %d operators -> %s\n", a.to.c_str(), derived.count(),
              a.out_path.c_str());
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args) {
  CLI::App app{"state-exclusion SDP toolkit"};
  app.require_subcommand(1);

  SolveArgs sa;
  auto* solve_cmd = app.add_subcommand("solve", "solve an exclusion SDP");
  solve_cmd->add_option("--ensemble", sa.ensemble_path, "ensemble file")->required();
  solve_cmd->add_option("--variant", sa.variant, "min-error|unambiguous|worst-case");
  solve_cmd->add_option("--m", sa.m, "apply the m-subset reduction first");
  solve_cmd->add_option("--gap-tol", sa.gap_tol, "duality gap tolerance");
  solve_cmd->add_option("--feas-tol", sa.feas_tol, "feasibility tolerance");
  solve_cmd->add_option("--max-iters", sa.max_iters, "iteration cap");
  solve_cmd->add_option("--seed", sa.seed, "seed for numerical-failure restarts");
  solve_cmd->add_option("--out", sa.out_path, "report path")->required();
  solve_cmd->add_flag("--timings", sa.timings, "include wall-clock timings in the report");

  CertifyArgs ca;
  auto* certify_cmd = app.add_subcommand("certify", "check a measurement for optimality");
  certify_cmd->add_option("--ensemble", ca.ensemble_path, "ensemble file")->required();
  certify_cmd->add_option("--measurement", ca.measurement_path, "measurement file")->required();
  certify_cmd->add_option("--tol", ca.tol, "certificate tolerance");
  certify_cmd->add_option("--seed", ca.seed, "echoed in the report");
  certify_cmd->add_option("--out", ca.out_path, "report path")->required();
  certify_cmd->add_flag("--timings", ca.timings, "include wall-clock timings in the report");

  BoundArgs ba;
  auto* bound_cmd = app.add_subcommand("bound", "bounds and impossibility certificates");
  bound_cmd->add_option("--ensemble", ba.ensemble_path, "ensemble file")->required();
  bound_cmd->add_option("--which", ba.which, "fidelity|perm|witness");
  bound_cmd->add_option("--eps", ba.eps, "witness epsilon");
  bound_cmd->add_option("--seed", ba.seed, "permutation sampling seed");
  bound_cmd->add_option("--out", ba.out_path, "report path")->required();
  bound_cmd->add_flag("--timings", ba.timings, "include wall-clock timings in the report");

  PbrArgs pa;
  auto* pbr_cmd = app.add_subcommand("pbr", "analyze the n-system exclusion game");
  pbr_cmd->add_option("--n", pa.n, "number of systems")->required();
  auto* theta_opt = pbr_cmd->add_option("--theta", pa.theta, "angle in radians");
  double theta_deg = 0.0;
  auto* theta_deg_opt =
      pbr_cmd->add_option("--theta-deg", theta_deg, "angle in degrees (converted)");
  pbr_cmd->add_option("--mode", pa.mode, "analytic|sdp|both");
  pbr_cmd->add_option("--gap-tol", pa.gap_tol, "solver gap tolerance (sdp modes)");
  pbr_cmd->add_option("--seed", pa.seed, "echoed in the report");
  pbr_cmd->add_option("--out", pa.out_path, "report path")->required();
  pbr_cmd->add_flag("--timings", pa.timings, "include wall-clock timings in the report");

  ConvertArgs va;
  auto* convert_cmd = app.add_subcommand("convert", "emit derived operator lists");
  convert_cmd->add_option("--ensemble", va.ensemble_path, "ensemble file")->required();
  convert_cmd->add_option("--to", va.to, "discrimination|m-exclusion");
  convert_cmd->add_option("--m", va.m, "subset size for m-exclusion");
  convert_cmd->add_option("--seed", va.seed, "echoed in derived labels if sampled");
  convert_cmd->add_option("--out", va.out_path, "output path")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::printf("%s", app.help().c_str());
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }

  try {
    if (*solve_cmd) return cmd_solve(sa);
    if (*certify_cmd) return cmd_certify(ca);
    if (*bound_cmd) {
      if (ba.which == "witness" && !(ba.eps > 0.0 && ba.eps < 1.0)) throw BadEps("--eps in (0,1)");
      return cmd_bound(ba);
    }
    if (*pbr_cmd) {
      if (theta_deg_opt->count() > 0) pa.theta_deg = theta_deg;
      if (theta_opt->count() == 0 && !pa.theta_deg) {
        throw ParseError("", 0, "--theta", "either --theta or --theta-deg is required");
      }
      return cmd_pbr(pa);
    }
    if (*convert_cmd) return cmd_convert(va);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const ScaleCap& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitScaleCap;
  } catch (const DegenerateK& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegenerate;
  } catch (const BadSubsetSize& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegenerate;
  } catch (const TooFewStates& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegenerate;
  } catch (const BadEps& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegenerate;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  }
  return kExitParse;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace excl::cli
