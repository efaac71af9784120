// Copyright 2026 The aoi-backup Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aoi/cli.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "aoi/errors.h"
#include "aoi/eval.h"
#include "aoi/params_io.h"
#include "aoi/policies.h"
#include "aoi/solver.h"
#include "aoi/structure.h"
#include "aoi/sweep.h"
#include "aoi/tables_io.h"
#include "json.hpp"

namespace aoi {
namespace {

struct SolverFlags {
  double epsilon = 1e-9;
  long max_iters = 1'000'000;
  std::optional<int> aoi_cap;
  bool test_mode = false;

  void Register(CLI::App* cmd) {
    cmd->add_option("--epsilon", epsilon, "Span tolerance of value iteration")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--max-iters", max_iters, "Iteration limit")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--aoi-cap", aoi_cap, "Override the AoI truncation bound")
        ->check(CLI::Range(2, 1 << 20));
    cmd->add_flag("--test-mode", test_mode,
                  "Admit omega = 0 and battery_cap = 1 when solving");
  }

  SolverConfig Config() const {
    SolverConfig cfg;
    cfg.epsilon = epsilon;
    cfg.max_iters = max_iters;
    cfg.test_mode = test_mode;
    return cfg;
  }
};

struct SimFlags {
  std::uint64_t seed = 1;
  std::int64_t horizon = 1'000'000;
  int reps = 20;
  std::optional<std::int64_t> warmup;

  void Register(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "Monte Carlo seed");
    cmd->add_option("--horizon", horizon, "Slots per replication")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--reps", reps, "Replications")->check(CLI::PositiveNumber);
    cmd->add_option("--warmup", warmup, "Discarded slots (default horizon/10)");
  }

  SimConfig Config() const {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.horizon = horizon;
    cfg.replications = reps;
    cfg.warmup = warmup;
    return cfg;
  }
};

SystemParams LoadParams(const std::string& path, const std::optional<int>& aoi_cap) {
  SystemParams params = LoadParamsFile(path);
  if (aoi_cap) params.aoi_cap = *aoi_cap;
  return params;
}

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path.string());
  out << text;
}

int RunSolve(const std::string& params_path, const SolverFlags& flags,
             const std::string& out_dir, bool skip_adequacy, std::ostream& out) {
  const SystemParams params = LoadParams(params_path, flags.aoi_cap);
  const SolverConfig cfg = flags.Config();
  const SolveResult solution = Solve(params, cfg);
  const PolicyTable policy = GreedyPolicy(solution.values, solution.q, params);
  const StructureReport report = CheckStructure(solution.values, solution.q, params);

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  SaveValueCsv(solution.values, (dir / "values.csv").string());

  nlohmann::json summary = {{"params", ParamsToJson(params)},
                            {"gain", solution.values.gain},
                            {"iterations", solution.values.iterations},
                            {"last_span", solution.values.last_span},
                            {"bellman_residual", BellmanResidual(solution.values, solution.q)},
                            {"kernels", std::string(kernels::IsaName(kernels::ResolveIsa(cfg.isa)))},
                            {"structure", ToJson(report)}};

  std::optional<ThresholdPolicy> tp;
  try {
    tp = ExtractThresholds(policy, params);
  } catch (const StructuralViolation& e) {
    summary["threshold_error"] = e.what();
  }
  int code = kExitOk;
  if (tp) {
    std::ofstream csv(dir / "thresholds.csv");
    WriteThresholdCsv(*tp, csv);
    SaveThresholdJson(*tp, (dir / "thresholds.json").string());
    summary["thresholds"] = ThresholdToJson(*tp)["thresholds"];
    summary["short_circuit_agrees"] = ShortCircuitPolicy(solution.q, params) == policy;
    if (!skip_adequacy) {
      const bool adequate = CheckTruncationAdequacy(*tp, params, cfg);
      summary["truncation_adequate"] = adequate;
      if (!adequate) code = kExitTruncation;
    }
  }
  if (!tp || !report.AllPassed()) code = kExitStructural;
  WriteText(dir / "structure.json", summary.dump(2) + "\n");
  out << summary.dump(2) << "\n";
  return code;
}

int RunCheck(const std::string& params_path, const std::string& values_path,
             const std::string& thresholds_path, double tol, std::ostream& out) {
  SystemParams params = LoadParamsFile(params_path);
  ValueTable v = LoadValueCsv(values_path);
  if (v.grid.battery_cap() != params.battery_cap) {
    throw ParseError("value table has battery_cap " +
                     std::to_string(v.grid.battery_cap()) + ", parameters say " +
                     std::to_string(params.battery_cap));
  }
  params.aoi_cap = v.grid.aoi_cap();
  ValidateParams(params, ParamMode::kTestSolve);
  const QTable q = ComputeQ(params, v.grid, v.values);
  const StructureReport report = CheckStructure(v, q, params, tol);
  nlohmann::json j = ToJson(report);

  bool ok = report.AllPassed();
  std::optional<ThresholdPolicy> tp;
  try {
    tp = ExtractThresholds(GreedyPolicy(v, q, params), params);
    j["thresholds"] = ThresholdToJson(*tp)["thresholds"];
  } catch (const StructuralViolation& e) {
    j["threshold_error"] = e.what();
    ok = false;
  }
  if (!thresholds_path.empty()) {
    const ThresholdPolicy stored = LoadThresholdJson(thresholds_path);
    const bool consistent = tp && stored == *tp;
    j["thresholds_consistent"] = consistent;
    ok = ok && consistent;
  }
  j["all_passed"] = ok;
  out << j.dump(2) << "\n";
  return ok ? kExitOk : kExitStructural;
}

int RunEval(const std::string& params_path, const std::vector<std::string>& policy_names,
            const std::string& method, const SolverFlags& solver_flags,
            const SimFlags& sim_flags, const std::string& out_path, std::ostream& out) {
  const SystemParams params = LoadParams(params_path, solver_flags.aoi_cap);
  ValidateParams(params, ParamMode::kEvalOnly);
  const SimConfig sim = sim_flags.Config();

  std::ostringstream csv;
  WriteResultsHeader(csv);
  for (const std::string& name : policy_names) {
    const SweepPolicy sp = ParseSweepPolicy(name);
    PolicySpec spec = sp.spec ? *sp.spec
                              : PolicySpec(Threshold{SolveThresholdPolicy(
                                    params, solver_flags.Config()).thresholds});
    EvalReport report;
    if (method == "exact") {
      report = EvaluateExact(spec, params);
    } else if (method == "mc") {
      report = Simulate(spec, params, sim);
    } else {
      report = EvaluateAuto(spec, params, sim);
    }
    WriteResultsRow(csv, sp.label, params, report, sim.seed);
  }
  if (out_path.empty()) {
    out << csv.str();
  } else {
    WriteText(out_path, csv.str());
  }
  return kExitOk;
}

int RunSweepCommand(const std::string& params_path, const std::string& axis,
                    const std::vector<double>& values,
                    const std::vector<std::string>& policy_names,
                    const SolverFlags& solver_flags, const SimFlags& sim_flags,
                    int eval_aoi_cap, bool check_adequacy, const std::string& out_path,
                    std::ostream& out) {
  SweepSpec spec;
  spec.axis = ParseAxis(axis);
  spec.values = values;
  spec.fixed = LoadParams(params_path, solver_flags.aoi_cap);
  spec.solver = solver_flags.Config();
  spec.sim = sim_flags.Config();
  spec.eval_aoi_cap = eval_aoi_cap;
  spec.check_adequacy = check_adequacy;
  if (!policy_names.empty()) {
    spec.policies.clear();
    for (const std::string& name : policy_names) {
      spec.policies.push_back(ParseSweepPolicy(name));
    }
  }
  const SweepResult result = RunSweep(spec);
  if (out_path.empty()) {
    out << result.csv;
  } else {
    WriteText(out_path, result.csv);
  }
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Optimal AoI updating with harvested and paid backup energy"};
  app.name(args.empty() ? "aoi" : args[0]);
  app.require_subcommand(1);

  std::string params_path;
  SolverFlags solver_flags;
  SimFlags sim_flags;
  std::string out_path;

  CLI::App* solve = app.add_subcommand("solve", "Solve one parameter point");
  solve->add_option("--params", params_path, "Parameter JSON")->required();
  solver_flags.Register(solve);
  std::string out_dir = ".";
  bool skip_adequacy = false;
  solve->add_option("--out", out_dir, "Directory for artifacts");
  solve->add_flag("--skip-adequacy", skip_adequacy,
                  "Do not re-solve at twice the AoI cap");

  CLI::App* check = app.add_subcommand("check", "Re-run structure checks on artifacts");
  std::string values_path;
  std::string thresholds_path;
  double tol = kDefaultStructureTol;
  check->add_option("--params", params_path, "Parameter JSON")->required();
  check->add_option("--values", values_path, "values.csv from solve")->required();
  check->add_option("--thresholds", thresholds_path, "thresholds.json from solve");
  check->add_option("--tol", tol, "Margin tolerance");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate policies at one point");
  std::vector<std::string> policy_names;
  std::string method = "auto";
  eval->add_option("--params", params_path, "Parameter JSON")->required();
  eval->add_option("--policies", policy_names, "Comma-separated policies")
      ->delimiter(',')
      ->required();
  eval->add_option("--method", method, "exact, mc or auto")
      ->check(CLI::IsMember({"exact", "mc", "auto"}));
  eval->add_option("--out", out_path, "Results CSV (stdout if omitted)");
  solver_flags.Register(eval);
  sim_flags.Register(eval);

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter axis");
  std::string axis;
  std::vector<double> values;
  int eval_aoi_cap = 0;
  bool check_adequacy = false;
  sweep->add_option("--params", params_path, "Template parameter JSON")->required();
  sweep->add_option("--axis", axis, "omega, lambda or p")
      ->required()
      ->check(CLI::IsMember({"omega", "lambda", "p"}));
  sweep->add_option("--values", values, "Comma-separated axis values")
      ->delimiter(',')
      ->required();
  sweep->add_option("--policies", policy_names, "Comma-separated policies")
      ->delimiter(',');
  sweep->add_option("--out", out_path, "Results CSV (stdout if omitted)");
  sweep->add_option("--eval-aoi-cap", eval_aoi_cap,
                    "AoI cap for exact evaluation (default 2x --aoi-cap)");
  sweep->add_flag("--check-adequacy", check_adequacy,
                  "Re-solve each point at twice the AoI cap");
  solver_flags.Register(sweep);
  sim_flags.Register(sweep);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      return RunSolve(params_path, solver_flags, out_dir, skip_adequacy, out);
    }
    if (check->parsed()) {
      return RunCheck(params_path, values_path, thresholds_path, tol, out);
    }
    if (eval->parsed()) {
      return RunEval(params_path, policy_names, method, solver_flags, sim_flags,
                     out_path, out);
    }
    return RunSweepCommand(params_path, axis, values, policy_names, solver_flags,
                           sim_flags, eval_aoi_cap, check_adequacy, out_path, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const StructuralViolation& e) {
    err << "error: " << e.what() << "\n";
    return kExitStructural;
  } catch (const TruncationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitTruncation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace aoi
