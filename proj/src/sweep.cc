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

#include "aoi/sweep.h"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "aoi/errors.h"
#include "aoi/structure.h"

namespace aoi {
namespace {

// Cap on damped stationary iterations before giving up on the exact route.
constexpr std::int64_t kAutoExactMaxIters = 200'000;

std::string PointName(SweepAxis axis, double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s=%g", std::string(AxisName(axis)).c_str(), value);
  return buf;
}

// Re-throws the active exception with `point` prepended, keeping its type.
[[noreturn]] void RethrowAt(const std::string& point) {
  try {
    throw;
  } catch (const ConvergenceError& e) {
    throw ConvergenceError(point + ": " + e.what(), e.last_span(), e.iterations());
  } catch (const StructuralViolation& e) {
    throw StructuralViolation(point + ": " + e.what());
  } catch (const TruncationError& e) {
    throw TruncationError(point + ": " + e.what());
  } catch (const ReducibilityError& e) {
    throw ReducibilityError(point + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(point + ": " + e.what());
  }
}

}  // namespace

SweepAxis ParseAxis(std::string_view name) {
  if (name == "omega") return SweepAxis::kOmega;
  if (name == "lambda") return SweepAxis::kLambda;
  if (name == "p") return SweepAxis::kP;
  throw ParseError("unknown axis '" + std::string(name) + "' (omega, lambda, p)");
}

std::string_view AxisName(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kOmega:
      return "omega";
    case SweepAxis::kLambda:
      return "lambda";
    case SweepAxis::kP:
      return "p";
  }
  return "?";
}

SweepPolicy ParseSweepPolicy(std::string_view text) {
  if (text == "solved") return {"solved", std::nullopt};
  PolicySpec spec = ParsePolicySpec(text);
  std::string label = std::holds_alternative<Threshold>(spec)
                          ? std::string(text)
                          : PolicyLabel(spec);
  return {std::move(label), std::move(spec)};
}

std::vector<SweepPolicy> DefaultSweepPolicies() {
  return {{"zero-wait", ZeroWait{}},
          {"periodic:5", Periodic{5, 0}},
          {"periodic:10", Periodic{10, 0}},
          {"random:0.5", Randomized{0.5}},
          {"energy-first", EnergyFirst{}},
          {"solved", std::nullopt}};
}

SystemParams WithAxisValue(const SystemParams& base, SweepAxis axis, double value) {
  SystemParams params = base;
  switch (axis) {
    case SweepAxis::kOmega:
      params.omega = value;
      break;
    case SweepAxis::kLambda:
      params.lambda_eh = value;
      break;
    case SweepAxis::kP:
      params.p = value;
      break;
  }
  return params;
}

EvalReport EvaluateAuto(const PolicySpec& spec, const SystemParams& params,
                        const SimConfig& sim) {
  ExactOptions opts;
  opts.max_iters = kAutoExactMaxIters;
  try {
    return EvaluateExact(spec, params, opts);
  } catch (const TruncationError&) {
  } catch (const ConvergenceError&) {
  }
  return Simulate(spec, params, sim);
}

SweepResult RunSweep(const SweepSpec& spec) {
  if (spec.values.empty()) throw DomainError("sweep needs at least one axis value");
  if (spec.policies.empty()) throw DomainError("sweep needs at least one policy");

  SweepResult result;
  std::ostringstream csv;
  WriteResultsHeader(csv);
  const int eval_cap = spec.eval_aoi_cap > 0 ? spec.eval_aoi_cap : 2 * spec.fixed.aoi_cap;

  for (const double value : spec.values) {
    const std::string point = PointName(spec.axis, value);
    try {
      const SystemParams params = WithAxisValue(spec.fixed, spec.axis, value);
      ValidateParams(params, ParamMode::kEvalOnly);
      SystemParams eval_params = params;
      eval_params.aoi_cap = eval_cap;

      std::optional<SolvedPolicy> solved;
      bool clamped = false;
      const bool wants_solved = std::any_of(
          spec.policies.begin(), spec.policies.end(),
          [](const SweepPolicy& sp) { return !sp.spec.has_value(); });
      if (wants_solved) {
        SystemParams solve_params = params;
        if (solve_params.p <= 0.0) {
          solve_params.p = kClampedP;
          clamped = true;
        }
        solved = SolveThresholdPolicy(solve_params, spec.solver);
        const StructureReport report = CheckStructure(
            solved->solution.values, solved->solution.q, solve_params);
        if (!report.AllPassed()) {
          throw StructuralViolation("structure check '" + report.worst_check +
                                    "' failed with margin " +
                                    std::to_string(report.worst_violation));
        }
        for (const auto& t : solved->thresholds.thresholds) {
          if (t && *t >= solve_params.aoi_cap) {
            throw TruncationError("threshold " + std::to_string(*t) +
                                  " reaches aoi_cap " +
                                  std::to_string(solve_params.aoi_cap));
          }
        }
        if (spec.check_adequacy &&
            !CheckTruncationAdequacy(solved->thresholds, solve_params, spec.solver)) {
          throw TruncationError("thresholds change when aoi_cap is doubled");
        }
      }

      for (const SweepPolicy& sp : spec.policies) {
        SweepRow row;
        row.axis_value = value;
        row.params = params;
        if (sp.spec) {
          row.policy = sp.label;
          row.report = EvaluateAuto(*sp.spec, eval_params, spec.sim);
        } else {
          row.policy = clamped ? sp.label + "(p_clamped=1e-09)" : sp.label;
          row.p_clamped = clamped;
          row.thresholds = solved->thresholds;
          row.report = EvaluateAuto(Threshold{solved->thresholds}, eval_params, spec.sim);
        }
        WriteResultsRow(csv, row.policy, row.params, row.report, spec.sim.seed);
        result.rows.push_back(std::move(row));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const std::runtime_error&) {
      RethrowAt(point);
    } catch (const std::logic_error&) {
      RethrowAt(point);
    }
  }
  result.csv = csv.str();
  return result;
}

}  // namespace aoi
