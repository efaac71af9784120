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

// Parameter sweeps comparing the solved threshold policy with baselines.

#ifndef AOI_SWEEP_H_
#define AOI_SWEEP_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/eval.h"
#include "aoi/model.h"
#include "aoi/policies.h"
#include "aoi/solver.h"

namespace aoi {

enum class SweepAxis { kOmega, kLambda, kP };

SweepAxis ParseAxis(std::string_view name);
std::string_view AxisName(SweepAxis axis);

// Erasure probability used to solve at p == 0 points. Structure results
// need 0 < p < 1, so the policy is computed at this value and evaluated at
// the true p.
inline constexpr double kClampedP = 1e-9;

// A column of the comparison: either a fixed policy or the policy solved at
// each grid point (spec empty).
struct SweepPolicy {
  std::string label;
  std::optional<PolicySpec> spec;
};

// "solved" or anything ParsePolicySpec accepts.
SweepPolicy ParseSweepPolicy(std::string_view text);

// zero-wait, periodic:5, periodic:10, random:0.5, energy-first, solved.
std::vector<SweepPolicy> DefaultSweepPolicies();

struct SweepSpec {
  SweepAxis axis = SweepAxis::kOmega;
  std::vector<double> values;
  SystemParams fixed;
  std::vector<SweepPolicy> policies = DefaultSweepPolicies();
  SimConfig sim;
  SolverConfig solver;
  // AoI cap of the chain used for exact evaluation; 2 * fixed.aoi_cap when 0.
  int eval_aoi_cap = 0;
  // Also run CheckTruncationAdequacy (one extra solve per point).
  bool check_adequacy = false;
};

struct SweepRow {
  std::string policy;
  double axis_value = 0.0;
  SystemParams params;
  EvalReport report;
  bool p_clamped = false;
  std::optional<ThresholdPolicy> thresholds;  // solved rows only
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string csv;
};

// Applies `value` to the axis field of `base`.
SystemParams WithAxisValue(const SystemParams& base, SweepAxis axis, double value);

// For each axis value: solve, extract thresholds, run the structure checks,
// then evaluate the solved policy and every baseline (exact where the
// truncated chain allows, Monte Carlo otherwise). Rows are emitted in axis
// order, then policy order. Errors keep their type and name the grid point.
SweepResult RunSweep(const SweepSpec& spec);

// Evaluates one policy exactly if possible, falling back to Monte Carlo when
// the truncated chain is inadequate or too slow to converge.
EvalReport EvaluateAuto(const PolicySpec& spec, const SystemParams& params,
                        const SimConfig& sim);

}  // namespace aoi

#endif  // AOI_SWEEP_H_
