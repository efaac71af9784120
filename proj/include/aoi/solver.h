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

// Average-cost optimal updating policy by relative value iteration on the
// AoI-truncated MDP, and its threshold representation.

#ifndef AOI_SOLVER_H_
#define AOI_SOLVER_H_

#include <optional>
#include <vector>

#include "aoi/grid.h"
#include "aoi/kernels.h"
#include "aoi/model.h"
#include "aoi/policy_types.h"

namespace aoi {

struct SolverConfig {
  // Stop once max - min of V_{k+1} - V_k falls to epsilon.
  double epsilon = 1e-9;
  long max_iters = 1'000'000;
  // Anchor with V(reference) = 0; defaults to (1, battery_cap).
  std::optional<State> reference_state;
  double init_value = 0.0;
  // Admits omega == 0 and battery_cap == 1 (see ParamMode::kTestSolve).
  bool test_mode = false;
  kernels::Isa isa = kernels::Isa::kAuto;
};

struct ValueTable {
  StateGrid grid;
  std::vector<double> values;  // indexed by grid.Index
  double gain = 0.0;           // optimal average cost per slot
  State reference;
  long iterations = 0;
  double last_span = 0.0;

  double At(State s) const { return values[grid.Index(s)]; }
};

struct QTable {
  StateGrid grid;
  std::vector<double> idle;
  std::vector<double> transmit;

  double At(State s, Action a) const {
    const std::size_t i = grid.Index(s);
    return a == Action::kIdle ? idle[i] : transmit[i];
  }
};

struct SolveResult {
  ValueTable values;
  QTable q;
};

// Synchronous sweeps V_{k+1}(x) = min_a [C(x,a) + sum_x' P(x'|x,a) V_k(x')]
// re-anchored at the reference state. Returns V and the action values
// recomputed from it. Throws DomainError on invalid input and
// ConvergenceError if max_iters is reached first.
SolveResult Solve(const SystemParams& params, const SolverConfig& cfg = {});

// Q(x,a) = C(x,a) + sum_x' P(x'|x,a) V(x').
QTable ComputeQ(const SystemParams& params, const StateGrid& grid,
                const std::vector<double>& values,
                kernels::Isa isa = kernels::Isa::kAuto);

// max_x |min_a Q(x,a) - gain - V(x)|.
double BellmanResidual(const ValueTable& v, const QTable& q);

// Per-state argmin of Q; ties go to Idle.
PolicyTable GreedyPolicy(const ValueTable& v, const QTable& q,
                         const SystemParams& params);

// Scan in increasing AoI and inherit Transmit from (aoi - 1, q) instead of
// re-evaluating the argmin once a row has switched.
PolicyTable ShortCircuitPolicy(const QTable& q, const SystemParams& params);

// Smallest transmitting AoI per battery level. Throws StructuralViolation if
// some row transmits at an AoI and idles at a larger one.
ThresholdPolicy ExtractThresholds(const PolicyTable& policy,
                                  const SystemParams& params);

// Re-solves with the AoI cap doubled. True iff the thresholds are unchanged
// and every finite threshold is below the original cap.
bool CheckTruncationAdequacy(const ThresholdPolicy& tp,
                             const SystemParams& params,
                             const SolverConfig& cfg = {});

// Solve + greedy policy + thresholds in one call.
struct SolvedPolicy {
  SolveResult solution;
  PolicyTable policy;
  ThresholdPolicy thresholds;
};
SolvedPolicy SolveThresholdPolicy(const SystemParams& params,
                                  const SolverConfig& cfg = {});

}  // namespace aoi

#endif  // AOI_SOLVER_H_
