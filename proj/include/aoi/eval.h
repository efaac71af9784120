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

// Long-run average cost of a policy, three ways: seeded Monte Carlo on the
// untruncated chain, the stationary law of the truncated policy-induced
// chain, and exhaustive search over all deterministic policies of a tiny
// instance.

#ifndef AOI_EVAL_H_
#define AOI_EVAL_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi/model.h"
#include "aoi/policies.h"
#include "aoi/policy_types.h"

namespace aoi {

struct SimConfig {
  std::int64_t horizon = 1'000'000;
  int replications = 20;
  // Slots discarded from each replication; horizon / 10 when unset.
  std::optional<std::int64_t> warmup;
  std::uint64_t seed = 1;
  State initial_state{1, 0};

  std::int64_t EffectiveWarmup() const { return warmup.value_or(horizon / 10); }
};

enum class EvalMethod { kMonteCarlo, kExactStationary };

std::string_view MethodName(EvalMethod method);

struct EvalReport {
  double avg_total_cost = 0.0;
  double avg_aoi = 0.0;
  double avg_weighted_energy = 0.0;
  // Student-t 95% half-width across replications; 0 for exact results and
  // infinite for a single replication.
  double ci_halfwidth_95 = 0.0;
  EvalMethod method = EvalMethod::kExactStationary;
};

EvalReport Simulate(const PolicySpec& spec, const SystemParams& params,
                    const SimConfig& cfg);

struct ExactOptions {
  State initial_state{1, 0};
  // Stop once |pi P - pi|_1 falls below this.
  double residual_tol = 1e-12;
  std::int64_t max_iters = 5'000'000;
  // Fail when the stationary mass on aoi == aoi_cap exceeds this; values
  // >= 1 disable the guard (the chain is then evaluated as truncated).
  double boundary_mass_limit = 1e-9;
  bool allow_multichain = false;
};

struct ExactEvaluation {
  EvalReport report;
  // Limiting distribution over grid states (Periodic: over (phase, state),
  // phase-major).
  std::vector<double> distribution;
  std::int64_t iterations = 0;
  double residual = 0.0;
  double boundary_mass = 0.0;
};

// Builds the policy-induced kernel on the truncated grid (with a phase
// coordinate for Periodic and a mixture kernel for Randomized) and iterates
// the damped fixed point pi <- (pi + pi P) / 2 from the initial state.
// Throws TruncationError on excess boundary mass, ReducibilityError when
// mass sits in more than one closed class, ConvergenceError if max_iters is
// exhausted.
ExactEvaluation EvaluateExactDetailed(const PolicySpec& spec,
                                      const SystemParams& params,
                                      const ExactOptions& opts = {});

EvalReport EvaluateExact(const PolicySpec& spec, const SystemParams& params,
                         const ExactOptions& opts = {});

struct EnumerationResult {
  PolicyTable best;
  double cost = 0.0;
  std::size_t policies_evaluated = 0;
};

inline constexpr std::size_t kMaxEnumerationStates = 24;

// Exact cost of every deterministic policy on the truncated grid, from the
// initial state (1, 0). Costs within 1e-10 count as ties and go to the policy
// with fewer Transmit states. Throws DomainError above
// kMaxEnumerationStates states.
EnumerationResult EnumerateOptimal(const SystemParams& params);

// Results table with columns policy,p,lambda,omega,c_r,B,method,avg_total,
// avg_aoi,avg_energy,ci95,seed.
void WriteResultsHeader(std::ostream& out);
void WriteResultsRow(std::ostream& out, std::string_view policy,
                     const SystemParams& params, const EvalReport& report,
                     std::uint64_t seed);

}  // namespace aoi

#endif  // AOI_EVAL_H_
