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

#include "aoi/solver.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aoi/errors.h"

namespace aoi {
namespace {

// Builds the kernel arguments for battery row q from the value table `v`.
// Mirrors Transitions(): idle charges by the arrival; transmit drains one unit
// when q > 0, then credits the arrival, capped at B.
kernels::BellmanRow MakeRow(const SystemParams& params, const StateGrid& grid,
                            const double* v, int q) {
  const int cap = params.battery_cap;
  const double p = params.p;
  const double lam = params.lambda_eh;
  auto row = [&](int level) {
    return v + static_cast<std::size_t>(level) * grid.row_size();
  };

  kernels::BellmanRow r;
  r.n = grid.row_size();
  if (q == cap) {
    r.idle_hi = r.idle_lo = row(cap);
    r.w_idle_hi = 1.0;
    r.w_idle_lo = 0.0;
  } else {
    r.idle_hi = row(q + 1);
    r.idle_lo = row(q);
    r.w_idle_hi = lam;
    r.w_idle_lo = 1.0 - lam;
  }

  const int drained = q > 0 ? q - 1 : 0;
  const int charged = std::min(drained + 1, cap);
  r.tx_hi = row(charged);
  r.tx_lo = row(drained);
  r.w_tx_hi = p * lam;
  r.w_tx_lo = p * (1.0 - lam);
  const double energy = q == 0 ? params.omega * params.c_r : 0.0;
  const double delivered =
      (1.0 - p) * lam * row(charged)[0] + (1.0 - p) * (1.0 - lam) * row(drained)[0];
  r.tx_offset = energy + delivered;
  return r;
}

void CheckConfig(const SystemParams& params, const SolverConfig& cfg) {
  ValidateParams(params, cfg.test_mode ? ParamMode::kTestSolve : ParamMode::kSolve);
  if (!(cfg.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (cfg.max_iters < 1) throw DomainError("max_iters must be at least 1");
  if (!std::isfinite(cfg.init_value)) throw DomainError("init_value must be finite");
  if (cfg.reference_state) ValidateState(*cfg.reference_state, params);
}

}  // namespace

QTable ComputeQ(const SystemParams& params, const StateGrid& grid,
                const std::vector<double>& values, kernels::Isa isa) {
  const kernels::KernelTable& k = kernels::GetKernels(isa);
  QTable q{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size())};
  std::vector<double> scratch(grid.row_size());
  for (int b = 0; b <= grid.battery_cap(); ++b) {
    const std::size_t off = static_cast<std::size_t>(b) * grid.row_size();
    k.bellman_row(MakeRow(params, grid, values.data(), b), q.idle.data() + off,
                  q.transmit.data() + off, scratch.data());
  }
  return q;
}

SolveResult Solve(const SystemParams& params, const SolverConfig& cfg) {
  CheckConfig(params, cfg);
  const kernels::KernelTable& k = kernels::GetKernels(cfg.isa);
  const StateGrid grid(params);
  const State reference = cfg.reference_state.value_or(State{1, params.battery_cap});
  const std::size_t ref_index = grid.Index(reference);
  const std::size_t n = grid.size();
  const std::size_t row = grid.row_size();

  std::vector<double> current(n, cfg.init_value);
  std::vector<double> next(n);
  std::vector<double> q_idle(row);
  std::vector<double> q_tx(row);

  double span = std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = 0.0;
  long iter = 0;
  while (iter < cfg.max_iters) {
    ++iter;
    for (int b = 0; b <= params.battery_cap; ++b) {
      k.bellman_row(MakeRow(params, grid, current.data(), b), q_idle.data(),
                    q_tx.data(), next.data() + static_cast<std::size_t>(b) * row);
    }
    k.diff_range(next.data(), current.data(), n, &lo, &hi);
    span = hi - lo;
    k.subtract(next.data(), n, next[ref_index]);
    current.swap(next);
    if (!std::isfinite(span)) {
      throw ConvergenceError("value iteration diverged (non-finite span)", span, iter);
    }
    if (span <= cfg.epsilon) break;
  }
  if (!(span <= cfg.epsilon)) {
    std::ostringstream msg;
    msg << "relative value iteration did not converge in " << cfg.max_iters
        << " iterations (last span " << span << ")";
    throw ConvergenceError(msg.str(), span, iter);
  }

  SolveResult result;
  result.values.grid = grid;
  result.values.values = std::move(current);
  result.values.gain = 0.5 * (lo + hi);
  result.values.reference = reference;
  result.values.iterations = iter;
  result.values.last_span = span;
  result.q = ComputeQ(params, grid, result.values.values, cfg.isa);
  return result;
}

double BellmanResidual(const ValueTable& v, const QTable& q) {
  double worst = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i) {
    const double best = std::min(q.idle[i], q.transmit[i]);
    worst = std::max(worst, std::abs(best - v.gain - v.values[i]));
  }
  return worst;
}

PolicyTable GreedyPolicy(const ValueTable& v, const QTable& q,
                         const SystemParams& params) {
  const StateGrid grid(params);
  if (!(v.grid == grid) || !(q.grid == grid)) {
    throw DomainError("value tables do not match the parameter grid");
  }
  PolicyTable policy(grid, Action::kIdle);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (q.transmit[i] < q.idle[i]) policy.SetIndex(i, Action::kTransmit);
  }
  return policy;
}

PolicyTable ShortCircuitPolicy(const QTable& q, const SystemParams& params) {
  const StateGrid grid(params);
  if (!(q.grid == grid)) throw DomainError("Q table does not match the parameter grid");
  PolicyTable policy(grid, Action::kIdle);
  for (int b = 0; b <= params.battery_cap; ++b) {
    bool switched = false;
    for (int d = 1; d <= params.aoi_cap; ++d) {
      const std::size_t i = grid.Index({d, b});
      switched = switched || q.transmit[i] < q.idle[i];
      if (switched) policy.SetIndex(i, Action::kTransmit);
    }
  }
  return policy;
}

ThresholdPolicy ExtractThresholds(const PolicyTable& policy,
                                  const SystemParams& params) {
  const StateGrid grid(params);
  if (!(policy.grid() == grid)) {
    throw DomainError("policy table does not match the parameter grid");
  }
  ThresholdPolicy tp;
  tp.thresholds.resize(static_cast<std::size_t>(params.battery_cap) + 1);
  for (int b = 0; b <= params.battery_cap; ++b) {
    std::optional<int> first;
    for (int d = 1; d <= params.aoi_cap; ++d) {
      const bool tx = policy.At({d, b}) == Action::kTransmit;
      if (tx && !first) first = d;
      if (!tx && first) {
        std::ostringstream msg;
        msg << "policy is not threshold-shaped at battery " << b
            << ": transmits at aoi " << *first << " but idles at aoi " << d;
        throw StructuralViolation(msg.str());
      }
    }
    tp.thresholds[static_cast<std::size_t>(b)] = first;
  }
  return tp;
}

SolvedPolicy SolveThresholdPolicy(const SystemParams& params,
                                  const SolverConfig& cfg) {
  SolvedPolicy out;
  out.solution = Solve(params, cfg);
  out.policy = GreedyPolicy(out.solution.values, out.solution.q, params);
  out.thresholds = ExtractThresholds(out.policy, params);
  return out;
}

bool CheckTruncationAdequacy(const ThresholdPolicy& tp,
                             const SystemParams& params,
                             const SolverConfig& cfg) {
  SystemParams doubled = params;
  doubled.aoi_cap = 2 * params.aoi_cap;
  SolverConfig wide = cfg;
  if (wide.reference_state && wide.reference_state->aoi > doubled.aoi_cap) {
    wide.reference_state.reset();
  }
  const ThresholdPolicy wider = SolveThresholdPolicy(doubled, wide).thresholds;
  if (!(wider == tp)) return false;
  return std::all_of(tp.thresholds.begin(), tp.thresholds.end(),
                     [&](const std::optional<int>& t) {
                       return !t || *t < params.aoi_cap;
                     });
}

}  // namespace aoi
