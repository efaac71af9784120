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

#include "aoi/eval.h"

#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "aoi/errors.h"
#include "aoi/grid.h"

namespace aoi {
namespace {

// Sparse row-stochastic kernel with per-state expected stage costs.
struct PolicyChain {
  StateGrid grid;
  int phases = 1;
  std::vector<std::size_t> row_start;
  std::vector<std::uint32_t> col;
  std::vector<double> prob;
  std::vector<double> aoi_cost;
  std::vector<double> energy_cost;

  std::size_t size() const { return aoi_cost.size(); }
  State StateOf(std::size_t i) const { return grid.At(i % grid.size()); }
};

PolicyChain BuildChain(const PolicySpec& spec, const SystemParams& params) {
  PolicyChain chain;
  chain.grid = StateGrid(params);
  if (const auto* per = std::get_if<Periodic>(&spec)) chain.phases = per->period;
  if (const auto* tab = std::get_if<Table>(&spec)) {
    if (!(tab->pt.grid() == chain.grid)) {
      throw DomainError("policy table grid does not match the parameters");
    }
  }
  const std::size_t base = chain.grid.size();
  const std::size_t n = base * static_cast<std::size_t>(chain.phases);
  chain.row_start.reserve(n + 1);
  chain.col.reserve(n * 4);
  chain.prob.reserve(n * 4);
  chain.aoi_cost.resize(n);
  chain.energy_cost.resize(n);
  chain.row_start.push_back(0);

  for (int phase = 0; phase < chain.phases; ++phase) {
    const std::size_t next_phase_base =
        static_cast<std::size_t>((phase + 1) % chain.phases) * base;
    for (std::size_t i = 0; i < base; ++i) {
      const State s = chain.grid.At(i);
      const double mu = TransmitProbability(spec, s, phase);
      const std::size_t k = static_cast<std::size_t>(phase) * base + i;
      chain.aoi_cost[k] = s.aoi;
      chain.energy_cost[k] =
          mu * params.omega * ReliableCost(s, Action::kTransmit, params);

      // Both actions' successors go into the row; repeated columns are fine.
      for (const Action a : kActions) {
        const double w = a == Action::kTransmit ? mu : 1.0 - mu;
        if (w <= 0.0) continue;
        for (const Transition& t : Transitions(s, a, params)) {
          chain.col.push_back(
              static_cast<std::uint32_t>(next_phase_base + chain.grid.Index(t.next)));
          chain.prob.push_back(w * t.prob);
        }
      }
      chain.row_start.push_back(chain.col.size());
    }
  }
  return chain;
}

// out = pi P.
void Propagate(const PolicyChain& chain, const std::vector<double>& pi,
               std::vector<double>& out) {
  std::fill(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < pi.size(); ++i) {
    const double m = pi[i];
    if (m == 0.0) continue;
    for (std::size_t e = chain.row_start[i]; e < chain.row_start[i + 1]; ++e) {
      out[chain.col[e]] += m * chain.prob[e];
    }
  }
}

double BoundaryMass(const PolicyChain& chain, const std::vector<double>& pi) {
  double mass = 0.0;
  for (std::size_t i = 0; i < pi.size(); ++i) {
    if (chain.StateOf(i).aoi == chain.grid.aoi_cap()) mass += pi[i];
  }
  return mass;
}

// Every state carrying mass must be able to reach the closed set generated
// by the heaviest state; otherwise two closed classes share the mass.
void CheckSingleClass(const PolicyChain& chain, const std::vector<double>& pi) {
  const std::size_t n = chain.size();
  std::size_t heaviest = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (pi[i] > pi[heaviest]) heaviest = i;
  }
  std::vector<char> closure(n, 0);
  std::deque<std::size_t> queue{heaviest};
  closure[heaviest] = 1;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t e = chain.row_start[i]; e < chain.row_start[i + 1]; ++e) {
      if (chain.prob[e] > 0.0 && !closure[chain.col[e]]) {
        closure[chain.col[e]] = 1;
        queue.push_back(chain.col[e]);
      }
    }
  }
  // Reverse reachability into the closure.
  std::vector<std::vector<std::uint32_t>> reverse(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = chain.row_start[i]; e < chain.row_start[i + 1]; ++e) {
      if (chain.prob[e] > 0.0) reverse[chain.col[e]].push_back(static_cast<std::uint32_t>(i));
    }
  }
  std::vector<char> reaches(closure);
  for (std::size_t i = 0; i < n; ++i) {
    if (closure[i]) queue.push_back(i);
  }
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::uint32_t j : reverse[i]) {
      if (!reaches[j]) {
        reaches[j] = 1;
        queue.push_back(j);
      }
    }
  }
  std::ostringstream offenders;
  int count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (pi[i] > 1e-10 && !reaches[i]) {
      if (count < 8) offenders << " " << ToString(chain.StateOf(i));
      ++count;
    }
  }
  if (count > 0) {
    throw ReducibilityError("stationary mass split across closed classes; " +
                            std::to_string(count) +
                            " states cannot reach the main class:" +
                            offenders.str());
  }
}

double StudentT975(int dof) {
  boost::math::students_t dist(static_cast<double>(dof));
  return boost::math::quantile(dist, 0.975);
}

std::string FormatReal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", x);
  return buf;
}

}  // namespace

std::string_view MethodName(EvalMethod method) {
  return method == EvalMethod::kMonteCarlo ? "mc" : "exact";
}

EvalReport Simulate(const PolicySpec& spec, const SystemParams& params,
                    const SimConfig& cfg) {
  ValidateParams(params, ParamMode::kEvalOnly);
  ValidatePolicy(spec);
  const std::int64_t warmup = cfg.EffectiveWarmup();
  if (cfg.replications < 1) throw DomainError("replications must be at least 1");
  if (warmup < 0 || cfg.horizon <= warmup) {
    throw DomainError("need horizon > warmup >= 0");
  }
  if (cfg.initial_state.aoi < 1 || cfg.initial_state.battery < 0 ||
      cfg.initial_state.battery > params.battery_cap) {
    throw DomainError("invalid initial state " + ToString(cfg.initial_state));
  }

  const double kept = static_cast<double>(cfg.horizon - warmup);
  std::vector<double> aoi_means;
  std::vector<double> energy_means;
  for (int r = 0; r < cfg.replications; ++r) {
    RandomStream rng(MixSeed(cfg.seed, static_cast<std::uint64_t>(r)));
    State s = cfg.initial_state;
    double aoi_sum = 0.0;
    double energy_sum = 0.0;
    for (std::int64_t t = 0; t < cfg.horizon; ++t) {
      const Action a = Decide(spec, s, t, rng);
      const StepOutcome out = SampleStep(s, a, params, rng, /*truncate_aoi=*/false);
      if (t >= warmup) {
        aoi_sum += s.aoi;
        energy_sum += params.omega * out.reliable_cost_paid;
      }
      s = out.next;
    }
    aoi_means.push_back(aoi_sum / kept);
    energy_means.push_back(energy_sum / kept);
  }

  const double reps = cfg.replications;
  double aoi_mean = 0.0;
  double energy_mean = 0.0;
  for (int r = 0; r < cfg.replications; ++r) {
    aoi_mean += aoi_means[r];
    energy_mean += energy_means[r];
  }
  aoi_mean /= reps;
  energy_mean /= reps;

  EvalReport report;
  report.method = EvalMethod::kMonteCarlo;
  report.avg_aoi = aoi_mean;
  report.avg_weighted_energy = energy_mean;
  report.avg_total_cost = aoi_mean + energy_mean;
  if (cfg.replications < 2) {
    report.ci_halfwidth_95 = std::numeric_limits<double>::infinity();
  } else {
    double ss = 0.0;
    for (int r = 0; r < cfg.replications; ++r) {
      const double dev = aoi_means[r] + energy_means[r] - report.avg_total_cost;
      ss += dev * dev;
    }
    const double sd = std::sqrt(ss / (reps - 1.0));
    report.ci_halfwidth_95 = StudentT975(cfg.replications - 1) * sd / std::sqrt(reps);
  }
  return report;
}

ExactEvaluation EvaluateExactDetailed(const PolicySpec& spec,
                                      const SystemParams& params,
                                      const ExactOptions& opts) {
  ValidateParams(params, ParamMode::kEvalOnly);
  ValidatePolicy(spec);
  ValidateState(opts.initial_state, params);
  const PolicyChain chain = BuildChain(spec, params);
  const std::size_t n = chain.size();
  const bool guard = opts.boundary_mass_limit < 1.0;

  std::vector<double> pi(n, 0.0);
  std::vector<double> moved(n, 0.0);
  pi[chain.grid.Index(opts.initial_state)] = 1.0;

  ExactEvaluation result;
  double residual = std::numeric_limits<double>::infinity();
  std::int64_t iter = 0;
  while (iter < opts.max_iters) {
    ++iter;
    Propagate(chain, pi, moved);
    residual = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      residual += std::abs(moved[i] - pi[i]);
      pi[i] = 0.5 * (pi[i] + moved[i]);
      total += pi[i];
    }
    for (double& m : pi) m /= total;
    if (residual < opts.residual_tol) break;
    // Bail out early once it is clear the chain piles up at the cap.
    if (guard && iter % 1000 == 0 && residual < 1e-6 &&
        BoundaryMass(chain, pi) > 1e3 * opts.boundary_mass_limit) {
      break;
    }
  }
  result.iterations = iter;
  result.residual = residual;
  result.boundary_mass = BoundaryMass(chain, pi);

  if (guard && result.boundary_mass > opts.boundary_mass_limit) {
    std::ostringstream msg;
    msg << "stationary mass " << result.boundary_mass << " at aoi_cap "
        << params.aoi_cap << " exceeds " << opts.boundary_mass_limit
        << "; raise aoi_cap for this policy";
    throw TruncationError(msg.str());
  }
  if (!(residual < opts.residual_tol)) {
    std::ostringstream msg;
    msg << "stationary iteration did not reach residual " << opts.residual_tol
        << " in " << opts.max_iters << " iterations (last " << residual << ")";
    throw ConvergenceError(msg.str(), residual, static_cast<long>(iter));
  }
  if (!opts.allow_multichain) CheckSingleClass(chain, pi);

  double aoi = 0.0;
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    aoi += pi[i] * chain.aoi_cost[i];
    energy += pi[i] * chain.energy_cost[i];
  }
  result.report.method = EvalMethod::kExactStationary;
  result.report.avg_aoi = aoi;
  result.report.avg_weighted_energy = energy;
  result.report.avg_total_cost = aoi + energy;
  result.report.ci_halfwidth_95 = 0.0;
  result.distribution = std::move(pi);
  return result;
}

EvalReport EvaluateExact(const PolicySpec& spec, const SystemParams& params,
                         const ExactOptions& opts) {
  return EvaluateExactDetailed(spec, params, opts).report;
}

EnumerationResult EnumerateOptimal(const SystemParams& params) {
  ValidateParams(params, ParamMode::kEvalOnly);
  const StateGrid grid(params);
  const std::size_t n = grid.size();
  if (n > kMaxEnumerationStates) {
    throw DomainError("instance too large for enumeration: " + std::to_string(n) +
                      " states (limit " + std::to_string(kMaxEnumerationStates) +
                      ")");
  }
  ExactOptions opts;
  opts.boundary_mass_limit = 1.0;
  opts.allow_multichain = true;

  constexpr double kTieTol = 1e-10;
  EnumerationResult result;
  result.cost = std::numeric_limits<double>::infinity();
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    PolicyTable table(grid, Action::kIdle);
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) table.SetIndex(i, Action::kTransmit);
    }
    const double cost = EvaluateExact(Table{table}, params, opts).avg_total_cost;
    ++result.policies_evaluated;
    const bool better = cost < result.cost - kTieTol;
    const bool tie_fewer = std::abs(cost - result.cost) <= kTieTol &&
                           table.TransmitCount() < result.best.TransmitCount();
    if (better || tie_fewer) {
      result.cost = cost;
      result.best = std::move(table);
    }
  }
  return result;
}

void WriteResultsHeader(std::ostream& out) {
  out << "policy,p,lambda,omega,c_r,B,method,avg_total,avg_aoi,avg_energy,ci95,seed\n";
}

void WriteResultsRow(std::ostream& out, std::string_view policy,
                     const SystemParams& params, const EvalReport& report,
                     std::uint64_t seed) {
  out << policy << "," << FormatReal(params.p) << ","
      << FormatReal(params.lambda_eh) << "," << FormatReal(params.omega) << ","
      << FormatReal(params.c_r) << "," << params.battery_cap << ","
      << MethodName(report.method) << "," << FormatReal(report.avg_total_cost)
      << "," << FormatReal(report.avg_aoi) << ","
      << FormatReal(report.avg_weighted_energy) << ","
      << FormatReal(report.ci_halfwidth_95) << "," << seed << "\n";
}

}  // namespace aoi
