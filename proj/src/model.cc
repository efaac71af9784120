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

#include "aoi/model.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aoi/errors.h"

namespace aoi {
namespace {

void Require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

void ValidateParams(const SystemParams& params, ParamMode mode) {
  Require(std::isfinite(params.p) && std::isfinite(params.lambda_eh) &&
              std::isfinite(params.omega) && std::isfinite(params.c_r),
          "parameters must be finite");
  if (mode == ParamMode::kEvalOnly) {
    Require(params.p >= 0.0 && params.p <= 1.0, "p must lie in [0, 1]");
  } else {
    Require(params.p > 0.0 && params.p < 1.0, "p must lie in (0, 1)");
  }
  Require(params.lambda_eh >= 0.0 && params.lambda_eh <= 1.0,
          "lambda must lie in [0, 1]");
  Require(params.c_r >= 0.0, "c_r must be nonnegative");
  if (mode == ParamMode::kSolve) {
    Require(params.omega > 0.0, "omega must be positive");
    Require(params.battery_cap >= 2, "battery_cap must be at least 2");
  } else {
    Require(params.omega >= 0.0, "omega must be nonnegative");
    Require(params.battery_cap >= 1, "battery_cap must be at least 1");
  }
  Require(params.aoi_cap >= 2, "aoi_cap must be at least 2");
}

std::string ToString(State s) {
  std::ostringstream out;
  out << "(" << s.aoi << "," << s.battery << ")";
  return out.str();
}

void ValidateState(State s, const SystemParams& params) {
  if (s.aoi < 1 || s.aoi > params.aoi_cap || s.battery < 0 ||
      s.battery > params.battery_cap) {
    throw DomainError("state " + ToString(s) + " outside grid aoi<=" +
                      std::to_string(params.aoi_cap) +
                      ", battery<=" + std::to_string(params.battery_cap));
  }
}

void TransitionDist::Add(State next, double prob) {
  if (prob <= 0.0) return;
  for (std::size_t i = 0; i < size_; ++i) {
    if (entries_[i].next == next) {
      entries_[i].prob += prob;
      return;
    }
  }
  entries_[size_++] = {next, prob};
}

double TransitionDist::ProbabilityOf(State s) const {
  for (const Transition& t : *this) {
    if (t.next == s) return t.prob;
  }
  return 0.0;
}

double TransitionDist::TotalProbability() const {
  double total = 0.0;
  for (const Transition& t : *this) total += t.prob;
  return total;
}

TransitionDist Transitions(State s, Action a, const SystemParams& params) {
  ValidateState(s, params);
  const int cap = params.battery_cap;
  const int aged = std::min(s.aoi + 1, params.aoi_cap);
  const double lam = params.lambda_eh;
  TransitionDist dist;
  if (a == Action::kIdle) {
    if (s.battery == cap) {
      dist.Add({aged, cap}, 1.0);
    } else {
      dist.Add({aged, s.battery + 1}, lam);
      dist.Add({aged, s.battery}, 1.0 - lam);
    }
    return dist;
  }
  // q[t+1] = min(q + b - u(q), B); the arriving unit is credited after the
  // slot's energy is drawn.
  const int drained = s.battery > 0 ? s.battery - 1 : 0;
  const int charged = std::min(drained + 1, cap);
  const double p = params.p;
  dist.Add({aged, charged}, p * lam);
  dist.Add({1, charged}, (1.0 - p) * lam);
  dist.Add({aged, drained}, p * (1.0 - lam));
  dist.Add({1, drained}, (1.0 - p) * (1.0 - lam));
  return dist;
}

double StageCost(State s, Action a, const SystemParams& params) {
  ValidateState(s, params);
  return s.aoi + params.omega * ReliableCost(s, a, params);
}

std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

StepOutcome SampleStep(State s, Action a, const SystemParams& params,
                       RandomStream& rng, bool truncate_aoi) {
  StepOutcome out;
  // Draw order is fixed (energy, then erasure) so streams are reproducible.
  out.energy_arrived = rng.Bernoulli(params.lambda_eh);
  const bool transmit = a == Action::kTransmit;
  if (transmit) out.delivered = !rng.Bernoulli(params.p);

  out.reliable_cost_paid = ReliableCost(s, a, params);
  out.stage_cost = s.aoi + params.omega * out.reliable_cost_paid;

  const int used = (transmit && s.battery > 0) ? 1 : 0;
  out.next.battery = std::min(s.battery + (out.energy_arrived ? 1 : 0) - used,
                              params.battery_cap);
  if (out.delivered) {
    out.next.aoi = 1;
  } else {
    out.next.aoi = truncate_aoi ? std::min(s.aoi + 1, params.aoi_cap)
                                : s.aoi + 1;
  }
  return out;
}

}  // namespace aoi
