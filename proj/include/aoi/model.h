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

// MDP primitives for a sensor that updates a destination over an erasure
// channel, powered by a harvesting battery with a paid backup supply.
//
// State is (aoi, battery). Each slot the sensor idles or transmits one
// update. Transmitting drains one battery unit when the battery is nonempty
// and otherwise pays the backup cost c_r. Energy arrives as Bernoulli(lambda)
// and is credited after the slot's decision. A transmitted update is erased
// with probability p; a delivered update resets the AoI to 1.

#ifndef AOI_MODEL_H_
#define AOI_MODEL_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

namespace aoi {

struct SystemParams {
  double p = 0.2;           // erasure probability
  double lambda_eh = 0.5;   // energy-arrival probability
  double omega = 10.0;      // weight on backup-energy cost
  double c_r = 2.0;         // backup cost per update
  int battery_cap = 20;     // B
  int aoi_cap = 200;        // truncation bound on the AoI

  friend bool operator==(const SystemParams&, const SystemParams&) = default;
};

// How strictly SystemParams are checked.
//   kSolve:    0 < p < 1, omega > 0, battery_cap >= 2.
//   kTestSolve: as kSolve but admits omega == 0 and battery_cap == 1, used for
//              degenerate corners and brute-force oracles.
//   kEvalOnly: additionally admits p in {0, 1}.
enum class ParamMode { kSolve, kTestSolve, kEvalOnly };

// Throws DomainError describing the first violated constraint.
void ValidateParams(const SystemParams& params, ParamMode mode);

struct State {
  int aoi = 1;
  int battery = 0;

  friend bool operator==(const State&, const State&) = default;
  friend auto operator<=>(const State&, const State&) = default;
};

std::string ToString(State s);

enum class Action : std::uint8_t { kIdle = 0, kTransmit = 1 };

inline constexpr std::array<Action, 2> kActions = {Action::kIdle,
                                                   Action::kTransmit};

// Throws DomainError if `s` lies outside the truncated grid of `params`.
void ValidateState(State s, const SystemParams& params);

struct Transition {
  State next;
  double prob = 0.0;
};

// Exact successor law of one (state, action) pair; at most four entries,
// no duplicates, zero-probability outcomes dropped.
class TransitionDist {
 public:
  void Add(State next, double prob);

  const Transition* begin() const { return entries_.data(); }
  const Transition* end() const { return entries_.data() + size_; }
  std::size_t size() const { return size_; }
  const Transition& operator[](std::size_t i) const { return entries_[i]; }

  // 0 when `s` is not a successor.
  double ProbabilityOf(State s) const;
  double TotalProbability() const;

 private:
  std::array<Transition, 4> entries_{};
  std::size_t size_ = 0;
};

TransitionDist Transitions(State s, Action a, const SystemParams& params);

// Delta + omega * c_r * a * (1 - u(q)).
double StageCost(State s, Action a, const SystemParams& params);

// Cost paid to the backup supply in this slot (0 or c_r).
inline double ReliableCost(State s, Action a, const SystemParams& params) {
  return (a == Action::kTransmit && s.battery == 0) ? params.c_r : 0.0;
}

// Deterministic 64-bit stream. Uniforms are built from the top 53 bits so the
// sequence of draws does not depend on the standard library's distributions.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  bool Bernoulli(double prob) { return Uniform() < prob; }
  std::uint64_t Next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent per-replication seeds.
std::uint64_t MixSeed(std::uint64_t seed, std::uint64_t stream);

struct StepOutcome {
  State next;
  bool delivered = false;
  bool energy_arrived = false;
  double reliable_cost_paid = 0.0;
  double stage_cost = 0.0;
};

// Samples one slot. The AoI is capped at params.aoi_cap only when
// `truncate_aoi` is set; Monte Carlo evaluation runs the untruncated chain.
StepOutcome SampleStep(State s, Action a, const SystemParams& params,
                       RandomStream& rng, bool truncate_aoi = true);

}  // namespace aoi

#endif  // AOI_MODEL_H_
