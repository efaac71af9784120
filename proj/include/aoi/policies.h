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

#ifndef AOI_POLICIES_H_
#define AOI_POLICIES_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "aoi/model.h"
#include "aoi/policy_types.h"

namespace aoi {

// Transmit every slot.
struct ZeroWait {
  friend bool operator==(const ZeroWait&, const ZeroWait&) = default;
};

// Transmit iff t mod period == phase.
struct Periodic {
  int period = 1;
  int phase = 0;
  friend bool operator==(const Periodic&, const Periodic&) = default;
};

// Transmit with probability p_tx each slot, independent of state.
struct Randomized {
  double p_tx = 0.5;
  friend bool operator==(const Randomized&, const Randomized&) = default;
};

// Transmit iff the battery is nonempty; never pays the backup cost.
struct EnergyFirst {
  friend bool operator==(const EnergyFirst&, const EnergyFirst&) = default;
};

struct Threshold {
  ThresholdPolicy tp;
  friend bool operator==(const Threshold&, const Threshold&) = default;
};

struct Table {
  PolicyTable pt;
  friend bool operator==(const Table&, const Table&) = default;
};

using PolicySpec =
    std::variant<ZeroWait, Periodic, Randomized, EnergyFirst, Threshold, Table>;

// Throws DomainError for period < 1, phase outside [0, period) or p_tx
// outside [0, 1].
void ValidatePolicy(const PolicySpec& spec);

// Only Randomized consumes randomness from `rng`.
Action Decide(const PolicySpec& spec, State s, std::int64_t t,
              RandomStream& rng);

// Probability of Transmit in state s at slot t; 0 or 1 except for Randomized.
double TransmitProbability(const PolicySpec& spec, State s, std::int64_t t);

// False for Periodic (needs a phase coordinate) and Randomized (needs a
// mixture kernel).
bool IsMarkovStationary(const PolicySpec& spec);

// Accepts zero-wait, periodic:<period>[:<phase>], random[:<p_tx>],
// energy-first and threshold:<file.json>. Throws ParseError.
PolicySpec ParsePolicySpec(std::string_view text);

// Short label used in result tables, e.g. "periodic:5".
std::string PolicyLabel(const PolicySpec& spec);

}  // namespace aoi

#endif  // AOI_POLICIES_H_
