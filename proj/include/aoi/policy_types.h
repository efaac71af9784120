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

#ifndef AOI_POLICY_TYPES_H_
#define AOI_POLICY_TYPES_H_

#include <optional>
#include <string>
#include <vector>

#include "aoi/grid.h"
#include "aoi/model.h"

namespace aoi {

// Stationary deterministic policy, total on a truncated grid.
class PolicyTable {
 public:
  PolicyTable() = default;
  PolicyTable(StateGrid grid, Action fill)
      : grid_(grid), actions_(grid.size(), fill) {}

  const StateGrid& grid() const { return grid_; }

  // States beyond the AoI cap use the cap's action.
  Action At(State s) const;
  void Set(State s, Action a) { actions_[grid_.Index(s)] = a; }

  Action AtIndex(std::size_t i) const { return actions_[i]; }
  void SetIndex(std::size_t i, Action a) { actions_[i] = a; }

  std::size_t TransmitCount() const;

  friend bool operator==(const PolicyTable&, const PolicyTable&) = default;

 private:
  StateGrid grid_;
  std::vector<Action> actions_;
};

// Per-battery transmit thresholds: transmit iff aoi >= thresholds[q].
// std::nullopt means "never transmit" at that battery level.
struct ThresholdPolicy {
  std::vector<std::optional<int>> thresholds;

  int battery_cap() const { return static_cast<int>(thresholds.size()) - 1; }
  Action Decide(State s) const;

  friend bool operator==(const ThresholdPolicy&,
                         const ThresholdPolicy&) = default;
};

// True if every battery row is Idle up to some AoI and Transmit from there on.
bool IsThresholdShaped(const PolicyTable& policy);

PolicyTable ToPolicyTable(const ThresholdPolicy& tp, StateGrid grid);

std::string ToString(const ThresholdPolicy& tp);

}  // namespace aoi

#endif  // AOI_POLICY_TYPES_H_
