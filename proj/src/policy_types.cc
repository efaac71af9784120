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

#include "aoi/policy_types.h"

#include <algorithm>
#include <sstream>

#include "aoi/errors.h"

namespace aoi {

Action PolicyTable::At(State s) const {
  if (s.battery < 0 || s.battery > grid_.battery_cap() || s.aoi < 1) {
    throw DomainError("state " + ToString(s) + " outside policy table");
  }
  s.aoi = std::min(s.aoi, grid_.aoi_cap());
  return actions_[grid_.Index(s)];
}

std::size_t PolicyTable::TransmitCount() const {
  return static_cast<std::size_t>(
      std::count(actions_.begin(), actions_.end(), Action::kTransmit));
}

Action ThresholdPolicy::Decide(State s) const {
  if (s.battery < 0 || s.battery > battery_cap()) {
    throw DomainError("battery level " + std::to_string(s.battery) +
                      " outside threshold policy");
  }
  const std::optional<int>& t = thresholds[static_cast<std::size_t>(s.battery)];
  return (t && s.aoi >= *t) ? Action::kTransmit : Action::kIdle;
}

bool IsThresholdShaped(const PolicyTable& policy) {
  const StateGrid& grid = policy.grid();
  for (int q = 0; q <= grid.battery_cap(); ++q) {
    bool switched = false;
    for (int d = 1; d <= grid.aoi_cap(); ++d) {
      const bool tx = policy.At({d, q}) == Action::kTransmit;
      if (switched && !tx) return false;
      switched = switched || tx;
    }
  }
  return true;
}

PolicyTable ToPolicyTable(const ThresholdPolicy& tp, StateGrid grid) {
  if (tp.battery_cap() != grid.battery_cap()) {
    throw DomainError("threshold policy has " +
                      std::to_string(tp.thresholds.size()) +
                      " battery levels, grid expects " +
                      std::to_string(grid.battery_cap() + 1));
  }
  PolicyTable table(grid, Action::kIdle);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.SetIndex(i, tp.Decide(grid.At(i)));
  }
  return table;
}

std::string ToString(const ThresholdPolicy& tp) {
  std::ostringstream out;
  out << "[";
  for (std::size_t q = 0; q < tp.thresholds.size(); ++q) {
    if (q) out << " ";
    if (tp.thresholds[q]) {
      out << *tp.thresholds[q];
    } else {
      out << "never";
    }
  }
  out << "]";
  return out.str();
}

}  // namespace aoi
