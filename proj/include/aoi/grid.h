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

#ifndef AOI_GRID_H_
#define AOI_GRID_H_

#include <cstddef>

#include "aoi/model.h"

namespace aoi {

// Dense indexing of the truncated state space. Rows are battery levels and
// each row holds aoi = 1..aoi_cap contiguously, which is the layout the
// Bellman kernels vectorize over.
class StateGrid {
 public:
  StateGrid() = default;
  StateGrid(int aoi_cap, int battery_cap)
      : aoi_cap_(aoi_cap), battery_cap_(battery_cap) {}
  explicit StateGrid(const SystemParams& params)
      : StateGrid(params.aoi_cap, params.battery_cap) {}

  int aoi_cap() const { return aoi_cap_; }
  int battery_cap() const { return battery_cap_; }
  std::size_t row_size() const { return static_cast<std::size_t>(aoi_cap_); }
  std::size_t size() const {
    return row_size() * static_cast<std::size_t>(battery_cap_ + 1);
  }

  bool Contains(State s) const {
    return s.aoi >= 1 && s.aoi <= aoi_cap_ && s.battery >= 0 &&
           s.battery <= battery_cap_;
  }
  std::size_t Index(State s) const {
    return static_cast<std::size_t>(s.battery) * row_size() +
           static_cast<std::size_t>(s.aoi - 1);
  }
  State At(std::size_t index) const {
    return {static_cast<int>(index % row_size()) + 1,
            static_cast<int>(index / row_size())};
  }

  friend bool operator==(const StateGrid&, const StateGrid&) = default;

 private:
  int aoi_cap_ = 0;
  int battery_cap_ = 0;
};

}  // namespace aoi

#endif  // AOI_GRID_H_
