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

// Numerical certificates for the structure of converged value tables:
//
//   monotone_in_aoi        V(d1, q) <= V(d2, q) for d1 <= d2
//   monotone_in_battery    V(d, q) >= V(d, q + 1)
//   increment_lower_bound  V(d2, q) - V(d1, q) >= d2 - d1
//   cross_increment        V(d+1, q+1) + p V(d, q) >= V(d, q+1) + p V(d+1, q)
//   submodular_q           Q(d,q,0) - Q(d,q,1) nondecreasing in d
//
// Rows at the AoI cap are left out of the AoI-difference checks: saturation
// distorts increments there.

#ifndef AOI_STRUCTURE_H_
#define AOI_STRUCTURE_H_

#include <optional>
#include <string>
#include <utility>

#include "aoi/model.h"
#include "aoi/solver.h"
#include "json.hpp"

namespace aoi {

inline constexpr double kDefaultStructureTol = 1e-8;

struct StructureReport {
  bool monotone_in_aoi = true;
  bool monotone_in_battery = true;
  bool increment_lower_bound = true;
  bool cross_increment = true;
  bool submodular_q = true;
  // Most negative margin seen across the checks that were run (0 if none).
  double worst_violation = 0.0;
  std::optional<std::pair<State, State>> witness;
  std::string worst_check;

  bool AllPassed() const {
    return monotone_in_aoi && monotone_in_battery && increment_lower_bound &&
           cross_increment && submodular_q;
  }

  // Folds another fragment in; flags are and-ed, the worst margin kept.
  void Merge(const StructureReport& other);
};

// V nondecreasing in the AoI (cap row excluded), nonincreasing in the battery.
StructureReport CheckMonotonicity(const ValueTable& v, const SystemParams& params,
                                  double tol = kDefaultStructureTol);
// V(d2,q) - V(d1,q) >= d2 - d1 and
// V(d+1,q+1) + p V(d,q) >= V(d,q+1) + p V(d+1,q).
StructureReport CheckIncrements(const ValueTable& v, const SystemParams& params,
                                double tol = kDefaultStructureTol);
StructureReport CheckSubmodularity(const QTable& q, const SystemParams& params,
                                   double tol = kDefaultStructureTol);

// All three checks merged.
StructureReport CheckStructure(const ValueTable& v, const QTable& q,
                               const SystemParams& params,
                               double tol = kDefaultStructureTol);

nlohmann::json ToJson(const StructureReport& report);

}  // namespace aoi

#endif  // AOI_STRUCTURE_H_
