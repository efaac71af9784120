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

// File formats for solver artifacts.
//
//   values.csv      header "delta,q,value", one row per grid state, values
//                   printed with 17 significant digits.
//   thresholds.csv  header "q,threshold"; "never" when a level never sends.
//   thresholds.json {"battery_cap": B, "thresholds": [t_0, ..., t_B]} with
//                   null for "never".

#ifndef AOI_TABLES_IO_H_
#define AOI_TABLES_IO_H_

#include <iosfwd>
#include <string>

#include "aoi/policy_types.h"
#include "aoi/solver.h"
#include "json.hpp"

namespace aoi {

void WriteValueCsv(const ValueTable& v, std::ostream& out);
// The grid is inferred from the largest delta and q; every state must appear
// exactly once. Throws ParseError. gain is left at 0.
ValueTable ReadValueCsv(std::istream& in);

void WriteThresholdCsv(const ThresholdPolicy& tp, std::ostream& out);

nlohmann::json ThresholdToJson(const ThresholdPolicy& tp);
ThresholdPolicy ThresholdFromJson(const nlohmann::json& j);

void SaveValueCsv(const ValueTable& v, const std::string& path);
ValueTable LoadValueCsv(const std::string& path);
void SaveThresholdJson(const ThresholdPolicy& tp, const std::string& path);
ThresholdPolicy LoadThresholdJson(const std::string& path);

}  // namespace aoi

#endif  // AOI_TABLES_IO_H_
