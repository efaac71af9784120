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

#include "aoi/structure.h"

#include <algorithm>
#include <vector>

#include "aoi/errors.h"

namespace aoi {
namespace {

struct PairDrop {
  double margin = 0.0;
  std::size_t from = 0;
  std::size_t to = 0;
};

// min over i < j of s[j] - s[i]; nullopt for fewer than two entries.
std::optional<PairDrop> WorstPairDrop(const std::vector<double>& s) {
  if (s.size() < 2) return std::nullopt;
  PairDrop worst{s[1] - s[0], 0, 1};
  std::size_t argmax = s[1] > s[0] ? 1 : 0;
  for (std::size_t j = 2; j < s.size(); ++j) {
    const double m = s[j] - s[argmax];
    if (m < worst.margin) worst = {m, argmax, j};
    if (s[j] > s[argmax]) argmax = j;
  }
  return worst;
}

// Records one margin into a report fragment.
class Recorder {
 public:
  Recorder(StructureReport& report, double tol) : report_(report), tol_(tol) {}

  void Add(bool StructureReport::*flag, const char* name, double margin,
           State a, State b) {
    if (margin < -tol_) report_.*flag = false;
    if (margin < report_.worst_violation) {
      report_.worst_violation = margin;
      report_.witness = std::make_pair(a, b);
      report_.worst_check = name;
    }
  }

 private:
  StructureReport& report_;
  double tol_;
};

void CheckGrid(const StateGrid& grid, const SystemParams& params) {
  if (!(grid == StateGrid(params))) {
    throw DomainError("table does not match the parameter grid");
  }
}

}  // namespace

void StructureReport::Merge(const StructureReport& other) {
  monotone_in_aoi = monotone_in_aoi && other.monotone_in_aoi;
  monotone_in_battery = monotone_in_battery && other.monotone_in_battery;
  increment_lower_bound = increment_lower_bound && other.increment_lower_bound;
  cross_increment = cross_increment && other.cross_increment;
  submodular_q = submodular_q && other.submodular_q;
  if (other.worst_violation < worst_violation) {
    worst_violation = other.worst_violation;
    witness = other.witness;
    worst_check = other.worst_check;
  }
}

StructureReport CheckMonotonicity(const ValueTable& v, const SystemParams& params,
                                  double tol) {
  CheckGrid(v.grid, params);
  StructureReport report;
  Recorder rec(report, tol);
  const int cap = params.aoi_cap;
  const int bcap = params.battery_cap;

  std::vector<double> seq;
  for (int q = 0; q <= bcap; ++q) {
    seq.clear();
    for (int d = 1; d < cap; ++d) seq.push_back(v.At({d, q}));
    if (auto drop = WorstPairDrop(seq)) {
      rec.Add(&StructureReport::monotone_in_aoi, "monotone_in_aoi", drop->margin,
              {static_cast<int>(drop->from) + 1, q},
              {static_cast<int>(drop->to) + 1, q});
    }
  }
  // V(d, q1) >= V(d, q2) for q1 < q2, i.e. -V nondecreasing in q.
  for (int d = 1; d <= cap; ++d) {
    seq.clear();
    for (int q = 0; q <= bcap; ++q) seq.push_back(-v.At({d, q}));
    if (auto drop = WorstPairDrop(seq)) {
      rec.Add(&StructureReport::monotone_in_battery, "monotone_in_battery",
              drop->margin, {d, static_cast<int>(drop->from)},
              {d, static_cast<int>(drop->to)});
    }
  }
  return report;
}

StructureReport CheckIncrements(const ValueTable& v, const SystemParams& params,
                                double tol) {
  CheckGrid(v.grid, params);
  StructureReport report;
  Recorder rec(report, tol);
  const int cap = params.aoi_cap;
  const int bcap = params.battery_cap;
  const double p = params.p;

  // V(d2) - V(d1) >= d2 - d1  <=>  V(d) - d nondecreasing.
  std::vector<double> seq;
  for (int q = 0; q <= bcap; ++q) {
    seq.clear();
    for (int d = 1; d < cap; ++d) seq.push_back(v.At({d, q}) - d);
    if (auto drop = WorstPairDrop(seq)) {
      rec.Add(&StructureReport::increment_lower_bound, "increment_lower_bound",
              drop->margin, {static_cast<int>(drop->from) + 1, q},
              {static_cast<int>(drop->to) + 1, q});
    }
  }
  for (int q = 0; q < bcap; ++q) {
    for (int d = 1; d + 1 < cap; ++d) {
      const double lhs = v.At({d + 1, q + 1}) + p * v.At({d, q});
      const double rhs = v.At({d, q + 1}) + p * v.At({d + 1, q});
      rec.Add(&StructureReport::cross_increment, "cross_increment", lhs - rhs,
              {d, q}, {d + 1, q + 1});
    }
  }
  return report;
}

StructureReport CheckSubmodularity(const QTable& q, const SystemParams& params,
                                   double tol) {
  CheckGrid(q.grid, params);
  StructureReport report;
  Recorder rec(report, tol);
  for (int b = 0; b <= params.battery_cap; ++b) {
    for (int d = 1; d + 1 < params.aoi_cap; ++d) {
      const double adv = q.At({d, b}, Action::kIdle) - q.At({d, b}, Action::kTransmit);
      const double adv_next =
          q.At({d + 1, b}, Action::kIdle) - q.At({d + 1, b}, Action::kTransmit);
      rec.Add(&StructureReport::submodular_q, "submodular_q", adv_next - adv,
              {d, b}, {d + 1, b});
    }
  }
  return report;
}

StructureReport CheckStructure(const ValueTable& v, const QTable& q,
                               const SystemParams& params, double tol) {
  StructureReport report = CheckMonotonicity(v, params, tol);
  report.Merge(CheckIncrements(v, params, tol));
  report.Merge(CheckSubmodularity(q, params, tol));
  return report;
}

nlohmann::json ToJson(const StructureReport& report) {
  nlohmann::json j = {{"monotone_in_aoi", report.monotone_in_aoi},
                      {"monotone_in_battery", report.monotone_in_battery},
                      {"increment_lower_bound", report.increment_lower_bound},
                      {"cross_increment", report.cross_increment},
                      {"submodular_q", report.submodular_q},
                      {"all_passed", report.AllPassed()},
                      {"worst_violation", report.worst_violation}};
  if (report.witness) {
    const auto& [a, b] = *report.witness;
    j["witness"] = {{{"delta", a.aoi}, {"q", a.battery}},
                    {{"delta", b.aoi}, {"q", b.battery}}};
    j["worst_check"] = report.worst_check;
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

}  // namespace aoi
