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

#include "aoi/solver.h"
#include "gtest/gtest.h"

namespace aoi {
namespace {

SystemParams SmallParams(int aoi_cap, int battery_cap) {
  SystemParams params;
  params.p = 0.2;
  params.lambda_eh = 0.5;
  params.omega = 10.0;
  params.c_r = 2.0;
  params.battery_cap = battery_cap;
  params.aoi_cap = aoi_cap;
  return params;
}

ValueTable TableFrom(const SystemParams& params, double (*f)(State)) {
  const StateGrid grid(params);
  ValueTable v;
  v.grid = grid;
  v.values.resize(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) v.values[i] = f(grid.At(i));
  return v;
}

TEST(StructureTest, ReferencePointPassesEverything) {
  const SystemParams params = SmallParams(200, 20);
  const SolveResult s = Solve(params);
  const StructureReport r = CheckStructure(s.values, s.q, params, 1e-8);
  EXPECT_TRUE(r.monotone_in_aoi);
  EXPECT_TRUE(r.monotone_in_battery);
  EXPECT_TRUE(r.increment_lower_bound);
  EXPECT_TRUE(r.cross_increment);
  EXPECT_TRUE(r.submodular_q);
  EXPECT_GE(r.worst_violation, -1e-8);
  EXPECT_TRUE(r.AllPassed());
}

TEST(StructureTest, ConstantTableIsMonotone) {
  const SystemParams params = SmallParams(10, 3);
  const ValueTable v = TableFrom(params, [](State) { return 0.0; });
  const StructureReport r = CheckMonotonicity(v, params);
  EXPECT_TRUE(r.monotone_in_aoi);
  EXPECT_TRUE(r.monotone_in_battery);
  const QTable q = ComputeQ(params, v.grid, v.values);
  EXPECT_TRUE(CheckSubmodularity(q, params).submodular_q);
}

TEST(StructureTest, PlantedAoiViolationHasWitness) {
  const SystemParams params = SmallParams(10, 3);
  ValueTable v = TableFrom(params, [](State s) { return 5.0 * s.aoi - 10.0 * s.battery; });
  v.values[v.grid.Index({2, 0})] = v.At({1, 0}) - 0.5;
  const StructureReport r = CheckMonotonicity(v, params);
  EXPECT_FALSE(r.monotone_in_aoi);
  EXPECT_TRUE(r.monotone_in_battery);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(r.witness->first, (State{1, 0}));
  EXPECT_EQ(r.witness->second, (State{2, 0}));
  EXPECT_NEAR(r.worst_violation, -0.5, 1e-12);
  EXPECT_FALSE(r.AllPassed());
}

TEST(StructureTest, PlantedBatteryViolation) {
  const SystemParams params = SmallParams(10, 3);
  ValueTable v = TableFrom(params, [](State s) { return 5.0 * s.aoi - s.battery; });
  v.values[v.grid.Index({4, 2})] = v.At({4, 1}) + 0.25;
  const StructureReport r = CheckMonotonicity(v, params);
  EXPECT_FALSE(r.monotone_in_battery);
  EXPECT_NEAR(r.worst_violation, -0.25, 1e-12);
}

TEST(StructureTest, AoiCapRowIsExcluded) {
  const SystemParams params = SmallParams(10, 3);
  ValueTable v = TableFrom(params, [](State s) { return 5.0 * s.aoi; });
  for (int q = 0; q <= 3; ++q) v.values[v.grid.Index({10, q})] = 0.0;
  EXPECT_TRUE(CheckMonotonicity(v, params).monotone_in_aoi);
  EXPECT_TRUE(CheckIncrements(v, params).increment_lower_bound);
}

TEST(StructureTest, IncrementLowerBound) {
  const SystemParams params = SmallParams(10, 3);
  const ValueTable ok = TableFrom(params, [](State s) { return 1.0 * s.aoi; });
  EXPECT_TRUE(CheckIncrements(ok, params).increment_lower_bound);
  const ValueTable slow = TableFrom(params, [](State s) { return 0.5 * s.aoi; });
  const StructureReport r = CheckIncrements(slow, params);
  EXPECT_FALSE(r.increment_lower_bound);
  EXPECT_TRUE(r.cross_increment);
}

TEST(StructureTest, CrossIncrementMarginForAoiOnlyTable) {
  const SystemParams params = SmallParams(10, 3);
  const ValueTable v = TableFrom(params, [](State s) { return 1.0 * s.aoi; });
  // V(d+1,q+1) + pV(d,q) - V(d,q+1) - pV(d+1,q) = 1 - p for every pair.
  for (int q = 0; q < 3; ++q) {
    for (int d = 1; d + 1 < 10; ++d) {
      const double margin = v.At({d + 1, q + 1}) + params.p * v.At({d, q}) -
                            v.At({d, q + 1}) - params.p * v.At({d + 1, q});
      EXPECT_NEAR(margin, 1.0 - params.p, 1e-12);
    }
  }
  EXPECT_TRUE(CheckIncrements(v, params).cross_increment);
}

TEST(StructureTest, PlantedCrossIncrementViolation) {
  const SystemParams params = SmallParams(10, 3);
  ValueTable v = TableFrom(params, [](State s) { return 1.0 * s.aoi; });
  v.values[v.grid.Index({5, 2})] = v.At({5, 2}) - 3.0;
  EXPECT_FALSE(CheckIncrements(v, params).cross_increment);
}

TEST(StructureTest, PlantedSubmodularityViolation) {
  const SystemParams params = SmallParams(10, 3);
  const StateGrid grid(params);
  QTable q{grid, std::vector<double>(grid.size()), std::vector<double>(grid.size())};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const State s = grid.At(i);
    q.idle[i] = 2.0 * s.aoi;
    q.transmit[i] = 1.0 * s.aoi + 3.0;
  }
  EXPECT_TRUE(CheckSubmodularity(q, params).submodular_q);
  q.idle[grid.Index({6, 1})] -= 4.0;
  const StructureReport r = CheckSubmodularity(q, params);
  EXPECT_FALSE(r.submodular_q);
  EXPECT_NEAR(r.worst_violation, -3.0, 1e-12);
}

// Q recomputed straight from the transition law and stage cost.
TEST(StructureTest, QMatchesDirectRecomputation) {
  SystemParams params = SmallParams(30, 2);
  const SolveResult s = Solve(params);
  double worst = 0.0;
  for (std::size_t i = 0; i < s.values.grid.size(); ++i) {
    const State x = s.values.grid.At(i);
    for (Action a : kActions) {
      double q = StageCost(x, a, params);
      for (const Transition& t : Transitions(x, a, params)) q += t.prob * s.values.At(t.next);
      worst = std::max(worst, std::abs(q - s.q.At(x, a)));
    }
  }
  EXPECT_LE(worst, 1e-10);
  const StructureReport r = CheckSubmodularity(s.q, params);
  EXPECT_TRUE(r.submodular_q);
}

TEST(StructureTest, ReportSerializes) {
  StructureReport r;
  r.cross_increment = false;
  r.worst_violation = -0.5;
  r.witness = {{State{1, 0}, State{2, 1}}};
  r.worst_check = "cross_increment";
  const nlohmann::json j = ToJson(r);
  EXPECT_FALSE(j.at("all_passed").get<bool>());
  EXPECT_EQ(j.at("worst_violation").get<double>(), -0.5);
  EXPECT_FALSE(j.at("witness").is_null());
}

}  // namespace
}  // namespace aoi
