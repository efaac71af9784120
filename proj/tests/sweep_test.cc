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

#include "aoi/sweep.h"

#include "aoi/errors.h"
#include "gtest/gtest.h"

namespace aoi {
namespace {

SweepSpec SmallSweep() {
  SweepSpec spec;
  spec.fixed.p = 0.2;
  spec.fixed.lambda_eh = 0.5;
  spec.fixed.omega = 10.0;
  spec.fixed.c_r = 2.0;
  spec.fixed.battery_cap = 5;
  spec.fixed.aoi_cap = 60;
  spec.sim.horizon = 20'000;
  spec.sim.replications = 4;
  return spec;
}

TEST(SweepTest, RowsInAxisThenPolicyOrder) {
  SweepSpec spec = SmallSweep();
  spec.axis = SweepAxis::kOmega;
  spec.values = {1.0, 10.0};
  const SweepResult r = RunSweep(spec);
  ASSERT_EQ(r.rows.size(), 12u);
  EXPECT_EQ(r.rows[0].axis_value, 1.0);
  EXPECT_EQ(r.rows[0].policy, "zero-wait");
  EXPECT_EQ(r.rows[5].policy, "solved");
  EXPECT_EQ(r.rows[6].params.omega, 10.0);
  ASSERT_TRUE(r.rows[5].thresholds.has_value());
  for (const SweepRow& row : r.rows) {
    if (row.policy == "solved") continue;
    const SweepRow& solved = r.rows[row.axis_value == 1.0 ? 5 : 11];
    EXPECT_LE(solved.report.avg_total_cost, row.report.avg_total_cost + 1e-9) << row.policy;
  }
}

TEST(SweepTest, CsvIsDeterministic) {
  SweepSpec spec = SmallSweep();
  spec.axis = SweepAxis::kLambda;
  spec.values = {0.3, 0.9};
  EXPECT_EQ(RunSweep(spec).csv, RunSweep(spec).csv);
}

TEST(SweepTest, ErasureFreePointIsFlagged) {
  SweepSpec spec = SmallSweep();
  spec.axis = SweepAxis::kP;
  spec.values = {0.0};
  spec.policies = {{"solved", std::nullopt}, {"zero-wait", ZeroWait{}}};
  const SweepResult r = RunSweep(spec);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].policy, "solved(p_clamped=1e-09)");
  EXPECT_TRUE(r.rows[0].p_clamped);
  EXPECT_EQ(r.rows[0].params.p, 0.0);
  EXPECT_NEAR(r.rows[1].report.avg_aoi, 1.0, 1e-12);
}

TEST(SweepTest, ErrorsNameTheGridPoint) {
  SweepSpec spec = SmallSweep();
  spec.axis = SweepAxis::kOmega;
  spec.values = {10.0};
  spec.solver.max_iters = 2;
  try {
    RunSweep(spec);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_NE(std::string(e.what()).find("omega=10"), std::string::npos);
  }
  spec = SmallSweep();
  spec.axis = SweepAxis::kLambda;
  spec.values = {1.5};
  EXPECT_THROW(RunSweep(spec), DomainError);
}

TEST(SweepTest, ThresholdAtCapIsTruncationError) {
  SweepSpec spec = SmallSweep();
  spec.fixed.aoi_cap = 3;
  spec.axis = SweepAxis::kOmega;
  spec.values = {100.0};
  spec.fixed.lambda_eh = 0.1;
  spec.check_adequacy = true;
  spec.policies = {{"solved", std::nullopt}};
  EXPECT_THROW(RunSweep(spec), TruncationError);
}

TEST(SweepTest, ParsesAxesAndPolicies) {
  EXPECT_EQ(ParseAxis("lambda"), SweepAxis::kLambda);
  EXPECT_THROW(ParseAxis("beta"), ParseError);
  EXPECT_FALSE(ParseSweepPolicy("solved").spec.has_value());
  EXPECT_EQ(ParseSweepPolicy("periodic:5").label, "periodic:5");
  EXPECT_EQ(DefaultSweepPolicies().size(), 6u);
  SystemParams base;
  EXPECT_EQ(WithAxisValue(base, SweepAxis::kP, 0.7).p, 0.7);
}

}  // namespace
}  // namespace aoi
