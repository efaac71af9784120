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

#include "aoi/eval.h"

#include <cmath>
#include <numeric>
#include <sstream>

#include "aoi/errors.h"
#include "aoi/solver.h"
#include "gtest/gtest.h"

namespace aoi {
namespace {

SystemParams ReferenceParams(int aoi_cap = 400) {
  SystemParams params;
  params.p = 0.2;
  params.lambda_eh = 0.5;
  params.omega = 10.0;
  params.c_r = 2.0;
  params.battery_cap = 20;
  params.aoi_cap = aoi_cap;
  return params;
}

// Zero-wait: AoI is geometric with success 1 - p; the battery is empty in a
// slot exactly when no unit arrived in the previous slot.
double ZeroWaitCost(const SystemParams& params) {
  return 1.0 / (1.0 - params.p) + params.omega * params.c_r * (1.0 - params.lambda_eh);
}

// Mean AoI of a fixed-period policy that never runs dry.
double PeriodicAoi(int period, double p) {
  return (period * (1.0 + p) / (1.0 - p) + 1.0) / 2.0;
}

TEST(ExactTest, ZeroWaitClosedForm) {
  const EvalReport r = EvaluateExact(ZeroWait{}, ReferenceParams());
  EXPECT_NEAR(r.avg_total_cost, 11.25, 1e-6);
  EXPECT_NEAR(ZeroWaitCost(ReferenceParams()), 11.25, 1e-15);
  EXPECT_NEAR(r.avg_aoi, 1.25, 1e-6);
  EXPECT_NEAR(r.avg_weighted_energy, 10.0, 1e-6);
  EXPECT_EQ(r.ci_halfwidth_95, 0.0);
  EXPECT_EQ(r.method, EvalMethod::kExactStationary);
}

TEST(ExactTest, ZeroWaitClosedFormAcrossParams) {
  for (double p : {0.1, 0.5, 0.7}) {
    for (double lambda : {0.0, 0.3, 1.0}) {
      SystemParams params = ReferenceParams(300);
      params.p = p;
      params.lambda_eh = lambda;
      const EvalReport r = EvaluateExact(ZeroWait{}, params);
      EXPECT_NEAR(r.avg_total_cost, ZeroWaitCost(params), 1e-6) << p << " " << lambda;
    }
  }
}

TEST(ExactTest, PeriodicClosedForm) {
  for (int period : {1, 5, 10}) {
    for (int phase : {0, period - 1}) {
      SystemParams params = ReferenceParams();
      params.lambda_eh = 1.0;
      const EvalReport r = EvaluateExact(Periodic{period, phase}, params);
      EXPECT_NEAR(r.avg_aoi, PeriodicAoi(period, params.p), 1e-6) << period;
      EXPECT_NEAR(r.avg_weighted_energy, 0.0, 1e-12);
    }
  }
}

TEST(ExactTest, EnergyFirstPaysNothing) {
  const EvalReport r = EvaluateExact(EnergyFirst{}, ReferenceParams());
  EXPECT_EQ(r.avg_weighted_energy, 0.0);
  EXPECT_NEAR(r.avg_total_cost, r.avg_aoi, 1e-12);
}

TEST(ExactTest, ReportDecomposes) {
  for (const PolicySpec& spec :
       {PolicySpec(ZeroWait{}), PolicySpec(Randomized{0.5}), PolicySpec(Periodic{5, 1})}) {
    const EvalReport r = EvaluateExact(spec, ReferenceParams());
    EXPECT_NEAR(r.avg_total_cost, r.avg_aoi + r.avg_weighted_energy, 1e-9);
  }
}

TEST(ExactTest, DistributionIsProbabilityVector) {
  const ExactEvaluation e = EvaluateExactDetailed(Randomized{0.5}, ReferenceParams());
  const double total = std::accumulate(e.distribution.begin(), e.distribution.end(), 0.0);
  EXPECT_NEAR(total, 1.0, 1e-12);
  for (double x : e.distribution) EXPECT_GE(x, 0.0);
  EXPECT_LT(e.residual, 1e-12);
  EXPECT_LE(e.boundary_mass, 1e-9);
}

TEST(ExactTest, InitialBatteryDoesNotMatter) {
  ExactOptions from_full;
  from_full.initial_state = {1, 20};
  for (const PolicySpec& spec : {PolicySpec(EnergyFirst{}), PolicySpec(Randomized{0.5})}) {
    const EvalReport a = EvaluateExact(spec, ReferenceParams());
    const EvalReport b = EvaluateExact(spec, ReferenceParams(), from_full);
    EXPECT_NEAR(a.avg_total_cost, b.avg_total_cost, 1e-9);
  }
}

TEST(ExactTest, BoundaryMassGuard) {
  SystemParams params = ReferenceParams(50);
  params.p = 0.9;
  EXPECT_THROW(EvaluateExact(Periodic{10, 0}, params), TruncationError);
}

TEST(ExactTest, ErasureFreeZeroWait) {
  SystemParams params = ReferenceParams(50);
  params.p = 0.0;
  const EvalReport r = EvaluateExact(ZeroWait{}, params);
  EXPECT_NEAR(r.avg_aoi, 1.0, 1e-12);
}

TEST(SimulateTest, ZeroWaitWithinCi) {
  SimConfig cfg;
  cfg.horizon = 1'000'000;
  cfg.replications = 20;
  cfg.seed = 2024;
  const EvalReport r = Simulate(ZeroWait{}, ReferenceParams(), cfg);
  EXPECT_EQ(r.method, EvalMethod::kMonteCarlo);
  EXPECT_GT(r.ci_halfwidth_95, 0.0);
  EXPECT_LE(std::abs(r.avg_total_cost - 11.25), r.ci_halfwidth_95);
  EXPECT_NEAR(r.avg_aoi, 1.25, 0.01);
  EXPECT_NEAR(r.avg_weighted_energy, 10.0, 0.05);
  EXPECT_NEAR(r.avg_total_cost, r.avg_aoi + r.avg_weighted_energy, 1e-9);
}

TEST(SimulateTest, ErasureFreeZeroWait) {
  SystemParams params = ReferenceParams();
  params.p = 0.0;
  SimConfig cfg;
  cfg.horizon = 10'000;
  cfg.replications = 3;
  EXPECT_EQ(Simulate(ZeroWait{}, params, cfg).avg_aoi, 1.0);
}

TEST(SimulateTest, EnergyFirstPaysNothing) {
  SimConfig cfg;
  cfg.horizon = 100'000;
  cfg.replications = 4;
  EXPECT_EQ(Simulate(EnergyFirst{}, ReferenceParams(), cfg).avg_weighted_energy, 0.0);
}

TEST(SimulateTest, MatchesExactWithinThreeCi) {
  SimConfig cfg;
  cfg.horizon = 400'000;
  cfg.replications = 20;
  cfg.seed = 5;
  for (const PolicySpec& spec :
       {PolicySpec(Randomized{0.5}), PolicySpec(Periodic{5, 0}), PolicySpec(EnergyFirst{}),
        PolicySpec(Threshold{ThresholdPolicy{{4, 3, 3, 3, 3, 3, 3, 3, 3, 2, 2, 2, 2, 2, 2, 2,
                                              2, 2, 2, 2, 1}}})}) {
    const EvalReport mc = Simulate(spec, ReferenceParams(), cfg);
    const EvalReport ex = EvaluateExact(spec, ReferenceParams());
    EXPECT_LE(std::abs(mc.avg_total_cost - ex.avg_total_cost), 3.0 * mc.ci_halfwidth_95)
        << PolicyLabel(spec);
  }
}

TEST(SimulateTest, InitialBatteryInsensitive) {
  SimConfig cfg;
  cfg.horizon = 200'000;
  cfg.replications = 20;
  const EvalReport a = Simulate(EnergyFirst{}, ReferenceParams(), cfg);
  cfg.initial_state = {1, 20};
  const EvalReport b = Simulate(EnergyFirst{}, ReferenceParams(), cfg);
  EXPECT_LE(std::abs(a.avg_total_cost - b.avg_total_cost),
            a.ci_halfwidth_95 + b.ci_halfwidth_95);
}

TEST(SimulateTest, SeedDeterminesResult) {
  SimConfig cfg;
  cfg.horizon = 20'000;
  cfg.replications = 3;
  const EvalReport a = Simulate(Randomized{0.5}, ReferenceParams(), cfg);
  const EvalReport b = Simulate(Randomized{0.5}, ReferenceParams(), cfg);
  EXPECT_EQ(a.avg_total_cost, b.avg_total_cost);
  cfg.seed = 2;
  EXPECT_NE(Simulate(Randomized{0.5}, ReferenceParams(), cfg).avg_total_cost, a.avg_total_cost);
}

TEST(SimulateTest, SingleReplicationHasNoCi) {
  SimConfig cfg;
  cfg.horizon = 1000;
  cfg.replications = 1;
  EXPECT_TRUE(std::isinf(Simulate(ZeroWait{}, ReferenceParams(), cfg).ci_halfwidth_95));
}

TEST(SimulateTest, RejectsBadConfig) {
  SimConfig cfg;
  cfg.horizon = 100;
  cfg.warmup = 100;
  EXPECT_THROW(Simulate(ZeroWait{}, ReferenceParams(), cfg), DomainError);
  cfg.warmup = 0;
  cfg.replications = 0;
  EXPECT_THROW(Simulate(ZeroWait{}, ReferenceParams(), cfg), DomainError);
}

SystemParams Tiny(int battery_cap, double p, double omega) {
  SystemParams params;
  params.p = p;
  params.lambda_eh = 0.5;
  params.omega = omega;
  params.c_r = 2.0;
  params.battery_cap = battery_cap;
  params.aoi_cap = 4;
  return params;
}

SolverConfig TestMode() {
  SolverConfig cfg;
  cfg.test_mode = true;
  return cfg;
}

TEST(EnumerateTest, SingleUnitBattery) {
  const SystemParams params = Tiny(1, 0.5, 1.0);
  const EnumerationResult e = EnumerateOptimal(params);
  EXPECT_EQ(e.policies_evaluated, 256u);
  EXPECT_NEAR(e.cost, Solve(params, TestMode()).values.gain, 1e-6);
  EXPECT_TRUE(IsThresholdShaped(e.best));
}

TEST(EnumerateTest, TwoUnitBattery) {
  const SystemParams params = Tiny(2, 0.5, 1.0);
  const EnumerationResult e = EnumerateOptimal(params);
  EXPECT_EQ(e.policies_evaluated, 4096u);
  EXPECT_NEAR(e.cost, Solve(params).values.gain, 1e-6);
  EXPECT_TRUE(IsThresholdShaped(e.best));
}

TEST(EnumerateTest, OptimumIsThresholdShapedAcrossParams) {
  for (double p : {0.1, 0.4, 0.8}) {
    for (double omega : {0.3, 3.0, 30.0}) {
      const EnumerationResult e = EnumerateOptimal(Tiny(1, p, omega));
      EXPECT_TRUE(IsThresholdShaped(e.best)) << p << " " << omega;
      EXPECT_NEAR(e.cost, Solve(Tiny(1, p, omega), TestMode()).values.gain, 1e-6);
    }
  }
}

TEST(EnumerateTest, FreeTransmissionOptimumIncludesAlwaysTransmit) {
  const SystemParams params = Tiny(1, 0.5, 0.0);
  const EnumerationResult e = EnumerateOptimal(params);
  const StateGrid grid(params);
  ExactOptions opts;
  opts.boundary_mass_limit = 1.0;
  const double all_tx =
      EvaluateExact(Table{PolicyTable(grid, Action::kTransmit)}, params, opts).avg_total_cost;
  EXPECT_NEAR(e.cost, all_tx, 1e-12);
}

TEST(EnumerateTest, HugeWeightAvoidsBackupEnergy) {
  const SystemParams params = Tiny(1, 0.5, 1e6);
  const EnumerationResult e = EnumerateOptimal(params);
  const SolvedPolicy s = SolveThresholdPolicy(params, TestMode());
  EXPECT_NEAR(e.cost, s.solution.values.gain, 1e-6);
  EXPECT_EQ(e.best, s.policy);
  for (int d = 1; d <= 4; ++d) EXPECT_EQ(e.best.At({d, 0}), Action::kIdle);
}

TEST(EnumerateTest, RefusesLargeInstances) {
  EXPECT_THROW(EnumerateOptimal(Tiny(6, 0.5, 1.0)), DomainError);
}

TEST(ResultsCsvTest, HeaderAndRow) {
  std::ostringstream out;
  WriteResultsHeader(out);
  EvalReport r;
  r.avg_total_cost = 11.25;
  r.avg_aoi = 1.25;
  r.avg_weighted_energy = 10.0;
  WriteResultsRow(out, "zero-wait", ReferenceParams(), r, 7);
  EXPECT_EQ(out.str(),
            "policy,p,lambda,omega,c_r,B,method,avg_total,avg_aoi,avg_energy,ci95,seed\n"
            "zero-wait,0.2,0.5,10,2,20,exact,11.25,1.25,10,0,7\n");
}

}  // namespace
}  // namespace aoi
