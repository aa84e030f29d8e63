// Copyright 2026 The nbsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nbsim/summary.hpp"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

// Run whose steps carry constant metrics; sectors cycle a, b, c, d.
RunRecord synthetic(int trajectory, std::uint64_t seed, bool optimized, double eta1, double eta2,
                    int steps = 8) {
  RunRecord r;
  r.trajectory = trajectory;
  r.seed = seed;
  r.optimized = optimized;
  r.mean_solver_us = optimized ? 300.0 : 100.0;
  r.reach_duration = optimized ? 40.0 : 10.0;
  for (int k = 0; k < steps; ++k) {
    StepRecord s;
    s.step = k;
    s.sector = static_cast<Sector>(k % 4);
    s.metrics.eta1 = eta1;
    s.metrics.eta2 = eta2;
    s.metrics.eta = 0.5 * (eta1 + eta2);
    r.steps.push_back(s);
  }
  return r;
}

TEST(Describe, OddAndEvenSamples) {
  const Distribution odd = describe({5.0, 1.0, 4.0, 2.0, 3.0});
  EXPECT_EQ(odd.count, 5u);
  EXPECT_EQ(odd.min, 1.0);
  EXPECT_EQ(odd.q1, 2.0);
  EXPECT_EQ(odd.median, 3.0);
  EXPECT_EQ(odd.q3, 4.0);
  EXPECT_EQ(odd.max, 5.0);
  EXPECT_DOUBLE_EQ(odd.mean, 3.0);
  EXPECT_DOUBLE_EQ(odd.stddev, std::sqrt(2.0));

  const Distribution even = describe({4.0, 3.0, 2.0, 1.0});
  EXPECT_DOUBLE_EQ(even.q1, 1.75);
  EXPECT_DOUBLE_EQ(even.median, 2.5);
  EXPECT_DOUBLE_EQ(even.q3, 3.25);
  EXPECT_DOUBLE_EQ(even.stddev, std::sqrt(1.25));

  const Distribution one = describe({7.0});
  EXPECT_EQ(one.q1, 7.0);
  EXPECT_EQ(one.stddev, 0.0);
  EXPECT_THROW(describe({}), EmptyInput);
}

TEST(Describe, OrderStatisticsProperty) {
  std::mt19937_64 rng(97);
  std::normal_distribution<double> normal(0.0, 3.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> v(1 + rng() % 40);
    for (double& x : v) x = normal(rng);
    const Distribution d = describe(v);
    EXPECT_LE(d.min, d.q1);
    EXPECT_LE(d.q1, d.median);
    EXPECT_LE(d.median, d.q3);
    EXPECT_LE(d.q3, d.max);
    EXPECT_LE(d.min, d.mean);
    EXPECT_LE(d.mean, d.max);
  }
}

TEST(ImprovementPercent, Definition) {
  EXPECT_DOUBLE_EQ(improvement_percent(2.0, 3.0), 50.0);
  EXPECT_DOUBLE_EQ(improvement_percent(0.5, 0.25), -50.0);
  EXPECT_THROW(improvement_percent(0.0, 1.0), DegenerateInput);
}

TEST(Summarize, PairsBySeed) {
  std::vector<RunRecord> records = {
      synthetic(1, 1, false, 0.2, 0.4), synthetic(1, 1, true, 0.3, 0.6),
      synthetic(1, 2, false, 0.4, 0.4), synthetic(1, 2, true, 0.2, 0.4),
      synthetic(1, 3, false, 0.5, 0.5),  // unpaired
      synthetic(2, 1, true, 0.5, 0.5),
  };
  records[1].local_max_reached = true;
  records[3].tracking_flagged = true;
  const Summary s = summarize(records, 2, 1);
  ASSERT_EQ(s.trajectories.size(), 2u);
  EXPECT_EQ(s.runs, 6);
  EXPECT_EQ(s.reach_failures, 2);
  EXPECT_EQ(s.other_failures, 1);
  EXPECT_EQ(s.max_solver_us, 300.0);

  const TrajectorySummary& t = s.trajectories[0];
  EXPECT_EQ(t.trajectory, 1);
  EXPECT_EQ(t.plain_runs, 3);
  EXPECT_EQ(t.optimized_runs, 2);
  EXPECT_EQ(t.pairs, 2);
  EXPECT_EQ(t.local_max_reached, 1);
  EXPECT_EQ(t.tracking_flags, 1);
  // Pair 1: eta 0.3 -> 0.45 (+50 %); pair 2: 0.4 -> 0.3 (-25 %).
  EXPECT_NEAR(t.mean_eta_improvement.mean, 12.5, 1e-12);
  EXPECT_NEAR(t.start_eta_improvement.max, 50.0, 1e-12);
  EXPECT_NEAR(t.mean_eta1_improvement.min, -50.0, 1e-12);
  EXPECT_NEAR(t.mean_eta2_improvement.max, 50.0, 1e-12);
  EXPECT_DOUBLE_EQ(t.negative_fraction, 0.5);
  EXPECT_DOUBLE_EQ(t.negative_start_fraction, 0.5);
  EXPECT_DOUBLE_EQ(t.mean_reach_seconds_optimized, 40.0);
  EXPECT_DOUBLE_EQ(t.mean_solver_us_plain, 100.0);

  EXPECT_EQ(s.trajectories[1].pairs, 0);
  EXPECT_EQ(s.trajectories[1].mean_eta_improvement.count, 0u);
  EXPECT_THROW(summarize({}), EmptyInput);
}

TEST(Summarize, SectorGap) {
  RunRecord r = synthetic(1, 1, false, 0.5, 0.0);
  for (StepRecord& s : r.steps) {
    const bool along_u = s.sector == Sector::kB || s.sector == Sector::kD;
    s.metrics.eta2 = along_u ? 0.6 : 0.4;
  }
  const Summary s = summarize({r});
  const TrajectorySummary& t = s.trajectories[0];
  EXPECT_DOUBLE_EQ(t.sector_rtr_plain[0], 0.4);
  EXPECT_DOUBLE_EQ(t.sector_rtr_plain[1], 0.6);
  EXPECT_NEAR(t.sector_gap_plain, 50.0, 1e-12);
  EXPECT_EQ(t.sector_gap_optimized, 0.0);
}

TEST(MeanEta, AveragesSteps) {
  RunRecord r = synthetic(1, 1, false, 0.2, 0.4, 4);
  r.steps[3].metrics.eta = 0.7;
  EXPECT_DOUBLE_EQ(mean_eta(r), (0.3 * 3 + 0.7) / 4.0);
}

}  // namespace
}  // namespace nbsim
