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

#pragma once

#include <array>
#include <vector>

#include "nbsim/experiment.hpp"

namespace nbsim {

struct Distribution {
  std::size_t count = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;  // population
};

/// Quartiles by linear interpolation between order statistics.
/// Throws EmptyInput.
Distribution describe(std::vector<double> values);

// 100 (optimized - plain) / plain.
double improvement_percent(double plain, double optimized);

struct TrajectorySummary {
  int trajectory = 0;
  int plain_runs = 0;
  int optimized_runs = 0;
  int pairs = 0;

  // Per-run statistics. Empty distributions have count 0.
  Distribution start_eta_plain, start_eta_optimized;
  Distribution mean_eta_plain, mean_eta_optimized;

  // Per-pair improvements, percent.
  Distribution start_eta_improvement;
  Distribution mean_eta_improvement;
  Distribution mean_eta1_improvement;
  Distribution mean_eta2_improvement;
  double negative_fraction = 0.0;        // pairs with mean_eta improvement < 0
  double negative_start_fraction = 0.0;  // pairs with start_eta improvement < 0

  // Mean RTR per sector a..d, and 100 ((b,d) / (a,c) - 1).
  std::array<double, 4> sector_rtr_plain{};
  std::array<double, 4> sector_rtr_optimized{};
  double sector_gap_plain = 0.0;
  double sector_gap_optimized = 0.0;

  double mean_solver_us_plain = 0.0;
  double mean_solver_us_optimized = 0.0;
  double mean_reach_seconds_plain = 0.0;
  double mean_reach_seconds_optimized = 0.0;
  int local_max_reached = 0;
  int tracking_flags = 0;
};

struct Summary {
  std::vector<TrajectorySummary> trajectories;
  int runs = 0;
  int reach_failures = 0;
  int other_failures = 0;
  double mean_solver_us = 0.0;  // over every tracking control cycle
  double max_solver_us = 0.0;   // largest per-run mean
};

// Mean of eta over the logged steps of one run.
double mean_eta(const RunRecord& record);

/// Per-trajectory statistics; pairs are matched by (trajectory, seed).
/// Throws EmptyInput when `records` is empty.
Summary summarize(const std::vector<RunRecord>& records, int reach_failures = 0,
                  int other_failures = 0);

}  // namespace nbsim
