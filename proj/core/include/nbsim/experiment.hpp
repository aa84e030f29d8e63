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

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nbsim/chain.hpp"
#include "nbsim/metrics.hpp"
#include "nbsim/tpik.hpp"
#include "nbsim/trajectory.hpp"

// Paired Monte-Carlo comparison of the plain and the metric-optimizing
// actions along the machining trajectories.
//
// For each (trajectory, repetition) a random start configuration is drawn.
// The plain run drives the TCP onto the first trajectory pose with `reach`
// and then tracks the path with `follow`. The optimized run restarts from
// the same configuration and uses `reach_optimized` (which keeps improving
// the metrics after the pose is reached) and `follow_optimized`.

namespace nbsim {

struct ActionSet {
  Action reach;
  Action follow;
  Action reach_optimized;
  Action follow_optimized;
};

enum class OptimizeMode { kOff, kOn, kBoth };

struct ExperimentParams {
  double dt = 0.1;  // control period, s
  JointLimits limits{1.0, 2.0};
  SolverParams solver;
  double partials_step = 1e-6;
  double metric_lambda1 = 0.5;
  double metric_lambda2 = 0.5;

  int reach_max_steps = 3000;
  double reach_position_tolerance = 1e-4;     // m
  double reach_orientation_tolerance = 1e-4;  // rad

  // Local-maximum test of the optimized reach: projected metric gradients
  // below `local_max_gradient_tolerance`, or commanded joint speed below
  // `local_max_speed_tolerance`, for `local_max_window` consecutive steps.
  int optimize_max_steps = 2000;
  double local_max_gradient_tolerance = 1e-5;
  double local_max_speed_tolerance = 1e-4;
  int local_max_window = 10;

  double tracking_tolerance = 1e-3;  // m
  double start_min_height = 0.0;     // m, for every frame origin and the TCP
  int start_max_attempts = 10000;
  int workers = 1;
};

struct StepRecord {
  int step = 0;
  double time = 0.0;
  MetricSample metrics;
  Sector sector = Sector::kA;
  double solver_us = 0.0;   // mean solve time of the control cycles before this sample
  double pose_error = 0.0;  // TCP position error, m
};

struct RunRecord {
  std::uint64_t seed = 0;
  int trajectory = 0;
  bool optimized = false;
  Eigen::VectorXd initial_q;
  std::vector<StepRecord> steps;
  int reach_steps = 0;
  double reach_duration = 0.0;     // simulated seconds
  bool local_max_reached = false;  // optimized runs only
  double mean_solver_us = 0.0;
  double final_pose_error = 0.0;
  double max_tracking_error = 0.0;
  bool tracking_flagged = false;
};

struct RunFailure {
  std::uint64_t seed = 0;
  int trajectory = 0;
  bool optimized = false;
  std::string reason;
};

struct ComparisonResult {
  std::vector<RunRecord> records;  // ordered by trajectory, seed, plain before optimized
  std::vector<RunFailure> failures;
  int reach_failures = 0;
};

// Seed of repetition `rep`.
std::uint64_t repetition_seed(std::uint64_t base_seed, int rep);

// Generator for one (seed, trajectory) pair.
std::mt19937_64 make_rng(std::uint64_t seed, int trajectory);

/// Uniform joint angles in [-pi, pi), rejection-sampled so that no frame
/// origin nor the TCP lies below `start_min_height`.
Eigen::VectorXd random_start_configuration(const RobotModel& model, std::mt19937_64& rng,
                                           const ExperimentParams& params);

/// One reach + follow run. Throws ReachFailure when the start pose is not
/// attained within the step budget.
RunRecord run_single(const RobotModel& model, const TrajectorySpec& trajectory,
                     const Action& reach, const Action& follow, const Eigen::VectorXd& q0,
                     bool optimized, const ExperimentParams& params);

ComparisonResult run_comparison(const RobotModel& model,
                                const std::vector<TrajectorySpec>& trajectories,
                                const ActionSet& actions, int n_repetitions,
                                std::uint64_t seed, const ExperimentParams& params,
                                OptimizeMode mode = OptimizeMode::kBoth);

}  // namespace nbsim
