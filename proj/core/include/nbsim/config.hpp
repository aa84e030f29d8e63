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
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nbsim/chain.hpp"
#include "nbsim/experiment.hpp"
#include "nbsim/tasks.hpp"
#include "nbsim/trajectory.hpp"

// YAML experiment configuration. The schema is documented in
// docs/config_schema.md; every error is reported as ConfigError with
// "file:line:column: key.path: message".

namespace nbsim {

struct RobotConfig {
  std::vector<Segment> segments;
  RigidTransform tool;
  double characteristic_length = 0.0;
  JointLimits limits;

  RobotModel build() const;
};

enum class TaskKind { kPose, kVelocity, kDexterity, kRtr };

struct TaskConfig {
  std::string name;
  TaskKind kind = TaskKind::kPose;
  double gain = 1.0;
  OptimizationObjective objective;  // dexterity / rtr only
  std::optional<Regularization> regularization;
};

struct RunConfig {
  int steps = 201;
  int repetitions = 20;
  std::uint64_t seed = 1;
  std::vector<int> trajectories{1, 2, 3, 4};
  OptimizeMode optimize = OptimizeMode::kBoth;
  int workers = 0;  // 0: hardware concurrency
  int paper_steps = 2001;
  int paper_repetitions = 100;
};

struct WorkspaceConfig {
  int grid = 61;        // module mode: grid x grid actuator samples
  int samples = 2000;   // robot mode: random postures
  int azimuths = 8;     // robot mode: copies rotated about z
};

struct ExperimentConfig {
  std::string source;
  RobotConfig robot;
  bool has_experiment = false;  // trajectory, tasks and actions present
  TrajectoryParams trajectory;
  std::vector<TaskConfig> tasks;
  // action name -> (task name -> priority level)
  std::map<std::string, std::map<std::string, int>> actions;
  ExperimentParams experiment;
  RunConfig run;
  WorkspaceConfig workspace;
  std::string output_dir = "out";
  bool csv_timing = false;
};

inline const std::vector<std::string> kActionNames = {"reach", "follow", "reach_optimized",
                                                      "follow_optimized"};

/// Reads and validates a config file. A scalar `robot:` entry names another
/// config file (relative to this one) whose robot section is used.
ExperimentConfig load_config(const std::filesystem::path& path);

ExperimentConfig parse_config(const std::string& text, const std::string& source_name,
                              const std::filesystem::path& base_dir = ".");

// Throws ConfigError when the experiment sections are missing.
ActionSet build_actions(const ExperimentConfig& config);
std::vector<TrajectorySpec> build_trajectories(const ExperimentConfig& config);

std::string to_string(OptimizeMode mode);
OptimizeMode parse_optimize_mode(const std::string& text);  // on | off | both

}  // namespace nbsim
