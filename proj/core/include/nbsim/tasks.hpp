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

#include <string>

#include "nbsim/tpik.hpp"

// Task library used by the machining experiment.

namespace nbsim {

struct OptimizationObjective {
  double lower = 1.0;   // bound the metric is pushed towards
  double buffer = 0.1;
  double gain = 0.5;
};

// Six equality rows driving the TCP onto the target pose.
Task make_pose_task(std::string name, int priority, double gain);

// As make_pose_task, plus the target twist as feed-forward.
Task make_velocity_task(std::string name, int priority, double gain);

// Dexterity eta1 as a lower-bound objective with its analytic gradient.
Task make_dexterity_task(std::string name, int priority, const OptimizationObjective& objective);

// Transmission ratio eta2 for the target twist/wrench.
Task make_rtr_task(std::string name, int priority, const OptimizationObjective& objective);

}  // namespace nbsim
