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

#include "nbsim/tasks.hpp"

#include <utility>

#include "nbsim/metrics.hpp"

namespace nbsim {
namespace {

Task pose_like_task(std::string name, int priority, double gain, bool feedforward) {
  Task task;
  task.name = std::move(name);
  task.priority = priority;
  task.objectives.assign(6, ControlObjective::Equality(0.0, gain));
  task.evaluate = [feedforward](StepContext& ctx) {
    const Kinematics& kin = ctx.kinematics();
    TaskEvaluation eval;
    // x = -(pose error) so that lambda (0 - x) closes the loop.
    eval.values = -pose_error(ctx.target().pose, kin.tcp);
    eval.jacobian = kin.jacobian;
    if (feedforward) eval.feedforward = ctx.target().twist.stacked();
    return eval;
  };
  return task;
}

}  // namespace

Task make_pose_task(std::string name, int priority, double gain) {
  return pose_like_task(std::move(name), priority, gain, false);
}

Task make_velocity_task(std::string name, int priority, double gain) {
  return pose_like_task(std::move(name), priority, gain, true);
}

Task make_dexterity_task(std::string name, int priority, const OptimizationObjective& objective) {
  Task task;
  task.name = std::move(name);
  task.priority = priority;
  task.objectives = {
      ControlObjective::LowerBound(objective.lower, objective.buffer, objective.gain)};
  task.evaluate = [](StepContext& ctx) {
    const Matrix6Xd& jw = ctx.weighted_jacobian();
    TaskEvaluation eval;
    eval.values = Eigen::VectorXd::Constant(1, dexterity(jw).eta1);
    eval.jacobian = dexterity_gradient(jw, ctx.partials()).transpose();
    return eval;
  };
  return task;
}

Task make_rtr_task(std::string name, int priority, const OptimizationObjective& objective) {
  Task task;
  task.name = std::move(name);
  task.priority = priority;
  task.objectives = {
      ControlObjective::LowerBound(objective.lower, objective.buffer, objective.gain)};
  task.evaluate = [](StepContext& ctx) {
    const Matrix6Xd& jw = ctx.weighted_jacobian();
    const double length = ctx.model().characteristic_length();
    const StepTarget& target = ctx.target();
    TaskEvaluation eval;
    eval.values =
        Eigen::VectorXd::Constant(1, rtr(jw, target.twist, target.wrench, length));
    eval.jacobian =
        rtr_gradient(jw, ctx.partials(), target.twist, target.wrench, length).transpose();
    return eval;
  };
  return task;
}

}  // namespace nbsim
