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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nbsim/chain.hpp"
#include "nbsim/geometry.hpp"

// Hierarchical task-priority inverse kinematics.
//
// Every scalar control objective x(q) contributes one row to a priority
// level. Level k minimizes ||A_k (xdot_ref_k - J_k qdot)||^2 over the
// solutions left by levels 1..k-1, using an activation-aware regularized
// pseudo-inverse and an accumulated null-space projector:
//
//   W   = J_k Q                      sqrt(A) W = U S V^T
//   y   = V S (S^2 + P)^-1 U^T A^(3/2) (xdot_ref - J_k rho)
//   rho = rho + Q y
//   Q   = Q (I - V S (S^2 + P)^-1 U^T A^(3/2) W)
//
// P is a bell-shaped damping that is nonzero only for singular values below
// the regularization threshold. Rows whose activation is exactly zero are
// removed before the level is solved, so they consume no degrees of freedom.

namespace nbsim {

enum class ObjectiveKind { kEquality, kLowerBound, kUpperBound, kRange };

struct ControlObjective {
  ObjectiveKind kind = ObjectiveKind::kEquality;
  double target = 0.0;  // equality set point
  double lower = 0.0;   // x_m
  double upper = 0.0;   // x_M
  double gain = 1.0;    // lambda, 1/s
  double feedforward = 0.0;
  double buffer = 0.0;  // activation transition width (inequalities)

  static ControlObjective Equality(double target, double gain, double feedforward = 0.0);
  static ControlObjective LowerBound(double lower, double buffer, double gain);
  static ControlObjective UpperBound(double upper, double buffer, double gain);
  static ControlObjective Range(double lower, double upper, double buffer, double gain);

  // Throws InvalidArgument on a non-positive gain or buffer, or lower >= upper.
  void validate() const;
};

/// 1 for equalities. For inequalities: 0 at least `buffer` inside the valid
/// region, 1 on or beyond the bound, C1 cubic blend in between.
double activation(double value, const ControlObjective& objective);

/// lambda (x* - x) + xdot*. Inequalities aim `buffer` inside the violated
/// bound and return 0 while their activation is 0.
double reference_rate(double value, const ControlObjective& objective);

struct Regularization {
  double threshold = 1e-4;  // singular values below this are damped
  double damping = 1e-3;    // peak of the bell-shaped damping
};

struct SolverParams {
  double regularization_threshold = 1e-4;
  double damping = 1e-3;
  // Per-level saturation of |qdot_i|; 0 disables it.
  double velocity_limit = 0.0;
  // Cap on |qdot_i| contributed by each level after the first, applied by
  // uniform scaling of that level's increment; 0 disables it.
  double secondary_velocity_limit = 0.0;
};

// One priority level expressed directly as matrices.
struct LevelProblem {
  Eigen::MatrixXd jacobian;
  Eigen::VectorXd reference;
  Eigen::VectorXd activation;
  std::optional<Regularization> regularization;  // overrides SolverParams
};

struct SolverOutput {
  Eigen::VectorXd q_dot_ref;
  std::vector<double> residuals;               // ||A_k (xdot_k - J_k qdot)|| per level
  std::vector<Eigen::VectorXd> activations;    // per level
  std::vector<Eigen::MatrixXd> projectors;     // null-space projector after each level
  std::vector<Eigen::VectorXd> level_rates;    // accumulated qdot after each level
};

SolverOutput solve_levels(const std::vector<LevelProblem>& levels, int dof,
                          const SolverParams& params);

// Set points and load for the current control step.
struct StepTarget {
  RigidTransform pose;
  Twist twist;
  Wrench wrench;
};

/// Lazily caches kinematic quantities shared by several tasks in one step.
class StepContext {
 public:
  StepContext(const RobotModel& model, const Eigen::VectorXd& q, StepTarget target,
              double partials_step = 1e-6);

  const RobotModel& model() const { return model_; }
  const Eigen::VectorXd& q() const { return q_; }
  const StepTarget& target() const { return target_; }

  const Kinematics& kinematics();
  const Matrix6Xd& weighted_jacobian();
  const std::vector<Matrix6Xd>& partials();

 private:
  const RobotModel& model_;
  Eigen::VectorXd q_;
  StepTarget target_;
  double partials_step_;
  std::optional<Kinematics> kinematics_;
  std::optional<Matrix6Xd> weighted_;
  std::optional<std::vector<Matrix6Xd>> partials_;
};

struct TaskEvaluation {
  Eigen::VectorXd values;       // x(q), one per objective
  Eigen::MatrixXd jacobian;     // dx/dq
  Eigen::VectorXd feedforward;  // optional per-row override of xdot*
};

struct Task {
  std::string name;
  int priority = 1;  // 1 = highest
  std::vector<ControlObjective> objectives;
  std::function<TaskEvaluation(StepContext&)> evaluate;
  // Level regularization; when tasks of one level disagree the largest
  // threshold and damping are used.
  std::optional<Regularization> regularization;
};

/// Prioritized list of tasks. Tasks sharing a priority form one level.
struct Action {
  std::string name;
  std::vector<Task> tasks;
};

/// Evaluates every task at the context configuration and solves the
/// hierarchy. Throws NoTasks or NonFiniteJacobian.
SolverOutput solve(const Action& action, StepContext& context, const SolverParams& params);

// Smoothstep ramp of elapsed/horizon: 0 at 0, 1 at horizon, C1.
double transition_ramp(double elapsed, double horizon);

/// (1 - s) solve(prev) + s solve(next). Diagnostics are taken from `next`.
SolverOutput action_transition(const Action& prev, const Action& next, double elapsed,
                               double horizon, StepContext& context,
                               const SolverParams& params);

struct JointState {
  Eigen::VectorXd q;
  Eigen::VectorXd q_dot;
};

/// Applies velocity then acceleration limits (uniform scaling, so the
/// direction of the command is kept) and advances one explicit Euler step
/// with wrapped angles.
JointState integrate_step(const JointState& current, const Eigen::VectorXd& q_dot_ref,
                          double dt, const JointLimits& limits);

/// Joint rates within the velocity and acceleration limits that keep the
/// priority order: the first level's command is scaled as in
/// integrate_step(), then each lower level adds as much of its increment as
/// the limits leave room for.
Eigen::VectorXd limit_rates(const SolverOutput& output, const Eigen::VectorXd& previous,
                            double dt, const JointLimits& limits);

}  // namespace nbsim
