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

#include "nbsim/tpik.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/SVD>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

double smoothstep(double u) {
  u = std::clamp(u, 0.0, 1.0);
  return u * u * (3.0 - 2.0 * u);
}

// Largest s in [0, 1] with lower_i <= base_i + s * delta_i <= upper_i.
double box_scale(const Eigen::VectorXd& base, const Eigen::VectorXd& delta,
                 const Eigen::VectorXd& lower, const Eigen::VectorXd& upper) {
  double scale = 1.0;
  for (Eigen::Index i = 0; i < delta.size(); ++i) {
    if (delta[i] == 0.0) continue;
    const double bound = delta[i] > 0.0 ? upper[i] - base[i] : lower[i] - base[i];
    scale = std::min(scale, std::max(bound / delta[i], 0.0));
  }
  return scale;
}

// Largest s in [0, 1] with |base_i + s * delta_i| <= limit for every i.
double saturation_scale(const Eigen::VectorXd& base, const Eigen::VectorXd& delta,
                        double limit) {
  const auto n = base.size();
  return box_scale(base, delta, Eigen::VectorXd::Constant(n, -limit),
                   Eigen::VectorXd::Constant(n, limit));
}

// Velocity then acceleration limit by uniform scaling.
Eigen::VectorXd scale_to_limits(Eigen::VectorXd q_dot, const Eigen::VectorXd& previous,
                                double dt, const JointLimits& limits) {
  const double peak = q_dot.cwiseAbs().maxCoeff();
  if (limits.velocity > 0.0 && peak > limits.velocity) q_dot *= limits.velocity / peak;
  const Eigen::VectorXd change = q_dot - previous;
  const double max_change = limits.acceleration * dt;
  const double peak_change = change.cwiseAbs().maxCoeff();
  if (limits.acceleration > 0.0 && peak_change > max_change) {
    q_dot = previous + change * (max_change / peak_change);
  }
  return q_dot;
}

}  // namespace

ControlObjective ControlObjective::Equality(double target, double gain, double feedforward) {
  ControlObjective o;
  o.kind = ObjectiveKind::kEquality;
  o.target = target;
  o.gain = gain;
  o.feedforward = feedforward;
  return o;
}

ControlObjective ControlObjective::LowerBound(double lower, double buffer, double gain) {
  ControlObjective o;
  o.kind = ObjectiveKind::kLowerBound;
  o.lower = lower;
  o.buffer = buffer;
  o.gain = gain;
  return o;
}

ControlObjective ControlObjective::UpperBound(double upper, double buffer, double gain) {
  ControlObjective o;
  o.kind = ObjectiveKind::kUpperBound;
  o.upper = upper;
  o.buffer = buffer;
  o.gain = gain;
  return o;
}

ControlObjective ControlObjective::Range(double lower, double upper, double buffer,
                                         double gain) {
  ControlObjective o;
  o.kind = ObjectiveKind::kRange;
  o.lower = lower;
  o.upper = upper;
  o.buffer = buffer;
  o.gain = gain;
  return o;
}

void ControlObjective::validate() const {
  if (!(gain > 0.0)) throw InvalidArgument("objective gain must be positive");
  if (kind != ObjectiveKind::kEquality && !(buffer > 0.0)) {
    throw InvalidArgument("inequality objectives need a positive buffer");
  }
  if (kind == ObjectiveKind::kRange && !(lower < upper)) {
    throw InvalidArgument("range objective needs lower < upper");
  }
}

double activation(double value, const ControlObjective& o) {
  auto lower_side = [&] { return smoothstep((o.lower + o.buffer - value) / o.buffer); };
  auto upper_side = [&] { return smoothstep((value - (o.upper - o.buffer)) / o.buffer); };
  switch (o.kind) {
    case ObjectiveKind::kEquality:
      return 1.0;
    case ObjectiveKind::kLowerBound:
      return lower_side();
    case ObjectiveKind::kUpperBound:
      return upper_side();
    case ObjectiveKind::kRange:
      return std::max(lower_side(), upper_side());
  }
  return 1.0;
}

double reference_rate(double value, const ControlObjective& o) {
  if (o.kind == ObjectiveKind::kEquality) {
    return o.gain * (o.target - value) + o.feedforward;
  }
  if (activation(value, o) == 0.0) return 0.0;
  double set_point = 0.0;
  switch (o.kind) {
    case ObjectiveKind::kLowerBound:
      set_point = o.lower + o.buffer;
      break;
    case ObjectiveKind::kUpperBound:
      set_point = o.upper - o.buffer;
      break;
    case ObjectiveKind::kRange:
      set_point = std::abs(value - o.lower) <= std::abs(value - o.upper) ? o.lower + o.buffer
                                                                         : o.upper - o.buffer;
      break;
    case ObjectiveKind::kEquality:
      break;
  }
  return o.gain * (set_point - value) + o.feedforward;
}

SolverOutput solve_levels(const std::vector<LevelProblem>& levels, int dof,
                          const SolverParams& params) {
  SolverOutput out;
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(dof);
  Eigen::MatrixXd projector = Eigen::MatrixXd::Identity(dof, dof);
  for (const LevelProblem& level : levels) {
    const double threshold = level.regularization ? level.regularization->threshold
                                                  : params.regularization_threshold;
    const double damping =
        level.regularization ? level.regularization->damping : params.damping;
    if (level.jacobian.cols() != dof || level.jacobian.rows() != level.reference.size() ||
        level.reference.size() != level.activation.size()) {
      throw DimensionMismatch("level problem dimensions are inconsistent");
    }
    std::vector<Eigen::Index> active;
    for (Eigen::Index r = 0; r < level.activation.size(); ++r) {
      if (level.activation[r] > 0.0) active.push_back(r);
    }
    if (!active.empty()) {
      const auto m = static_cast<Eigen::Index>(active.size());
      Eigen::MatrixXd jac(m, dof);
      Eigen::VectorXd error(m), act(m);
      for (Eigen::Index k = 0; k < m; ++k) {
        jac.row(k) = level.jacobian.row(active[k]);
        act[k] = level.activation[active[k]];
        error[k] = level.reference[active[k]];
      }
      error -= jac * rho;

      const Eigen::MatrixXd w = jac * projector;
      const Eigen::VectorXd sqrt_act = act.cwiseSqrt();
      const Eigen::VectorXd act_15 = act.cwiseProduct(sqrt_act);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(sqrt_act.asDiagonal() * w,
                                            Eigen::ComputeThinU | Eigen::ComputeThinV);
      const Eigen::VectorXd& sigma = svd.singularValues();
      Eigen::VectorXd gain(sigma.size());
      for (Eigen::Index k = 0; k < sigma.size(); ++k) {
        const double s = sigma[k];
        const double bell = threshold > 0.0 ? 1.0 - smoothstep(s / threshold) : 0.0;
        const double denom = s * s + damping * bell;
        gain[k] = denom > 0.0 ? s / denom : 0.0;
      }
      const Eigen::MatrixXd left = svd.matrixV() * gain.asDiagonal();
      const Eigen::MatrixXd ut = svd.matrixU().transpose() * act_15.asDiagonal();
      const Eigen::VectorXd y = left * (ut * error);
      Eigen::VectorXd delta = projector * y;
      const double peak = delta.cwiseAbs().maxCoeff();
      if (!out.projectors.empty() && params.secondary_velocity_limit > 0.0 &&
          peak > params.secondary_velocity_limit) {
        delta *= params.secondary_velocity_limit / peak;
      }
      if (params.velocity_limit > 0.0) {
        delta *= saturation_scale(rho, delta, params.velocity_limit);
      }
      rho += delta;
      projector -= projector * (left * (ut * w));
    }
    out.projectors.push_back(projector);
    out.level_rates.push_back(rho);
  }

  for (const LevelProblem& level : levels) {
    Eigen::VectorXd residual =
        level.activation.cwiseProduct(level.reference - level.jacobian * rho);
    out.residuals.push_back(residual.norm());
    out.activations.push_back(level.activation);
  }
  out.q_dot_ref = std::move(rho);
  return out;
}

StepContext::StepContext(const RobotModel& model, const Eigen::VectorXd& q, StepTarget target,
                         double partials_step)
    : model_(model), q_(q), target_(std::move(target)), partials_step_(partials_step) {}

const Kinematics& StepContext::kinematics() {
  if (!kinematics_) kinematics_ = evaluate_kinematics(model_, q_);
  return *kinematics_;
}

const Matrix6Xd& StepContext::weighted_jacobian() {
  if (!weighted_) {
    weighted_ = weight_jacobian(kinematics().jacobian, model_.characteristic_length());
  }
  return *weighted_;
}

const std::vector<Matrix6Xd>& StepContext::partials() {
  if (!partials_) partials_ = jacobian_partials(model_, q_, partials_step_);
  return *partials_;
}

SolverOutput solve(const Action& action, StepContext& context, const SolverParams& params) {
  if (action.tasks.empty()) throw NoTasks("action '" + action.name + "' has no tasks");
  const int dof = context.model().dof();

  std::map<int, std::vector<const Task*>> by_priority;
  for (const Task& task : action.tasks) {
    if (task.priority < 1) throw InvalidArgument("task priorities start at 1");
    by_priority[task.priority].push_back(&task);
  }

  std::vector<LevelProblem> levels;
  levels.reserve(by_priority.size());
  for (const auto& [priority, tasks] : by_priority) {
    std::vector<Eigen::RowVectorXd> rows;
    std::vector<double> refs, acts;
    std::optional<Regularization> regularization;
    for (const Task* task : tasks) {
      if (task->regularization) {
        if (!regularization) regularization = task->regularization;
        regularization->threshold =
            std::max(regularization->threshold, task->regularization->threshold);
        regularization->damping = std::max(regularization->damping, task->regularization->damping);
      }
      TaskEvaluation eval = task->evaluate(context);
      const auto m = static_cast<Eigen::Index>(task->objectives.size());
      if (eval.values.size() != m || eval.jacobian.rows() != m || eval.jacobian.cols() != dof) {
        throw DimensionMismatch("task '" + task->name + "' returned mismatched dimensions");
      }
      if (!eval.jacobian.allFinite() || !eval.values.allFinite()) {
        throw NonFiniteJacobian("task '" + task->name + "' produced non-finite values");
      }
      for (Eigen::Index r = 0; r < m; ++r) {
        ControlObjective objective = task->objectives[r];
        if (eval.feedforward.size() == m) objective.feedforward = eval.feedforward[r];
        rows.push_back(eval.jacobian.row(r));
        refs.push_back(reference_rate(eval.values[r], objective));
        acts.push_back(activation(eval.values[r], objective));
      }
    }
    LevelProblem level;
    level.jacobian.resize(static_cast<Eigen::Index>(rows.size()), dof);
    for (std::size_t r = 0; r < rows.size(); ++r) level.jacobian.row(r) = rows[r];
    level.reference = Eigen::Map<Eigen::VectorXd>(refs.data(), refs.size());
    level.activation = Eigen::Map<Eigen::VectorXd>(acts.data(), acts.size());
    level.regularization = regularization;
    levels.push_back(std::move(level));
  }
  return solve_levels(levels, dof, params);
}

double transition_ramp(double elapsed, double horizon) {
  if (!(horizon > 0.0)) throw InvalidArgument("transition horizon must be positive");
  return smoothstep(elapsed / horizon);
}

SolverOutput action_transition(const Action& prev, const Action& next, double elapsed,
                               double horizon, StepContext& context,
                               const SolverParams& params) {
  const double s = transition_ramp(elapsed, horizon);
  SolverOutput before = solve(prev, context, params);
  SolverOutput after = solve(next, context, params);
  if (s == 0.0) return before;
  if (s == 1.0) return after;
  after.q_dot_ref = (1.0 - s) * before.q_dot_ref + s * after.q_dot_ref;
  return after;
}

JointState integrate_step(const JointState& current, const Eigen::VectorXd& q_dot_ref,
                          double dt, const JointLimits& limits) {
  if (!(dt > 0.0)) throw InvalidArgument("integration step must be positive");
  if (q_dot_ref.size() != current.q.size()) {
    throw DimensionMismatch("velocity command does not match the joint vector");
  }
  const Eigen::VectorXd previous =
      current.q_dot.size() == q_dot_ref.size() ? current.q_dot
                                               : Eigen::VectorXd::Zero(q_dot_ref.size());
  const Eigen::VectorXd q_dot = scale_to_limits(q_dot_ref, previous, dt, limits);

  JointState next;
  next.q_dot = q_dot;
  next.q = current.q + dt * q_dot;
  for (Eigen::Index i = 0; i < next.q.size(); ++i) next.q[i] = wrap_angle(next.q[i]);
  return next;
}

Eigen::VectorXd limit_rates(const SolverOutput& output, const Eigen::VectorXd& previous,
                            double dt, const JointLimits& limits) {
  if (!(dt > 0.0)) throw InvalidArgument("integration step must be positive");
  if (output.level_rates.empty()) return output.q_dot_ref;
  const auto n = output.q_dot_ref.size();
  if (previous.size() != n) throw DimensionMismatch("previous rates do not match the command");

  Eigen::VectorXd lower = Eigen::VectorXd::Constant(n, -std::numeric_limits<double>::infinity());
  Eigen::VectorXd upper = Eigen::VectorXd::Constant(n, std::numeric_limits<double>::infinity());
  if (limits.velocity > 0.0) {
    lower.setConstant(-limits.velocity);
    upper.setConstant(limits.velocity);
  }
  if (limits.acceleration > 0.0) {
    const double step = limits.acceleration * dt;
    lower = lower.cwiseMax((previous.array() - step).matrix());
    upper = upper.cwiseMin((previous.array() + step).matrix());
  }

  Eigen::VectorXd q_dot = scale_to_limits(output.level_rates.front(), previous, dt, limits);
  for (std::size_t k = 1; k < output.level_rates.size(); ++k) {
    const Eigen::VectorXd delta = output.level_rates[k] - output.level_rates[k - 1];
    q_dot += box_scale(q_dot, delta, lower, upper) * delta;
  }
  return q_dot;
}

}  // namespace nbsim
