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

#include "nbsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <thread>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

using Clock = std::chrono::steady_clock;

double micros_since(Clock::time_point start) {
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

// 53 random bits mapped to [0, 1); identical on every standard library.
double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool above_floor(const RobotModel& model, const Eigen::VectorXd& q, double min_height) {
  for (const RigidTransform& frame : chain_frames(model, q)) {
    if (frame.translation.z() < min_height) return false;
  }
  return true;
}

double projected_norm(const Eigen::MatrixXd& projector, const Eigen::VectorXd& gradient) {
  return (projector.transpose() * gradient).norm();
}

StepRecord log_step(const RobotModel& model, const TrajectorySpec& trajectory, int step,
                    const Eigen::VectorXd& q, const ExperimentParams& params) {
  const Kinematics kin = evaluate_kinematics(model, q);
  const Matrix6Xd jw = weight_jacobian(kin.jacobian, model.characteristic_length());
  StepRecord record;
  record.step = step;
  record.time = trajectory.time(step);
  record.metrics = evaluate_metrics(jw, trajectory.twists[step], trajectory.wrenches[step],
                                    model.characteristic_length(), params.metric_lambda1,
                                    params.metric_lambda2);
  record.sector = trajectory.sectors[step];
  record.pose_error = (trajectory.poses[step].translation - kin.tcp.translation).norm();
  return record;
}

}  // namespace

std::uint64_t repetition_seed(std::uint64_t base_seed, int rep) {
  return base_seed + static_cast<std::uint64_t>(rep);
}

std::mt19937_64 make_rng(std::uint64_t seed, int trajectory) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trajectory)};
  return std::mt19937_64(seq);
}

Eigen::VectorXd random_start_configuration(const RobotModel& model, std::mt19937_64& rng,
                                           const ExperimentParams& params) {
  Eigen::VectorXd q(model.dof());
  for (int attempt = 0; attempt < params.start_max_attempts; ++attempt) {
    for (Eigen::Index i = 0; i < q.size(); ++i) {
      q[i] = std::numbers::pi * (2.0 * unit_uniform(rng) - 1.0);
    }
    if (above_floor(model, q, params.start_min_height)) return q;
  }
  throw ReachFailure("no admissible random start configuration found");
}

RunRecord run_single(const RobotModel& model, const TrajectorySpec& trajectory,
                     const Action& reach, const Action& follow, const Eigen::VectorXd& q0,
                     bool optimized, const ExperimentParams& params) {
  if (trajectory.size() < 2) throw InvalidArgument("trajectory needs at least two samples");
  if (q0.size() != model.dof()) throw DimensionMismatch("start configuration size mismatch");

  RunRecord record;
  record.trajectory = trajectory.id;
  record.optimized = optimized;
  record.initial_q = q0;

  JointState state{q0, Eigen::VectorXd::Zero(model.dof())};
  double solver_total = 0.0;
  long solver_count = 0;

  // Reach phase.
  const StepTarget start = trajectory.target(0);
  const int budget = params.reach_max_steps + (optimized ? params.optimize_max_steps : 0);
  int quiet_steps = 0;
  int step = 0;
  for (;; ++step) {
    StepContext ctx(model, state.q, start, params.partials_step);
    const Vector6d err = pose_error(start.pose, ctx.kinematics().tcp);
    const bool on_pose = err.head<3>().norm() < params.reach_position_tolerance &&
                         err.tail<3>().norm() < params.reach_orientation_tolerance;
    if (on_pose && !optimized) break;
    if (!on_pose && step >= params.reach_max_steps) {
      throw ReachFailure("start pose not reached within " +
                         std::to_string(params.reach_max_steps) + " steps");
    }
    if (step >= budget) break;

    const auto t0 = Clock::now();
    SolverOutput out = solve(reach, ctx, params.solver);
    solver_total += micros_since(t0);
    ++solver_count;

    if (on_pose) {
      const Matrix6Xd& jw = ctx.weighted_jacobian();
      const Eigen::MatrixXd& projector = out.projectors.front();
      const double length = model.characteristic_length();
      const double g1 = projected_norm(projector, dexterity_gradient(jw, ctx.partials()));
      const double g2 = projected_norm(
          projector, rtr_gradient(jw, ctx.partials(), start.twist, start.wrench, length));
      const bool flat = g1 < params.local_max_gradient_tolerance &&
                        g2 < params.local_max_gradient_tolerance;
      const bool still = out.q_dot_ref.cwiseAbs().maxCoeff() < params.local_max_speed_tolerance;
      quiet_steps = (flat || still) ? quiet_steps + 1 : 0;
      if (quiet_steps >= params.local_max_window) {
        record.local_max_reached = true;
        break;
      }
    }
    state = integrate_step(state, limit_rates(out, state.q_dot, params.dt, params.limits),
                           params.dt, params.limits);
  }
  record.reach_steps = step;
  record.reach_duration = step * params.dt;

  // Tracking phase: `cycles` control periods between consecutive samples.
  const int cycles = std::max(1, static_cast<int>(std::ceil(trajectory.dt / params.dt - 1e-9)));
  const double cycle_dt = trajectory.dt / cycles;
  record.steps.reserve(trajectory.size());
  StepRecord first = log_step(model, trajectory, 0, state.q, params);
  first.solver_us = solver_count > 0 ? solver_total / solver_count : 0.0;
  record.steps.push_back(first);

  double follow_total = 0.0;
  long follow_count = 0;
  for (int k = 0; k + 1 < trajectory.size(); ++k) {
    double segment_total = 0.0;
    for (int c = 0; c < cycles; ++c) {
      const double t = trajectory.time(k) + c * cycle_dt;
      StepContext ctx(model, state.q, trajectory.interpolate(t), params.partials_step);
      const auto t0 = Clock::now();
      SolverOutput out = solve(follow, ctx, params.solver);
      segment_total += micros_since(t0);
      state = integrate_step(state, limit_rates(out, state.q_dot, cycle_dt, params.limits),
                             cycle_dt, params.limits);
    }
    StepRecord sample = log_step(model, trajectory, k + 1, state.q, params);
    sample.solver_us = segment_total / cycles;
    record.steps.push_back(sample);
    follow_total += segment_total;
    follow_count += cycles;
  }

  record.mean_solver_us = follow_count > 0 ? follow_total / follow_count : 0.0;
  record.final_pose_error = record.steps.back().pose_error;
  for (const StepRecord& s : record.steps) {
    record.max_tracking_error = std::max(record.max_tracking_error, s.pose_error);
  }
  record.tracking_flagged = record.max_tracking_error > params.tracking_tolerance;
  return record;
}

ComparisonResult run_comparison(const RobotModel& model,
                                const std::vector<TrajectorySpec>& trajectories,
                                const ActionSet& actions, int n_repetitions,
                                std::uint64_t seed, const ExperimentParams& params,
                                OptimizeMode mode) {
  if (n_repetitions < 1) throw InvalidArgument("at least one repetition is required");
  if (trajectories.empty()) throw InvalidArgument("no trajectories to run");

  struct JobResult {
    std::optional<RunRecord> plain;
    std::optional<RunRecord> optimized;
    std::vector<RunFailure> failures;
    int reach_failures = 0;
  };
  const std::size_t n_jobs = trajectories.size() * static_cast<std::size_t>(n_repetitions);
  std::vector<JobResult> results(n_jobs);

  auto run_job = [&](std::size_t index) {
    const TrajectorySpec& trajectory = trajectories[index / n_repetitions];
    const int rep = static_cast<int>(index % n_repetitions);
    const std::uint64_t run_seed = repetition_seed(seed, rep);
    JobResult& result = results[index];

    auto attempt = [&](bool optimized) -> std::optional<RunRecord> {
      RunFailure failure{run_seed, trajectory.id, optimized, {}};
      try {
        std::mt19937_64 rng = make_rng(run_seed, trajectory.id);
        const Eigen::VectorXd q0 = random_start_configuration(model, rng, params);
        const Action& reach = optimized ? actions.reach_optimized : actions.reach;
        const Action& follow = optimized ? actions.follow_optimized : actions.follow;
        RunRecord record = run_single(model, trajectory, reach, follow, q0, optimized, params);
        record.seed = run_seed;
        return record;
      } catch (const ReachFailure& e) {
        ++result.reach_failures;
        failure.reason = std::string("reach failure: ") + e.what();
      } catch (const Error& e) {
        failure.reason = e.what();
      }
      result.failures.push_back(failure);
      return std::nullopt;
    };

    if (mode != OptimizeMode::kOn) result.plain = attempt(false);
    if (mode != OptimizeMode::kOff) result.optimized = attempt(true);
    if (mode == OptimizeMode::kBoth && result.plain.has_value() != result.optimized.has_value()) {
      // Keep only complete pairs.
      result.plain.reset();
      result.optimized.reset();
    }
  };

  const int workers = std::max(1, std::min<int>(params.workers, static_cast<int>(n_jobs)));
  if (workers == 1) {
    for (std::size_t i = 0; i < n_jobs; ++i) run_job(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n_jobs; i = next++) {
          try {
            run_job(i);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
  }

  ComparisonResult out;
  for (JobResult& r : results) {
    if (r.plain) out.records.push_back(std::move(*r.plain));
    if (r.optimized) out.records.push_back(std::move(*r.optimized));
    out.failures.insert(out.failures.end(), r.failures.begin(), r.failures.end());
    out.reach_failures += r.reach_failures;
  }
  return out;
}

}  // namespace nbsim
