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

#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "nbsim/chain.hpp"
#include "nbsim/config.hpp"
#include "nbsim/metrics.hpp"
#include "nbsim/tpik.hpp"
#include "nbsim/trajectory.hpp"

namespace {

using namespace nbsim;

struct Scene {
  ExperimentConfig config = load_config(std::string(NBSIM_PRESET_DIR) + "/rp120.yaml");
  RobotModel model = config.robot.build();
  ActionSet actions = build_actions(config);
  TrajectorySpec path = build_trajectories(config).front();
  Eigen::VectorXd q;

  Scene() {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> angle(-3.0, 3.0);
    q.resize(model.dof());
    for (Eigen::Index i = 0; i < q.size(); ++i) q[i] = angle(rng);
  }
};

const Scene& scene() {
  static const Scene s;
  return s;
}

void BM_ForwardKinematics(benchmark::State& state) {
  const Scene& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(forward_kinematics(s.model, s.q));
}
BENCHMARK(BM_ForwardKinematics);

void BM_Kinematics(benchmark::State& state) {
  const Scene& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_kinematics(s.model, s.q));
}
BENCHMARK(BM_Kinematics);

void BM_JacobianPartials(benchmark::State& state) {
  const Scene& s = scene();
  for (auto _ : state) benchmark::DoNotOptimize(jacobian_partials(s.model, s.q));
}
BENCHMARK(BM_JacobianPartials)->Unit(benchmark::kMicrosecond);

void BM_Dexterity(benchmark::State& state) {
  const Scene& s = scene();
  const Matrix6Xd jw = weighted_jacobian(s.model, s.q);
  for (auto _ : state) benchmark::DoNotOptimize(dexterity(jw));
}
BENCHMARK(BM_Dexterity);

void BM_Rtr(benchmark::State& state) {
  const Scene& s = scene();
  const Matrix6Xd jw = weighted_jacobian(s.model, s.q);
  const StepTarget t = s.path.target(0);
  const double l = s.model.characteristic_length();
  for (auto _ : state) benchmark::DoNotOptimize(rtr(jw, t.twist, t.wrench, l));
}
BENCHMARK(BM_Rtr);

void BM_MetricGradients(benchmark::State& state) {
  const Scene& s = scene();
  const Matrix6Xd jw = weighted_jacobian(s.model, s.q);
  const auto partials = jacobian_partials(s.model, s.q);
  const StepTarget t = s.path.target(0);
  const double l = s.model.characteristic_length();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dexterity_gradient(jw, partials));
    benchmark::DoNotOptimize(rtr_gradient(jw, partials, t.twist, t.wrench, l));
  }
}
BENCHMARK(BM_MetricGradients)->Unit(benchmark::kMicrosecond);

// One control step of each action, kinematics included.
void BM_TpikStep(benchmark::State& state) {
  const Scene& s = scene();
  const Action* actions[] = {&s.actions.follow, &s.actions.follow_optimized, &s.actions.reach,
                             &s.actions.reach_optimized};
  const Action& action = *actions[state.range(0)];
  const SolverParams& params = s.config.experiment.solver;
  for (auto _ : state) {
    StepContext ctx(s.model, s.q, s.path.target(0));
    benchmark::DoNotOptimize(solve(action, ctx, params));
  }
  state.SetLabel(action.name);
}
BENCHMARK(BM_TpikStep)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
