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

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "nbsim/chain.hpp"
#include "nbsim/config.hpp"
#include "nbsim/geometry.hpp"

namespace nbsim::testing {

inline std::string preset_path(const std::string& name) {
  return std::string(NBSIM_PRESET_DIR) + "/" + name;
}

inline const ExperimentConfig& rp120_config() {
  static const ExperimentConfig config = load_config(preset_path("rp120.yaml"));
  return config;
}

inline const RobotModel& rp120() {
  static const RobotModel model = rp120_config().robot.build();
  return model;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Eigen::VectorXd random_q(std::mt19937_64& rng, int n) {
  Eigen::VectorXd q(n);
  for (int i = 0; i < n; ++i) q[i] = uniform(rng, -std::numbers::pi, std::numbers::pi);
  return q;
}

// Planar arm in the x-z plane: revolute joints about y, links along z.
inline RobotModel planar_arm(const std::vector<double>& lengths) {
  std::vector<Segment> segments;
  for (double l : lengths) {
    segments.emplace_back(RevoluteJoint{Eigen::Vector3d::UnitY()});
    segments.emplace_back(FixedLink{l});
  }
  return RobotModel(std::move(segments), RigidTransform::Identity(), 1.0);
}

// Skew-symmetric part of dR R^T as a vector.
inline Eigen::Vector3d vee(const Eigen::Matrix3d& m) {
  return 0.5 * Eigen::Vector3d(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
}

// Central difference of a pose map, returned as (linear velocity, angular velocity).
template <class PoseFn>
Matrix6Xd pose_jacobian_fd(PoseFn pose, const Eigen::VectorXd& q, double h) {
  Matrix6Xd out(6, q.size());
  const RigidTransform center = pose(q);
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    Eigen::VectorXd plus = q, minus = q;
    plus[i] += h;
    minus[i] -= h;
    const RigidTransform a = pose(plus), b = pose(minus);
    out.col(i).head<3>() = (a.translation - b.translation) / (2.0 * h);
    out.col(i).tail<3>() = vee((a.rotation - b.rotation) / (2.0 * h) * center.rotation.transpose());
  }
  return out;
}

template <class ScalarFn>
Eigen::VectorXd gradient_fd(ScalarFn f, const Eigen::VectorXd& q, double h) {
  Eigen::VectorXd g(q.size());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    Eigen::VectorXd plus = q, minus = q;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

template <class A, class B>
double relative_error(const A& value, const B& reference) {
  const double scale = std::max(reference.norm(), 1e-12);
  return (value - reference).norm() / scale;
}

}  // namespace nbsim::testing
