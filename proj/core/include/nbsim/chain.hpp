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

#include <variant>
#include <vector>

#include <Eigen/Core>

#include "nbsim/geometry.hpp"
#include "nbsim/mechanism.hpp"

namespace nbsim {

// Two actuated coordinates (q1, q2).
struct ModuleSegment {
  ModuleParams params;
};

// Rigid offset along the local z axis.
struct FixedLink {
  double length = 0.0;
};

// One actuated coordinate, rotation about a unit axis of the local frame.
struct RevoluteJoint {
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
};

using Segment = std::variant<ModuleSegment, FixedLink, RevoluteJoint>;

/// Serial chain of modules, links and revolute joints ending in a tool.
class RobotModel {
 public:
  RobotModel(std::vector<Segment> segments, RigidTransform tool,
             double characteristic_length);

  int dof() const { return dof_; }
  int module_count() const;
  const std::vector<Segment>& segments() const { return segments_; }
  const RigidTransform& tool() const { return tool_; }
  double characteristic_length() const { return characteristic_length_; }

  // First joint-vector index of each segment (-1 for fixed links).
  const std::vector<int>& coordinate_offsets() const { return offsets_; }

  // Copy with every length (module r, links, tool offset, L) multiplied.
  RobotModel scaled(double factor) const;

 private:
  std::vector<Segment> segments_;
  RigidTransform tool_;
  double characteristic_length_;
  std::vector<int> offsets_;
  int dof_ = 0;
};

struct JointLimits {
  double velocity = 0.0;      // rad/s
  double acceleration = 0.0;  // rad/s^2
};

/// TCP pose for joint vector `q`. Throws DimensionMismatch.
RigidTransform forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q);

// World frame at the base of every segment followed by the tool mount and
// the TCP (segments().size() + 2 entries).
std::vector<RigidTransform> chain_frames(const RobotModel& model, const Eigen::VectorXd& q);

struct Kinematics {
  RigidTransform tcp;
  Matrix6Xd jacobian;  // [linear; angular], base frame
};

Kinematics evaluate_kinematics(const RobotModel& model, const Eigen::VectorXd& q);

/// Geometric Jacobian mapping joint rates to the TCP twist, rows ordered
/// [linear; angular].
Matrix6Xd end_effector_jacobian(const RobotModel& model, const Eigen::VectorXd& q);

/// Linear rows divided by the characteristic length.
Matrix6Xd weighted_jacobian(const RobotModel& model, const Eigen::VectorXd& q);
Matrix6Xd weight_jacobian(const Matrix6Xd& jacobian, double characteristic_length);

/// d(J_w)/d(q_i) for every joint, central differences with step `step`.
std::vector<Matrix6Xd> jacobian_partials(const RobotModel& model, const Eigen::VectorXd& q,
                                         double step = 1e-6);

/// Joint vector whose posture is `q` rotated by `angle` about the base z
/// axis: module coordinates up to the first revolute joint and that joint
/// are offset by `angle`. Without a revolute joint the frames are rotated
/// up to a final spin about the local z axis, so TCP positions are exact
/// only for tool offsets along z. Throws InvalidArgument for a revolute
/// joint not about z.
Eigen::VectorXd rotate_about_base(const RobotModel& model, const Eigen::VectorXd& q,
                                  double angle);

}  // namespace nbsim
