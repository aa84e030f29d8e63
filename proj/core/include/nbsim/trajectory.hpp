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

#include <array>
#include <vector>

#include <Eigen/Core>

#include "nbsim/geometry.hpp"
#include "nbsim/tpik.hpp"

namespace nbsim {

// Sides of the square path: a (+v), b (+u), c (-v), d (-u).
enum class Sector { kA = 0, kB = 1, kC = 2, kD = 3 };

char sector_label(Sector sector);

// Placement of one square path on a face of the workpiece cube.
struct FaceSpec {
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();  // face center - cube center
  Eigen::Vector3d u_axis = Eigen::Vector3d::UnitX();
  Eigen::Vector3d v_axis = Eigen::Vector3d::UnitY();
  Eigen::Vector3d tool_axis = -Eigen::Vector3d::UnitZ();  // TCP z, world frame
  Eigen::Vector3d tool_x = Eigen::Vector3d::UnitY();      // TCP x, world frame
};

struct TrajectoryParams {
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
  double side = 0.0;              // m
  double speed = 0.0;             // m/s
  double tangential_force = 0.0;  // N, along the motion
  double radial_force = 0.0;      // N, in the face plane
  bool radial_inward = true;
  int steps = 0;                  // samples including both ends
  std::array<FaceSpec, 4> faces;
};

/// Timed samples of a closed square path.
struct TrajectorySpec {
  int id = 0;
  double dt = 0.0;  // time between samples
  std::vector<RigidTransform> poses;
  std::vector<Twist> twists;
  std::vector<Wrench> wrenches;
  std::vector<Sector> sectors;

  int size() const { return static_cast<int>(poses.size()); }
  double duration() const { return dt * (size() - 1); }
  double time(int step) const { return dt * step; }
  StepTarget target(int step) const { return {poses[step], twists[step], wrenches[step]}; }

  // Reference at an arbitrary time: position moves linearly between
  // samples, twist and wrench are those of the preceding sample.
  StepTarget interpolate(double t) const;
};

/// Square path `id` (1..4) at constant speed, starting at the (-u, -v)
/// corner. Throws BadId or InvalidArgument.
TrajectorySpec build_trajectory(int id, const TrajectoryParams& params);

// Target TCP rotation for a face: columns (x, z cross x, z).
Eigen::Matrix3d face_tool_rotation(const FaceSpec& face);

}  // namespace nbsim
