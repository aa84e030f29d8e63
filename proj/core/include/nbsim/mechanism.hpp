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

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "nbsim/geometry.hpp"

// Geometric and differential model of one zero-torsion two-DOF module.
//
// The module is two oblique tubes of half-height `r` and slope `alpha`
// stacked between a base and a moving platform. Its orientation is
// parameterized by azimuth phi (direction of tilt) and tilt theta; the
// moving platform never rotates about its own normal.

namespace nbsim {

struct ModuleParams {
  double r = 0.0;      // half-height, m
  double alpha = 0.0;  // tube slope, rad

  // Throws InvalidArgument unless r > 0 and 0 < alpha < pi/2.
  void validate() const;
  double max_tilt() const { return 2.0 * alpha; }
};

struct TiltAzimuth {
  double phi = 0.0;    // azimuth, rad
  double theta = 0.0;  // tilt, rad
};

struct ActuatorAngles {
  double q1 = 0.0;  // motor 1, rad
  double q2 = 0.0;  // motor 2, rad
};

struct ModuleJacobians {
  Eigen::Matrix<double, 6, 2> j1;  // (phi_dot, theta_dot) -> twist
  Eigen::Matrix2d j2;              // (q1_dot, q2_dot) -> (phi_dot, theta_dot)
  Eigen::Matrix<double, 6, 2> j;   // j1 * j2
  double c = 0.0;                  // scalar in j2
};

/// Motor angles to tilt/azimuth. phi is wrapped to (-pi, pi]; theta uses
/// the two-argument arctangent and is negative when q1 > q2 (within a
/// half-turn).
TiltAzimuth actuator_to_tilt_azimuth(const ActuatorAngles& q, const ModuleParams& p);

/// Both motor solutions for a tilt/azimuth pair, primary branch first.
///
/// At theta = 0 both branches are q1 = q2 = phi + pi/2. Throws
/// TiltOutOfRange when |theta| > 2 alpha (beyond a 1e-9 tolerance).
std::pair<ActuatorAngles, ActuatorAngles> tilt_azimuth_to_actuator(
    const TiltAzimuth& a, const ModuleParams& p);

// Picks the solution closer to `current` in wrapped angular distance.
ActuatorAngles closest_branch(const std::pair<ActuatorAngles, ActuatorAngles>& branches,
                              const ActuatorAngles& current);

/// Platform-2 pose in the platform-1 frame.
RigidTransform module_transform(const TiltAzimuth& a, const ModuleParams& p);
RigidTransform module_transform(const ActuatorAngles& q, const ModuleParams& p);

/// Analytical module Jacobians at a motor configuration. The twist is the
/// velocity of the platform-2 origin and the angular velocity, both in the
/// platform-1 frame.
ModuleJacobians module_jacobians(const ActuatorAngles& q, const ModuleParams& p);

struct WorkspaceSample {
  ActuatorAngles q;
  TiltAzimuth angles;
  Eigen::Vector3d position;
};

// Frame origins over a grid x grid sweep of (q1, q2) in [-pi, pi]^2.
std::vector<WorkspaceSample> module_workspace(const ModuleParams& p, int grid);

}  // namespace nbsim
