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

#include "nbsim/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nbsim/errors.hpp"

namespace nbsim {

char sector_label(Sector sector) { return static_cast<char>('a' + static_cast<int>(sector)); }

Eigen::Matrix3d face_tool_rotation(const FaceSpec& face) {
  Eigen::Vector3d z = face.tool_axis.normalized();
  Eigen::Vector3d x = face.tool_x - face.tool_x.dot(z) * z;
  if (x.norm() < 1e-9) throw InvalidArgument("tool_x must not be parallel to tool_axis");
  x.normalize();
  Eigen::Matrix3d r;
  r.col(0) = x;
  r.col(1) = z.cross(x);
  r.col(2) = z;
  return r;
}

StepTarget TrajectorySpec::interpolate(double t) const {
  if (t <= 0.0) return target(0);
  const int last = size() - 1;
  int k = static_cast<int>(std::floor(t / dt));
  if (k >= last) return target(last);
  const double frac = (t - k * dt) / dt;
  StepTarget out = target(k);
  out.pose.translation = (1.0 - frac) * poses[k].translation + frac * poses[k + 1].translation;
  return out;
}

TrajectorySpec build_trajectory(int id, const TrajectoryParams& params) {
  if (id < 1 || id > 4) throw BadId("trajectory id must be 1..4, got " + std::to_string(id));
  if (!(params.side > 0.0) || !(params.speed > 0.0) || params.steps < 2) {
    throw InvalidArgument("trajectory needs positive side and speed and at least 2 steps");
  }
  const FaceSpec& face = params.faces[id - 1];
  const Eigen::Vector3d u = face.u_axis.normalized();
  const Eigen::Vector3d v = face.v_axis.normalized();
  const Eigen::Vector3d face_center = params.center + face.offset;
  const Eigen::Matrix3d rotation = face_tool_rotation(face);

  const double h = 0.5 * params.side;
  const std::array<Eigen::Vector2d, 4> corners = {Eigen::Vector2d(-h, -h), Eigen::Vector2d(-h, h),
                                                  Eigen::Vector2d(h, h), Eigen::Vector2d(h, -h)};
  const std::array<Eigen::Vector2d, 4> directions = {Eigen::Vector2d(0, 1), Eigen::Vector2d(1, 0),
                                                     Eigen::Vector2d(0, -1), Eigen::Vector2d(-1, 0)};

  const double perimeter = 4.0 * params.side;
  TrajectorySpec spec;
  spec.id = id;
  spec.dt = perimeter / params.speed / (params.steps - 1);
  spec.poses.reserve(params.steps);
  spec.twists.reserve(params.steps);
  spec.wrenches.reserve(params.steps);
  spec.sectors.reserve(params.steps);

  for (int k = 0; k < params.steps; ++k) {
    const double arc = perimeter * k / (params.steps - 1);
    int segment = static_cast<int>(std::floor(arc / params.side + 1e-9));
    segment = std::clamp(segment, 0, 3);
    const double along = arc - segment * params.side;
    const Eigen::Vector2d local = corners[segment] + along * directions[segment];
    const Eigen::Vector3d dir3 = directions[segment].x() * u + directions[segment].y() * v;
    const Eigen::Vector3d point = face_center + local.x() * u + local.y() * v;

    // Inward normal: the part of (center - point) orthogonal to the motion.
    Eigen::Vector3d to_center = face_center - point;
    Eigen::Vector3d inward = to_center - to_center.dot(dir3) * dir3;
    inward.normalize();

    RigidTransform pose{rotation, point};
    Twist twist;
    twist.linear = params.speed * dir3;
    Wrench wrench;
    wrench.force = params.tangential_force * dir3 +
                   (params.radial_inward ? 1.0 : -1.0) * params.radial_force * inward;

    spec.poses.push_back(pose);
    spec.twists.push_back(twist);
    spec.wrenches.push_back(wrench);
    spec.sectors.push_back(static_cast<Sector>(segment));
  }
  return spec;
}

}  // namespace nbsim
