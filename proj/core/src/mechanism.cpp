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

#include "nbsim/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundaryTolerance = 1e-9;

}  // namespace

void ModuleParams::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InvalidArgument("module half-height r must be positive, got " + std::to_string(r));
  }
  if (!(alpha > 0.0 && alpha < kPi / 2.0)) {
    throw InvalidArgument("module slope alpha must lie in (0, pi/2), got " +
                          std::to_string(alpha));
  }
}

TiltAzimuth actuator_to_tilt_azimuth(const ActuatorAngles& q, const ModuleParams& p) {
  const double t = std::tan(p.alpha);
  const double s = std::sin(0.5 * (q.q1 - q.q2));
  TiltAzimuth out;
  out.phi = wrap_angle(0.5 * (q.q1 + q.q2 - kPi));
  out.theta = std::atan2(-2.0 * t * s, 1.0 - t * t * s * s);
  return out;
}

std::pair<ActuatorAngles, ActuatorAngles> tilt_azimuth_to_actuator(const TiltAzimuth& a,
                                                                   const ModuleParams& p) {
  const double limit = p.max_tilt();
  if (std::abs(a.theta) > limit + kBoundaryTolerance) {
    throw TiltOutOfRange("tilt " + std::to_string(a.theta) + " exceeds the module limit " +
                         std::to_string(limit));
  }
  if (a.theta == 0.0) {
    ActuatorAngles q{wrap_angle(a.phi + kPi / 2.0), wrap_angle(a.phi + kPi / 2.0)};
    return {q, q};
  }
  // -cos(a)(cos(t) - 1) / (sin(a) sin(t)) == tan(t/2) / tan(a)
  double arg = std::tan(0.5 * a.theta) / std::tan(p.alpha);
  arg = std::clamp(arg, -1.0, 1.0);
  const double beta = std::acos(arg);
  ActuatorAngles primary{wrap_angle(a.phi + beta), wrap_angle(a.phi - beta + kPi)};
  ActuatorAngles secondary{wrap_angle(a.phi - beta), wrap_angle(a.phi + beta + kPi)};
  return {primary, secondary};
}

ActuatorAngles closest_branch(const std::pair<ActuatorAngles, ActuatorAngles>& branches,
                              const ActuatorAngles& current) {
  auto distance = [&](const ActuatorAngles& q) {
    return std::abs(angle_difference(q.q1, current.q1)) +
           std::abs(angle_difference(q.q2, current.q2));
  };
  return distance(branches.second) < distance(branches.first) ? branches.second
                                                              : branches.first;
}

RigidTransform module_transform(const TiltAzimuth& a, const ModuleParams& p) {
  const double cp = std::cos(a.phi), sp = std::sin(a.phi);
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  RigidTransform out;
  out.rotation << cp * cp * ct + sp * sp, cp * sp * (ct - 1.0), cp * st,
                  sp * cp * (ct - 1.0),   sp * sp * ct + cp * cp, sp * st,
                  -st * cp,               -st * sp,               ct;
  out.translation << p.r * st * cp, p.r * st * sp, p.r + p.r * ct;
  return out;
}

RigidTransform module_transform(const ActuatorAngles& q, const ModuleParams& p) {
  return module_transform(actuator_to_tilt_azimuth(q, p), p);
}

ModuleJacobians module_jacobians(const ActuatorAngles& q, const ModuleParams& p) {
  const TiltAzimuth a = actuator_to_tilt_azimuth(q, p);
  const double cp = std::cos(a.phi), sp = std::sin(a.phi);
  const double ct = std::cos(a.theta), st = std::sin(a.theta);
  const double r = p.r;

  ModuleJacobians out;
  out.j1 << -r * sp * st, r * cp * ct,
             r * cp * st, r * sp * ct,
             0.0,         -r * st,
            -cp * st,     -sp,
            -sp * st,      cp,
             1.0 - ct,     0.0;

  const double t = std::tan(p.alpha);
  const double half = 0.5 * (q.q1 - q.q2);
  const double s = std::sin(half);
  out.c = 2.0 * t * std::cos(half) / (1.0 + t * t * s * s);
  out.j2 << 0.5, 0.5,
            -0.5 * out.c, 0.5 * out.c;
  out.j = out.j1 * out.j2;
  return out;
}

std::vector<WorkspaceSample> module_workspace(const ModuleParams& p, int grid) {
  if (grid < 2) throw InvalidArgument("workspace grid must be at least 2");
  std::vector<WorkspaceSample> samples;
  samples.reserve(static_cast<std::size_t>(grid) * grid);
  const double step = 2.0 * kPi / (grid - 1);
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      WorkspaceSample s;
      s.q = {-kPi + i * step, -kPi + j * step};
      s.angles = actuator_to_tilt_azimuth(s.q, p);
      s.position = module_transform(s.angles, p).translation;
      samples.push_back(s);
    }
  }
  return samples;
}

}  // namespace nbsim
