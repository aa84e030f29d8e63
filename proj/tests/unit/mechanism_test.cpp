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

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

constexpr double kPi = std::numbers::pi;
const ModuleParams kModule{0.07, kPi / 12.0};

double pose_distance(const RigidTransform& a, const RigidTransform& b) {
  return (a.translation - b.translation).norm() + (a.rotation - b.rotation).norm();
}

TEST(ModuleParams, Validation) {
  EXPECT_NO_THROW(kModule.validate());
  EXPECT_THROW((ModuleParams{0.0, 0.2}.validate()), InvalidArgument);
  EXPECT_THROW((ModuleParams{-1.0, 0.2}.validate()), InvalidArgument);
  EXPECT_THROW((ModuleParams{0.1, 0.0}.validate()), InvalidArgument);
  EXPECT_THROW((ModuleParams{0.1, kPi / 2.0}.validate()), InvalidArgument);
  EXPECT_DOUBLE_EQ(kModule.max_tilt(), kPi / 6.0);
}

TEST(ActuatorToTiltAzimuth, StraightWhenMotorsAgree) {
  for (double q : {-2.0, 0.0, 0.5, 3.0}) {
    const TiltAzimuth a = actuator_to_tilt_azimuth({q, q}, kModule);
    EXPECT_EQ(a.theta, 0.0);
    EXPECT_NEAR(angle_difference(a.phi, q - kPi / 2.0), 0.0, 1e-15);
  }
}

TEST(ActuatorToTiltAzimuth, MaximumTiltAtOpposedMotors) {
  const TiltAzimuth a = actuator_to_tilt_azimuth({0.0, kPi}, kModule);
  EXPECT_NEAR(std::abs(a.theta), 2.0 * kModule.alpha, 1e-14);
  const TiltAzimuth b = actuator_to_tilt_azimuth({kPi / 2.0, -kPi / 2.0}, kModule);
  EXPECT_NEAR(b.theta, -2.0 * kModule.alpha, 1e-14);
}

TEST(ActuatorToTiltAzimuth, RangeProperty) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 5000; ++i) {
    const ActuatorAngles q{testing::uniform(rng, -10, 10), testing::uniform(rng, -10, 10)};
    const TiltAzimuth a = actuator_to_tilt_azimuth(q, kModule);
    EXPECT_GE(a.phi, -kPi);
    EXPECT_LE(a.phi, kPi);
    EXPECT_LE(std::abs(a.theta), 2.0 * kModule.alpha + 1e-15);
  }
}

TEST(TiltAzimuthToActuator, MaxTiltPrimaryBranch) {
  for (double phi0 : {-1.0, 0.0, 0.7, 2.5}) {
    const auto [primary, secondary] =
        tilt_azimuth_to_actuator({phi0, 2.0 * kModule.alpha}, kModule);
    EXPECT_NEAR(angle_difference(primary.q1, phi0), 0.0, 1e-12);
    EXPECT_NEAR(angle_difference(primary.q2, phi0 + kPi), 0.0, 1e-12);
    (void)secondary;
  }
}

TEST(TiltAzimuthToActuator, StraightBranchesCoincide) {
  const auto [a, b] = tilt_azimuth_to_actuator({0.3, 0.0}, kModule);
  EXPECT_DOUBLE_EQ(a.q1, b.q1);
  EXPECT_DOUBLE_EQ(a.q2, b.q2);
  EXPECT_NEAR(a.q1, 0.3 + kPi / 2.0, 1e-15);
  EXPECT_EQ(a.q1, a.q2);
}

TEST(TiltAzimuthToActuator, RejectsExcessTilt) {
  EXPECT_THROW(tilt_azimuth_to_actuator({0.0, 2.0 * kModule.alpha + 1e-6}, kModule),
               TiltOutOfRange);
  EXPECT_THROW(tilt_azimuth_to_actuator({0.0, -1.0}, kModule), TiltOutOfRange);
  EXPECT_NO_THROW(tilt_azimuth_to_actuator({0.0, 2.0 * kModule.alpha + 1e-12}, kModule));
}

TEST(TiltAzimuthToActuator, RandomRoundTripKeepsPose) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const ActuatorAngles q{testing::uniform(rng, -kPi, kPi), testing::uniform(rng, -kPi, kPi)};
    const RigidTransform pose = module_transform(q, kModule);
    const auto branches = tilt_azimuth_to_actuator(actuator_to_tilt_azimuth(q, kModule), kModule);
    EXPECT_LT(pose_distance(module_transform(branches.first, kModule), pose), 1e-9);
    EXPECT_LT(pose_distance(module_transform(branches.second, kModule), pose), 1e-9);
    const ActuatorAngles back = closest_branch(branches, q);
    EXPECT_LT(std::abs(angle_difference(back.q1, q.q1)) + std::abs(angle_difference(back.q2, q.q2)),
              1e-9);
  }
}

TEST(TiltAzimuthToActuator, GridInverse) {
  const int n = 50;
  const double limit = 2.0 * kModule.alpha;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const TiltAzimuth a{-kPi + 2.0 * kPi * i / (n - 1), -limit + 2.0 * limit * j / (n - 1)};
      const RigidTransform pose = module_transform(a, kModule);
      const auto [p, s] = tilt_azimuth_to_actuator(a, kModule);
      for (const ActuatorAngles& q : {p, s}) {
        EXPECT_LT(pose_distance(module_transform(q, kModule), pose), 1e-9);
        // (phi, theta) and (phi + pi, -theta) name the same pose.
        const TiltAzimuth back = actuator_to_tilt_azimuth(q, kModule);
        const bool flipped = std::abs(angle_difference(back.phi, a.phi)) > kPi / 2.0;
        EXPECT_NEAR(flipped ? -back.theta : back.theta, a.theta, 1e-9);
        if (a.theta != 0.0) {
          EXPECT_NEAR(angle_difference(back.phi + (flipped ? kPi : 0.0), a.phi), 0.0, 1e-9);
        }
      }
    }
  }
}

TEST(ModuleTransform, ZeroTorsionAxisAngle) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double phi = testing::uniform(rng, -kPi, kPi);
    const double theta = testing::uniform(rng, -2.0 * kModule.alpha, 2.0 * kModule.alpha);
    const RigidTransform t = module_transform(TiltAzimuth{phi, theta}, kModule);
    const Eigen::Vector3d expected = theta * Eigen::Vector3d(-std::sin(phi), std::cos(phi), 0.0);
    EXPECT_LT((rotation_log(t.rotation) - expected).norm(), 1e-12);
    EXPECT_TRUE(is_rotation(t.rotation));
  }
}

TEST(ModuleTransform, StraightHeightIsTwiceHalfHeight) {
  const RigidTransform t = module_transform(TiltAzimuth{0.4, 0.0}, kModule);
  EXPECT_TRUE(t.rotation.isIdentity(0.0));
  EXPECT_DOUBLE_EQ(t.translation.z(), 2.0 * kModule.r);
}

TEST(ModuleJacobians, ProductStructure) {
  const ModuleJacobians j = module_jacobians({0.3, -1.2}, kModule);
  EXPECT_LT((j.j - j.j1 * j.j2).norm(), 1e-15);
}

TEST(ModuleJacobians, MatchesFiniteDifferences) {
  std::mt19937_64 rng(13);
  auto pose = [](const Eigen::VectorXd& q) {
    return module_transform(ActuatorAngles{q[0], q[1]}, kModule);
  };
  for (int i = 0; i < 300; ++i) {
    const Eigen::VectorXd q = testing::random_q(rng, 2);
    const Matrix6Xd fd = testing::pose_jacobian_fd(pose, q, 1e-6);
    const ModuleJacobians j = module_jacobians({q[0], q[1]}, kModule);
    EXPECT_LT(testing::relative_error(j.j, fd), 1e-5) << "q = " << q.transpose();
  }
}

TEST(ModuleWorkspace, MaxTiltWithinGridResolution) {
  const int grid = 100;
  const auto samples = module_workspace(kModule, grid);
  ASSERT_EQ(samples.size(), static_cast<std::size_t>(grid * grid));
  double max_tilt = 0.0;
  for (const auto& s : samples) max_tilt = std::max(max_tilt, std::abs(s.angles.theta));
  // Tilt lost by missing the opposed-motor point by half a grid step.
  const double step = 2.0 * kPi / (grid - 1);
  const double resolution =
      2.0 * kModule.alpha -
      std::abs(actuator_to_tilt_azimuth({0.0, kPi - step}, kModule).theta);
  EXPECT_LE(max_tilt, 2.0 * kModule.alpha + 1e-15);
  EXPECT_GE(max_tilt, 2.0 * kModule.alpha - resolution);
  EXPECT_THROW(module_workspace(kModule, 1), InvalidArgument);
}

}  // namespace
}  // namespace nbsim
