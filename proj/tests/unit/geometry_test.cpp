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

#include "nbsim/geometry.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"

namespace nbsim {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(WrapAngle, MapsIntoHalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_angle(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3.0 * kPi / 2.0), -kPi / 2.0, 1e-15);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const double a = testing::uniform(rng, -50.0, 50.0);
    const double w = wrap_angle(a);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    EXPECT_NEAR(std::remainder(a - w, 2.0 * kPi), 0.0, 1e-12);
  }
}

TEST(AngleDifference, ShortestWay) {
  EXPECT_NEAR(angle_difference(kPi - 0.1, -kPi + 0.1), -0.2, 1e-12);
  EXPECT_NEAR(angle_difference(0.3, 0.1), 0.2, 1e-15);
}

TEST(RotationLog, RecoversAxisAngle) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Eigen::Vector3d axis(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1),
                         testing::uniform(rng, -1, 1));
    axis.normalize();
    const double angle = testing::uniform(rng, 0.0, kPi - 1e-6);
    const Eigen::Matrix3d r = Eigen::AngleAxisd(angle, axis).toRotationMatrix();
    EXPECT_LT((rotation_log(r) - angle * axis).norm(), 1e-9);
  }
  EXPECT_LT(rotation_log(Eigen::Matrix3d::Identity()).norm(), 1e-15);
}

TEST(RigidTransform, InverseAndComposition) {
  RigidTransform a{rotation_z(0.3) * rotation_x(-1.1), Eigen::Vector3d(1, -2, 0.5)};
  RigidTransform b{rotation_y(0.7), Eigen::Vector3d(0.1, 0.2, 0.3)};
  const RigidTransform id = a * a.inverse();
  EXPECT_TRUE(id.rotation.isIdentity(1e-14));
  EXPECT_LT(id.translation.norm(), 1e-14);
  const Eigen::Vector3d p(0.4, -0.5, 2.0);
  EXPECT_LT(((a * b) * p - a * (b * p)).norm(), 1e-14);
  EXPECT_LT((a.matrix() * b.matrix() - (a * b).matrix()).norm(), 1e-14);
}

TEST(IsRotation, RejectsReflectionsAndShear) {
  EXPECT_TRUE(is_rotation(rotation_x(0.2) * rotation_y(1.3)));
  Eigen::Matrix3d reflection = Eigen::Matrix3d::Identity();
  reflection(2, 2) = -1.0;
  EXPECT_FALSE(is_rotation(reflection));
  Eigen::Matrix3d shear = Eigen::Matrix3d::Identity();
  shear(0, 1) = 1e-6;
  EXPECT_FALSE(is_rotation(shear));
}

TEST(PoseError, ZeroOnTargetAndSignedOtherwise) {
  RigidTransform target{rotation_z(0.4), Eigen::Vector3d(1, 2, 3)};
  EXPECT_LT(pose_error(target, target).norm(), 1e-15);
  RigidTransform current{rotation_z(0.1), Eigen::Vector3d(1, 2, 2.5)};
  const Vector6d e = pose_error(target, current);
  EXPECT_NEAR(e[2], 0.5, 1e-15);
  EXPECT_NEAR(e[5], 0.3, 1e-12);
}

}  // namespace
}  // namespace nbsim
