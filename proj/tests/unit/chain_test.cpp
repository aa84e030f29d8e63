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

#include "nbsim/chain.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "nbsim/errors.hpp"
#include "nbsim/metrics.hpp"

namespace nbsim {
namespace {

constexpr double kPi = std::numbers::pi;

// Homogeneous-matrix chain written from the module geometry alone: lift by
// r, tilt by theta about the horizontal axis normal to the azimuth, lift by r.
Eigen::Matrix4d oracle_fk(const RobotModel& model, const Eigen::VectorXd& q) {
  auto lift = [](double h) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(2, 3) = h;
    return m;
  };
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  int i = 0;
  for (const Segment& segment : model.segments()) {
    if (const auto* m = std::get_if<ModuleSegment>(&segment)) {
      const double q1 = q[i], q2 = q[i + 1];
      i += 2;
      const double phi = 0.5 * (q1 + q2 - kPi);
      const double theta = -2.0 * std::atan(std::tan(m->params.alpha) * std::sin(0.5 * (q1 - q2)));
      Eigen::Matrix4d tilt = Eigen::Matrix4d::Identity();
      tilt.topLeftCorner<3, 3>() =
          Eigen::AngleAxisd(theta, Eigen::Vector3d(-std::sin(phi), std::cos(phi), 0.0))
              .toRotationMatrix();
      t = t * lift(m->params.r) * tilt * lift(m->params.r);
    } else if (const auto* l = std::get_if<FixedLink>(&segment)) {
      t = t * lift(l->length);
    } else {
      const auto& j = std::get<RevoluteJoint>(segment);
      Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
      r.topLeftCorner<3, 3>() = Eigen::AngleAxisd(q[i++], j.axis).toRotationMatrix();
      t = t * r;
    }
  }
  return t * model.tool().matrix();
}

TEST(RobotModel, Rp120Structure) {
  const RobotModel& model = testing::rp120();
  EXPECT_EQ(model.module_count(), 10);
  EXPECT_EQ(model.dof(), 21);
  int revolute = 0;
  for (const Segment& s : model.segments()) revolute += std::holds_alternative<RevoluteJoint>(s);
  EXPECT_EQ(revolute, 1);
  EXPECT_GT(model.characteristic_length(), 0.0);
}

TEST(RobotModel, RejectsBadParameters) {
  EXPECT_THROW(RobotModel({}, RigidTransform::Identity(), 0.0), InvalidArgument);
  EXPECT_THROW(RobotModel({ModuleSegment{{0.1, 2.0}}}, RigidTransform::Identity(), 1.0),
               InvalidArgument);
  EXPECT_THROW(RobotModel({RevoluteJoint{Eigen::Vector3d::Zero()}}, RigidTransform::Identity(), 1.0),
               InvalidArgument);
  RigidTransform skew;
  skew.rotation(0, 1) = 0.5;
  EXPECT_THROW(RobotModel({}, skew, 1.0), InvalidArgument);
}

TEST(ForwardKinematics, StraightHeight) {
  const RigidTransform tcp = forward_kinematics(testing::rp120(), Eigen::VectorXd::Zero(21));
  EXPECT_NEAR(tcp.translation.z(), 1.9, 1e-12);
  EXPECT_NEAR(tcp.translation.head<2>().norm(), 0.0, 1e-15);
}

TEST(ForwardKinematics, MatchesHomogeneousOracle) {
  const RobotModel& model = testing::rp120();
  std::mt19937_64 rng(17);
  for (int k = 0; k < 200; ++k) {
    const Eigen::VectorXd q = testing::random_q(rng, model.dof());
    const Eigen::Matrix4d expected = oracle_fk(model, q);
    const RigidTransform tcp = forward_kinematics(model, q);
    EXPECT_LT((tcp.matrix() - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(is_rotation(tcp.rotation));
  }
}

TEST(ForwardKinematics, FramesEndAtTcp) {
  const RobotModel& model = testing::rp120();
  std::mt19937_64 rng(19);
  const Eigen::VectorXd q = testing::random_q(rng, model.dof());
  const auto frames = chain_frames(model, q);
  ASSERT_EQ(frames.size(), model.segments().size() + 2);
  EXPECT_LT((frames.back().matrix() - forward_kinematics(model, q).matrix()).norm(), 1e-14);
  EXPECT_TRUE(frames.front().matrix().isIdentity(0.0));
}

TEST(ForwardKinematics, DimensionMismatch) {
  EXPECT_THROW(forward_kinematics(testing::rp120(), Eigen::VectorXd::Zero(20)), DimensionMismatch);
  EXPECT_THROW(end_effector_jacobian(testing::rp120(), Eigen::VectorXd::Zero(3)), DimensionMismatch);
}

TEST(EndEffectorJacobian, MatchesFiniteDifferences) {
  const RobotModel& model = testing::rp120();
  auto pose = [&](const Eigen::VectorXd& q) { return forward_kinematics(model, q); };
  std::mt19937_64 rng(23);
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXd q = testing::random_q(rng, model.dof());
    const Matrix6Xd fd = testing::pose_jacobian_fd(pose, q, 1e-6);
    EXPECT_LT(testing::relative_error(end_effector_jacobian(model, q), fd), 1e-5);
  }
}

TEST(EndEffectorJacobian, PlanarArm) {
  const RobotModel arm = testing::planar_arm({1.0, 0.8, 0.5});
  auto pose = [&](const Eigen::VectorXd& q) { return forward_kinematics(arm, q); };
  const Eigen::Vector3d q(0.3, -0.7, 1.1);
  const Matrix6Xd j = end_effector_jacobian(arm, q);
  EXPECT_LT(testing::relative_error(j, testing::pose_jacobian_fd(pose, q, 1e-6)), 1e-8);
  EXPECT_LT(j.row(1).norm() + j.row(3).norm() + j.row(5).norm(), 1e-14);
}

TEST(WeightedJacobian, DividesLinearRows) {
  const RobotModel& model = testing::rp120();
  const Eigen::VectorXd q = Eigen::VectorXd::LinSpaced(21, -1.0, 1.0);
  const Matrix6Xd j = end_effector_jacobian(model, q);
  const Matrix6Xd jw = weighted_jacobian(model, q);
  EXPECT_LT((jw.topRows<3>() * model.characteristic_length() - j.topRows<3>()).norm(), 1e-14);
  EXPECT_EQ(jw.bottomRows<3>(), j.bottomRows<3>());
}

TEST(WeightedJacobian, DexterityIsScaleInvariant) {
  const RobotModel& model = testing::rp120();
  std::mt19937_64 rng(29);
  for (double factor : {0.1, 2.0, 7.5}) {
    const RobotModel big = model.scaled(factor);
    for (int k = 0; k < 20; ++k) {
      const Eigen::VectorXd q = testing::random_q(rng, model.dof());
      EXPECT_NEAR(dexterity(weighted_jacobian(big, q)).eta1,
                  dexterity(weighted_jacobian(model, q)).eta1, 1e-10);
    }
  }
}

TEST(JacobianPartials, SecondOrderConvergence) {
  const RobotModel& model = testing::rp120();
  std::mt19937_64 rng(31);
  for (int k = 0; k < 5; ++k) {
    const Eigen::VectorXd q = testing::random_q(rng, model.dof());
    const double h = 1e-2;
    const auto p1 = jacobian_partials(model, q, h);
    const auto p2 = jacobian_partials(model, q, h / 2.0);
    const auto p4 = jacobian_partials(model, q, h / 4.0);
    double d12 = 0.0, d24 = 0.0;
    for (int i = 0; i < model.dof(); ++i) {
      d12 += (p1[i] - p2[i]).squaredNorm();
      d24 += (p2[i] - p4[i]).squaredNorm();
    }
    EXPECT_NEAR(std::sqrt(d12 / d24), 4.0, 0.2);
  }
}

TEST(JacobianPartials, MixedPartialSymmetry) {
  const RobotModel& model = testing::rp120();
  std::mt19937_64 rng(37);
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd q = testing::random_q(rng, model.dof());
    const auto partials = jacobian_partials(model, q);
    for (int i = 0; i < model.dof(); ++i) {
      for (int j = 0; j < model.dof(); ++j) {
        EXPECT_NEAR(partials[i](0, j), partials[j](0, i), 1e-4);
        EXPECT_NEAR(partials[i](1, j), partials[j](1, i), 1e-4);
        EXPECT_NEAR(partials[i](2, j), partials[j](2, i), 1e-4);
      }
    }
  }
  EXPECT_THROW(jacobian_partials(model, Eigen::VectorXd::Zero(21), 0.0), InvalidArgument);
}

TEST(RotateAboutBase, RotatesWholePose) {
  const RobotModel& model = testing::rp120();
  std::mt19937_64 rng(41);
  for (int k = 0; k < 50; ++k) {
    const Eigen::VectorXd q = testing::random_q(rng, model.dof());
    const double angle = testing::uniform(rng, -kPi, kPi);
    const RigidTransform a = forward_kinematics(model, q);
    const RigidTransform b = forward_kinematics(model, rotate_about_base(model, q, angle));
    const RigidTransform expected = RigidTransform::Rotation(rotation_z(angle)) * a;
    EXPECT_LT((b.matrix() - expected.matrix()).cwiseAbs().maxCoeff(), 1e-12);
  }
  const RobotModel tilted({RevoluteJoint{Eigen::Vector3d::UnitX()}}, RigidTransform::Identity(), 1.0);
  EXPECT_THROW(rotate_about_base(tilted, Eigen::VectorXd::Zero(1), 0.1), InvalidArgument);
}

}  // namespace
}  // namespace nbsim
