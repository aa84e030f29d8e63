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
#include <string>
#include <type_traits>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dimension(const RobotModel& model, const Eigen::VectorXd& q) {
  if (q.size() != model.dof()) {
    throw DimensionMismatch("joint vector has " + std::to_string(q.size()) +
                            " entries, model expects " + std::to_string(model.dof()));
  }
}

// Local transform of one segment given its slice of the joint vector.
RigidTransform segment_transform(const Segment& segment, const Eigen::VectorXd& q, int offset) {
  return std::visit(
      Overloaded{
          [&](const ModuleSegment& m) {
            return module_transform(ActuatorAngles{q[offset], q[offset + 1]}, m.params);
          },
          [](const FixedLink& l) {
            return RigidTransform::Translation(Eigen::Vector3d(0.0, 0.0, l.length));
          },
          [&](const RevoluteJoint& j) {
            return RigidTransform::Rotation(
                Eigen::AngleAxisd(q[offset], j.axis).toRotationMatrix());
          },
      },
      segment);
}

}  // namespace

RobotModel::RobotModel(std::vector<Segment> segments, RigidTransform tool,
                       double characteristic_length)
    : segments_(std::move(segments)),
      tool_(std::move(tool)),
      characteristic_length_(characteristic_length) {
  if (!(characteristic_length_ > 0.0)) {
    throw InvalidArgument("characteristic length must be positive");
  }
  if (!is_rotation(tool_.rotation, 1e-9)) {
    throw InvalidArgument("tool rotation is not orthonormal");
  }
  offsets_.reserve(segments_.size());
  for (auto& segment : segments_) {
    std::visit(Overloaded{
                   [&](const ModuleSegment& m) {
                     m.params.validate();
                     offsets_.push_back(dof_);
                     dof_ += 2;
                   },
                   [&](const FixedLink&) { offsets_.push_back(-1); },
                   [&](RevoluteJoint& j) {
                     double norm = j.axis.norm();
                     if (!(norm > 0.0)) throw InvalidArgument("revolute axis must be nonzero");
                     j.axis /= norm;
                     offsets_.push_back(dof_);
                     dof_ += 1;
                   },
               },
               segment);
  }
}

int RobotModel::module_count() const {
  int count = 0;
  for (const auto& s : segments_) count += std::holds_alternative<ModuleSegment>(s) ? 1 : 0;
  return count;
}

RobotModel RobotModel::scaled(double factor) const {
  std::vector<Segment> segments = segments_;
  for (auto& s : segments) {
    if (auto* m = std::get_if<ModuleSegment>(&s)) m->params.r *= factor;
    if (auto* l = std::get_if<FixedLink>(&s)) l->length *= factor;
  }
  RigidTransform tool = tool_;
  tool.translation *= factor;
  return RobotModel(std::move(segments), tool, characteristic_length_ * factor);
}

std::vector<RigidTransform> chain_frames(const RobotModel& model, const Eigen::VectorXd& q) {
  check_dimension(model, q);
  std::vector<RigidTransform> frames;
  frames.reserve(model.segments().size() + 2);
  RigidTransform current;
  for (std::size_t k = 0; k < model.segments().size(); ++k) {
    frames.push_back(current);
    current = current * segment_transform(model.segments()[k], q, model.coordinate_offsets()[k]);
  }
  frames.push_back(current);
  frames.push_back(current * model.tool());
  return frames;
}

RigidTransform forward_kinematics(const RobotModel& model, const Eigen::VectorXd& q) {
  check_dimension(model, q);
  RigidTransform current;
  for (std::size_t k = 0; k < model.segments().size(); ++k) {
    current = current * segment_transform(model.segments()[k], q, model.coordinate_offsets()[k]);
  }
  return current * model.tool();
}

Kinematics evaluate_kinematics(const RobotModel& model, const Eigen::VectorXd& q) {
  check_dimension(model, q);
  const auto& segments = model.segments();
  const auto& offsets = model.coordinate_offsets();

  // Columns are first stored as (point velocity of a reference origin,
  // angular velocity) in the world frame, then shifted to the TCP.
  Matrix6Xd jac(6, model.dof());
  std::vector<Eigen::Vector3d> reference(model.dof());

  RigidTransform current;
  for (std::size_t k = 0; k < segments.size(); ++k) {
    const int offset = offsets[k];
    if (const auto* m = std::get_if<ModuleSegment>(&segments[k])) {
      ActuatorAngles qa{q[offset], q[offset + 1]};
      ModuleJacobians mj = module_jacobians(qa, m->params);
      RigidTransform end = current * module_transform(qa, m->params);
      for (int c = 0; c < 2; ++c) {
        jac.col(offset + c).head<3>() = current.rotation * mj.j.col(c).head<3>();
        jac.col(offset + c).tail<3>() = current.rotation * mj.j.col(c).tail<3>();
        reference[offset + c] = end.translation;
      }
      current = end;
    } else if (const auto* j = std::get_if<RevoluteJoint>(&segments[k])) {
      jac.col(offset).head<3>().setZero();
      jac.col(offset).tail<3>() = current.rotation * j->axis;
      reference[offset] = current.translation;
      current = current * segment_transform(segments[k], q, offset);
    } else {
      current = current * segment_transform(segments[k], q, offset);
    }
  }

  Kinematics out;
  out.tcp = current * model.tool();
  for (int c = 0; c < model.dof(); ++c) {
    Eigen::Vector3d omega = jac.col(c).tail<3>();
    jac.col(c).head<3>() += omega.cross(out.tcp.translation - reference[c]);
  }
  out.jacobian = std::move(jac);
  return out;
}

Matrix6Xd end_effector_jacobian(const RobotModel& model, const Eigen::VectorXd& q) {
  return evaluate_kinematics(model, q).jacobian;
}

Matrix6Xd weight_jacobian(const Matrix6Xd& jacobian, double characteristic_length) {
  Matrix6Xd out = jacobian;
  out.topRows<3>() /= characteristic_length;
  return out;
}

Matrix6Xd weighted_jacobian(const RobotModel& model, const Eigen::VectorXd& q) {
  return weight_jacobian(end_effector_jacobian(model, q), model.characteristic_length());
}

std::vector<Matrix6Xd> jacobian_partials(const RobotModel& model, const Eigen::VectorXd& q,
                                         double step) {
  check_dimension(model, q);
  if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  std::vector<Matrix6Xd> slices;
  slices.reserve(model.dof());
  Eigen::VectorXd probe = q;
  for (int i = 0; i < model.dof(); ++i) {
    probe[i] = q[i] + step;
    Matrix6Xd plus = weighted_jacobian(model, probe);
    probe[i] = q[i] - step;
    Matrix6Xd minus = weighted_jacobian(model, probe);
    probe[i] = q[i];
    slices.push_back((plus - minus) / (2.0 * step));
  }
  return slices;
}

Eigen::VectorXd rotate_about_base(const RobotModel& model, const Eigen::VectorXd& q,
                                  double angle) {
  check_dimension(model, q);
  Eigen::VectorXd out = q;
  const auto& offsets = model.coordinate_offsets();
  // Rz(a) X Rz(-a) commutes through modules and z links; the first z
  // revolute absorbs the trailing Rz(-a).
  for (std::size_t k = 0; k < model.segments().size(); ++k) {
    const Segment& segment = model.segments()[k];
    const int i = offsets[k];
    if (std::holds_alternative<ModuleSegment>(segment)) {
      out[i] = wrap_angle(q[i] + angle);
      out[i + 1] = wrap_angle(q[i + 1] + angle);
    } else if (const auto* joint = std::get_if<RevoluteJoint>(&segment)) {
      if (!joint->axis.isApprox(Eigen::Vector3d::UnitZ())) {
        throw InvalidArgument("rotation about the base needs revolute joints about z");
      }
      out[i] = wrap_angle(q[i] + angle);
      break;
    }
  }
  return out;
}

}  // namespace nbsim
