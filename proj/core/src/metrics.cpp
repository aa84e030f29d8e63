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

#include "nbsim/metrics.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "nbsim/errors.hpp"

namespace nbsim {
namespace {

struct GramInverse {
  Eigen::MatrixXd inverse;  // (J J^T)^-1
  double trace = 0.0;       // tr(J J^T)
  double inverse_trace = 0.0;
};

GramInverse gram_inverse(const Eigen::MatrixXd& jw, double floor) {
  Eigen::MatrixXd gram = jw * jw.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const Eigen::VectorXd& lambda = eig.eigenvalues();
  if (!(lambda.minCoeff() > floor)) {
    throw SingularJacobian("J_w J_w^T smallest eigenvalue " + std::to_string(lambda.minCoeff()) +
                           " is below the singularity floor");
  }
  GramInverse out;
  Eigen::VectorXd inv = lambda.cwiseInverse();
  out.inverse = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
  out.trace = lambda.sum();
  out.inverse_trace = inv.sum();
  return out;
}

template <class Slice>
Eigen::VectorXd dexterity_gradient_impl(const Eigen::MatrixXd& jw,
                                        const std::vector<Slice>& partials, double floor) {
  if (static_cast<Eigen::Index>(partials.size()) != jw.cols()) {
    throw DimensionMismatch("expected one Jacobian slice per joint");
  }
  GramInverse g = gram_inverse(jw, floor);
  const double gamma1 = std::sqrt(g.trace);
  const double gamma2 = std::sqrt(g.inverse_trace);
  const double eta1 = static_cast<double>(jw.rows()) / (gamma1 * gamma2);
  // d tr(A^-1) = -tr(A^-1 dA A^-1) with dA = dJ J^T + J dJ^T, which reduces
  // to -2 tr(A^-2 J dJ^T).
  const Eigen::MatrixXd a2j = g.inverse * g.inverse * jw;
  Eigen::VectorXd grad(jw.cols());
  for (Eigen::Index i = 0; i < jw.cols(); ++i) {
    const auto& dj = partials[i];
    const double d_gamma1 = jw.cwiseProduct(dj).sum() / gamma1;
    const double d_gamma2 = -a2j.cwiseProduct(dj).sum() / gamma2;
    grad[i] = -eta1 * (d_gamma1 / gamma1 + d_gamma2 / gamma2);
  }
  return grad;
}

}  // namespace

Dexterity dexterity(const Eigen::MatrixXd& jw, double floor) {
  GramInverse g = gram_inverse(jw, floor);
  Dexterity out;
  out.gamma1 = std::sqrt(g.trace);
  out.gamma2 = std::sqrt(g.inverse_trace);
  out.eta1 = static_cast<double>(jw.rows()) / (out.gamma1 * out.gamma2);
  return out;
}

Eigen::VectorXd dexterity_gradient(const Eigen::MatrixXd& jw,
                                   const std::vector<Matrix6Xd>& partials, double floor) {
  return dexterity_gradient_impl(jw, partials, floor);
}

Eigen::VectorXd dexterity_gradient(const Eigen::MatrixXd& jw,
                                   const std::vector<Eigen::MatrixXd>& partials,
                                   double floor) {
  return dexterity_gradient_impl(jw, partials, floor);
}

Vector6d homogenized_twist(const Twist& twist, double characteristic_length) {
  Vector6d t;
  t << twist.linear / characteristic_length, twist.angular;
  return t;
}

Vector6d homogenized_wrench(const Wrench& wrench, double characteristic_length) {
  Vector6d w;
  w << wrench.force, wrench.moment / characteristic_length;
  return w;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double floor) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd inv = svd.singularValues();
  for (Eigen::Index k = 0; k < inv.size(); ++k) inv[k] = inv[k] > floor ? 1.0 / inv[k] : 0.0;
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

Eigen::MatrixXd pseudo_inverse_derivative(const Eigen::MatrixXd& j,
                                          const Eigen::MatrixXd& j_pinv,
                                          const Eigen::MatrixXd& dj) {
  const Eigen::Index rows = j.rows(), cols = j.cols();
  Eigen::MatrixXd range_residual = Eigen::MatrixXd::Identity(rows, rows) - j * j_pinv;
  Eigen::MatrixXd null_projector = Eigen::MatrixXd::Identity(cols, cols) - j_pinv * j;
  return -j_pinv * dj * j_pinv +
         j_pinv * j_pinv.transpose() * dj.transpose() * range_residual +
         null_projector * dj.transpose() * j_pinv.transpose() * j_pinv;
}

double rtr(const Eigen::MatrixXd& jw, const Twist& twist, const Wrench& wrench,
           double characteristic_length, double floor) {
  const Vector6d t = homogenized_twist(twist, characteristic_length);
  const Vector6d w = homogenized_wrench(wrench, characteristic_length);
  const double torque_norm = (jw.transpose() * w).norm();
  const double rate_norm = (pseudo_inverse(jw, floor) * t).norm();
  if (!(torque_norm > floor) || !(rate_norm > floor)) {
    throw DegenerateInput("transmission ratio undefined for zero joint torque or rate");
  }
  return std::abs(w.dot(t)) / (torque_norm * rate_norm);
}

Eigen::VectorXd rtr_gradient(const Eigen::MatrixXd& jw,
                             const std::vector<Matrix6Xd>& partials, const Twist& twist,
                             const Wrench& wrench, double characteristic_length,
                             double floor) {
  if (static_cast<Eigen::Index>(partials.size()) != jw.cols()) {
    throw DimensionMismatch("expected one Jacobian slice per joint");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jw, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  if (sigma.size() < jw.rows() || !(sigma.minCoeff() > floor)) {
    throw SingularJacobian("J_w is not full row rank");
  }
  const Eigen::MatrixXd pinv =
      svd.matrixV() * sigma.cwiseInverse().asDiagonal() * svd.matrixU().transpose();

  const Vector6d t = homogenized_twist(twist, characteristic_length);
  const Vector6d w = homogenized_wrench(wrench, characteristic_length);
  const Eigen::VectorXd u = jw.transpose() * w;  // joint torque direction
  const Eigen::VectorXd v = pinv * t;            // joint rate direction
  const double uu = u.squaredNorm(), vv = v.squaredNorm();
  if (!(std::sqrt(uu) > floor) || !(std::sqrt(vv) > floor)) {
    throw DegenerateInput("transmission ratio undefined for zero joint torque or rate");
  }
  const double eta2 = std::abs(w.dot(t)) / std::sqrt(uu * vv);

  // Matrix-vector form of the pseudo-inverse derivative applied to t.
  const Eigen::VectorXd t_residual = t - jw * v;
  const Eigen::VectorXd pinv_t_v = pinv.transpose() * v;
  Eigen::VectorXd grad(jw.cols());
  for (Eigen::Index i = 0; i < jw.cols(); ++i) {
    const Matrix6Xd& dj = partials[i];
    const double u_du = u.dot(dj.transpose() * w);
    Eigen::VectorXd z = dj.transpose() * pinv_t_v;
    Eigen::VectorXd dv = -pinv * (dj * v) + pinv * (pinv.transpose() * (dj.transpose() * t_residual)) +
                         z - pinv * (jw * z);
    grad[i] = -eta2 * (u_du / uu + v.dot(dv) / vv);
  }
  return grad;
}

double combined_score(double eta1, double eta2, double lambda1, double lambda2) {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || std::abs(lambda1 + lambda2 - 1.0) > 1e-12) {
    throw BadWeights("metric weights must be non-negative and sum to one");
  }
  return lambda1 * eta1 + lambda2 * eta2;
}

MetricSample evaluate_metrics(const Eigen::MatrixXd& jw, const Twist& twist,
                              const Wrench& wrench, double characteristic_length,
                              double lambda1, double lambda2) {
  Dexterity d = dexterity(jw);
  MetricSample s;
  s.eta1 = d.eta1;
  s.gamma1 = d.gamma1;
  s.gamma2 = d.gamma2;
  s.eta2 = rtr(jw, twist, wrench, characteristic_length);
  s.eta = combined_score(s.eta1, s.eta2, lambda1, lambda2);
  return s;
}

}  // namespace nbsim
