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

#include <vector>

#include <Eigen/Core>

#include "nbsim/geometry.hpp"

// Kinetostatic performance metrics of a weighted Jacobian J_w and their
// gradients with respect to the joint coordinates.
//
//   dexterity  eta1 = m / (gamma1 * gamma2)
//              gamma1 = sqrt(tr(J_w J_w^T)),  gamma2 = sqrt(tr((J_w J_w^T)^-1))
//   RTR        eta2 = |w^T t| / (||J_w^T w|| ||J_w^+ t||)
//   combined   eta  = lambda1 * eta1 + lambda2 * eta2
//
// Gradients take the slices d(J_w)/d(q_i) (see jacobian_partials()).

namespace nbsim {

inline constexpr double kDefaultSingularFloor = 1e-12;

struct Dexterity {
  double eta1 = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

struct MetricSample {
  double eta1 = 0.0;
  double eta2 = 0.0;
  double eta = 0.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
};

struct MetricGradient {
  Eigen::VectorXd d_eta1;
  Eigen::VectorXd d_eta2;
};

/// Frobenius-norm dexterity. Throws SingularJacobian when the smallest
/// eigenvalue of J_w J_w^T is not above `floor`.
Dexterity dexterity(const Eigen::MatrixXd& jw, double floor = kDefaultSingularFloor);

Eigen::VectorXd dexterity_gradient(const Eigen::MatrixXd& jw,
                                   const std::vector<Matrix6Xd>& partials,
                                   double floor = kDefaultSingularFloor);
Eigen::VectorXd dexterity_gradient(const Eigen::MatrixXd& jw,
                                   const std::vector<Eigen::MatrixXd>& partials,
                                   double floor = kDefaultSingularFloor);

// Homogenized twist/wrench: linear velocity and moment divided by L.
Vector6d homogenized_twist(const Twist& twist, double characteristic_length);
Vector6d homogenized_wrench(const Wrench& wrench, double characteristic_length);

/// Robot transmission ratio. Throws DegenerateInput when ||J_w^T w|| or
/// ||J_w^+ t|| is not above `floor`.
double rtr(const Eigen::MatrixXd& jw, const Twist& twist, const Wrench& wrench,
           double characteristic_length, double floor = kDefaultSingularFloor);

Eigen::VectorXd rtr_gradient(const Eigen::MatrixXd& jw,
                             const std::vector<Matrix6Xd>& partials, const Twist& twist,
                             const Wrench& wrench, double characteristic_length,
                             double floor = kDefaultSingularFloor);

/// Throws BadWeights unless both weights are >= 0 and sum to 1.
double combined_score(double eta1, double eta2, double lambda1 = 0.5, double lambda2 = 0.5);

// SVD pseudo-inverse; singular values at or below `floor` are dropped.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& m, double floor = kDefaultSingularFloor);

// d(J^+) for a perturbation dJ, three-term form
//   -J^+ dJ J^+ + J^+ J^+^T dJ^T (I - J J^+) + (I - J^+ J) dJ^T J^+^T J^+.
Eigen::MatrixXd pseudo_inverse_derivative(const Eigen::MatrixXd& j,
                                          const Eigen::MatrixXd& j_pinv,
                                          const Eigen::MatrixXd& dj);

MetricSample evaluate_metrics(const Eigen::MatrixXd& jw, const Twist& twist,
                              const Wrench& wrench, double characteristic_length,
                              double lambda1 = 0.5, double lambda2 = 0.5);

}  // namespace nbsim
