// Copyright (c) 2026 The sslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSLAB_JACOBI_HPP
#define SSLAB_JACOBI_HPP

#include <Eigen/Dense>

#include "sslab/errors.hpp"

namespace sslab {

/// Orthonormal Jacobi family for the weight (1-v)^a (1+v)^b on [-1, 1],
/// together with the J-point Gauss-Jacobi rule (exact through degree 2J-1).
///
/// The polynomials are evaluated by the orthonormal three-term recurrence
///   sqrt(beta_{k+1}) p_{k+1} = (v - alpha_k) p_k - sqrt(beta_k) p_{k-1},
/// which stays well-scaled for orders up to around 128.
class JacobiBasis {
 public:
  /// Builds the rule and the value/derivative tables at the Gauss nodes.
  /// Throws DomainError for J < 1 or a, b <= -1.
  JacobiBasis(int J, double a, double b);

  int order() const { return J_; }
  double a() const { return a_; }
  double b() const { return b_; }
  /// Total weight integral beta_0 = int (1-v)^a (1+v)^b dv.
  double total_weight() const { return beta0_; }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }

  /// values(j, q) = p_j(v_q); orthonormal under the Gauss rule.
  const Eigen::MatrixXd& values() const { return P_; }
  const Eigen::MatrixXd& dvalues() const { return dP_; }
  const Eigen::MatrixXd& d2values() const { return d2P_; }

  /// Value table at arbitrary points (rows 0..J-1).
  Eigen::MatrixXd values_at(const Eigen::VectorXd& v) const;

  /// Sturm-Liouville eigenvalue of p_j: sigma_j = 4 j (j + a + b + 1).
  double sturm_eigenvalue(int j) const { return 4.0 * j * (j + a_ + b_ + 1.0); }

  /// Applies V = -4(1-v^2) d^2/dv^2 - 4[(b-a) - (a+b+2)v] d/dv to p_j at the
  /// Gauss nodes (drift written for this weight convention). Used by the
  /// eigen-residual checks.
  Eigen::VectorXd apply_sturm(int j) const;

  /// Forward transform matrix T with coefficients c = T * values-at-nodes,
  /// T = P * diag(weights). Exact inverse of evaluation for degree < J.
  Eigen::MatrixXd forward_transform() const;

  /// Recurrence coefficients (alpha_k diagonal, beta_k off-diagonal squares).
  const Eigen::VectorXd& rec_alpha() const { return alpha_; }
  const Eigen::VectorXd& rec_beta() const { return beta_; }

 private:
  int J_;
  double a_, b_, beta0_;
  Eigen::VectorXd alpha_, beta_;  // recurrence coefficients, beta_[0] unused
  Eigen::VectorXd nodes_, weights_;
  Eigen::MatrixXd P_, dP_, d2P_;
};

}  // namespace sslab

#endif  // SSLAB_JACOBI_HPP
