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

#include "sslab/jacobi.hpp"

#include <cmath>
#include <string>

namespace sslab {

JacobiBasis::JacobiBasis(int J, double a, double b) : J_(J), a_(a), b_(b) {
  if (J < 1) throw DomainError("JacobiBasis: J must be >= 1");
  if (!(a > -1.0) || !(b > -1.0)) throw DomainError("JacobiBasis: need a, b > -1");

  alpha_.resize(J);
  beta_.resize(J);
  alpha_[0] = (b - a) / (a + b + 2.0);
  for (int k = 1; k < J; ++k) {
    const double s = 2.0 * k + a + b;
    alpha_[k] = (b * b - a * a) / (s * (s + 2.0));
  }
  beta0_ = std::exp((a + b + 1.0) * std::log(2.0) + std::lgamma(a + 1.0) + std::lgamma(b + 1.0) -
                    std::lgamma(a + b + 2.0));
  beta_[0] = 0.0;
  if (J > 1) {
    const double s = a + b + 2.0;
    beta_[1] = 4.0 * (a + 1.0) * (b + 1.0) / (s * s * (a + b + 3.0));
  }
  for (int k = 2; k < J; ++k) {
    const double s = 2.0 * k + a + b;
    beta_[k] = 4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0));
  }

  // Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal Jacobi
  // matrix, weights beta0 * (first eigenvector component)^2.
  Eigen::VectorXd off(J > 1 ? J - 1 : 0);
  for (int k = 1; k < J; ++k) off[k - 1] = std::sqrt(beta_[k]);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(alpha_, off);
  if (es.info() != Eigen::Success) throw NumericalError("JacobiBasis: tridiagonal eigensolve failed");
  nodes_ = es.eigenvalues();
  weights_.resize(J);
  for (int q = 0; q < J; ++q) {
    const double v0 = es.eigenvectors()(0, q);
    weights_[q] = beta0_ * v0 * v0;
  }

  P_ = values_at(nodes_);
  dP_.setZero(J, J);
  d2P_.setZero(J, J);
  if (J > 1) {
    const double sb1 = std::sqrt(beta_[1]);
    dP_.row(1).setConstant(P_(0, 0) / sb1);
  }
  for (int k = 1; k + 1 < J; ++k) {
    const double sb = std::sqrt(beta_[k]), sb1 = std::sqrt(beta_[k + 1]);
    for (int q = 0; q < J; ++q) {
      const double v = nodes_[q];
      dP_(k + 1, q) = ((v - alpha_[k]) * dP_(k, q) + P_(k, q) - sb * dP_(k - 1, q)) / sb1;
      d2P_(k + 1, q) = ((v - alpha_[k]) * d2P_(k, q) + 2.0 * dP_(k, q) - sb * d2P_(k - 1, q)) / sb1;
    }
  }
}

Eigen::MatrixXd JacobiBasis::values_at(const Eigen::VectorXd& v) const {
  const int Q = static_cast<int>(v.size());
  Eigen::MatrixXd P(J_, Q);
  P.row(0).setConstant(1.0 / std::sqrt(beta0_));
  if (J_ > 1) {
    const double sb1 = std::sqrt(beta_[1]);
    for (int q = 0; q < Q; ++q) P(1, q) = (v[q] - alpha_[0]) * P(0, q) / sb1;
  }
  for (int k = 1; k + 1 < J_; ++k) {
    const double sb = std::sqrt(beta_[k]), sb1 = std::sqrt(beta_[k + 1]);
    for (int q = 0; q < Q; ++q)
      P(k + 1, q) = ((v[q] - alpha_[k]) * P(k, q) - sb * P(k - 1, q)) / sb1;
  }
  return P;
}

Eigen::VectorXd JacobiBasis::apply_sturm(int j) const {
  if (j < 0 || j >= J_) throw DomainError("apply_sturm: order out of range");
  const Eigen::VectorXd& v = nodes_;
  Eigen::VectorXd out(J_);
  for (int q = 0; q < J_; ++q) {
    const double drift = (b_ - a_) - (a_ + b_ + 2.0) * v[q];
    out[q] = -4.0 * (1.0 - v[q] * v[q]) * d2P_(j, q) - 4.0 * drift * dP_(j, q);
  }
  return out;
}

Eigen::MatrixXd JacobiBasis::forward_transform() const {
  return P_ * weights_.asDiagonal();
}

}  // namespace sslab
