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

#ifndef SSLAB_TAYLOR_HPP
#define SSLAB_TAYLOR_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "sslab/errors.hpp"
#include "sslab/util.hpp"

namespace sslab {

/// Finite weighted measure space: atoms with positive masses. The second
/// order expansion of ||f + eps psi||_p^2 holds verbatim on such spaces, and
/// every integral below is a finite sum, so the bound checks carry no
/// quadrature error.
struct WeightedSpace {
  Eigen::VectorXd weights;

  explicit WeightedSpace(Eigen::VectorXd w);
  int dim() const { return static_cast<int>(weights.size()); }

  double integral(const Eigen::VectorXd& f) const { return weights.dot(f); }
  double lp(const Eigen::VectorXcd& f, double p) const;
  double lp(const Eigen::VectorXd& f, double p) const;
};

/// Duality map D_p(f) = ||f||_p^{1-p} |f|^{p-2} conj(f); lands on the unit
/// sphere of L^{p'}. Throws NullField for f = 0.
Eigen::VectorXcd duality_map(const Eigen::VectorXcd& f, double p, const WeightedSpace& sp);

/// Remainder constants of the second-order expansion.
struct TaylorConstants {
  double beta = 0;
  double kappa = 0;
  /// At p = 4 the two branches overlap with different constants; both are
  /// valid upper bounds, kappa holds the smaller and both are recorded here.
  double kappa_high_branch = 0;  // (4/3)(5p^2 - 12p + 7), p >= 4
  double kappa_low_branch = 0;   // 16(p-1)/(p(p+2)) [4(p-2) + (3p/(p-2))^{p/2-1}], 2 < p <= 4
};

/// beta_p and kappa_p per the expansion theorem. Throws DomainError for p <= 2.
TaylorConstants taylor_constants(double p);

/// The block operator L = L^Re (+) L^Im at a real unit vector f:
///   L^Re xi = -(p-2) (int f |f|^{p-2} xi) f |f|^{p-2} + (p-1) |f|^{p-2} xi
///   L^Im eta = |f|^{p-2} eta.
/// Requires ||f||_p = 1 within 1e-10 (NormalizationError).
struct LResult {
  Eigen::VectorXd re;
  Eigen::VectorXd im;
};
LResult apply_L(const Eigen::VectorXd& f, double p, const Eigen::VectorXd& xi,
                const Eigen::VectorXd& eta, const WeightedSpace& sp);

/// <L psi, psi> for psi = (xi, eta).
double l_quadratic_form(const Eigen::VectorXd& f, double p, const Eigen::VectorXd& xi,
                        const Eigen::VectorXd& eta, const WeightedSpace& sp);

/// First and second derivative of P_psi(eps) = ||f + eps psi||_p^2 at 0.
double p_prime0(const Eigen::VectorXd& f, double p, const Eigen::VectorXd& xi,
                const WeightedSpace& sp);

struct TaylorReport {
  double p = 0;
  TaylorConstants constants;
  std::vector<double> eps;
  std::vector<double> lhs;      // |P_psi(eps) - quadratic model|
  std::vector<double> rhs;      // kappa_p |eps|^{beta_p}
  std::vector<double> margins;  // rhs - lhs
  bool pass = false;            // all margins >= -1e-12
};

/// Evaluates P_psi exactly on the discrete space and checks the remainder
/// bound at every eps in [-1, 1]. Requires ||f||_p = ||psi||_p = 1, f real.
TaylorReport remainder_check(const Eigen::VectorXd& f, const Eigen::VectorXcd& psi, double p,
                             const std::vector<double>& eps_list, const WeightedSpace& sp);

/// Margins (rhs - lhs >= 0 expected) of the duality-map Hoelder continuity
/// and of the two uniform-convexity upper bounds on ||h1 + h2||_p.
struct ConvexityMargins {
  double duality_holder = 0;  // applicable branch for this p
  double norm_sum_1 = 0;      // 1 < p <= 2 branch (NaN when not applicable)
  double norm_sum_2 = 0;      // 2 <= p branch (NaN when not applicable)
};
ConvexityMargins convexity_checks(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2, double p,
                                  const WeightedSpace& sp);

/// Randomized remainder-bound suite; returns the number of failures and
/// fills worst_margin. Failing tuples are serialized to stderr.
struct RandomSuiteResult {
  int trials = 0;
  int failures = 0;
  double worst_margin = 0;
};
RandomSuiteResult random_remainder_suite(int trials, int max_dim, std::uint64_t seed);
RandomSuiteResult random_convexity_suite(int trials, int max_dim, std::uint64_t seed);

}  // namespace sslab

#endif  // SSLAB_TAYLOR_HPP
