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

#ifndef SSLAB_GRID_HPP
#define SSLAB_GRID_HPP

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "sslab/jacobi.hpp"
#include "sslab/params.hpp"

namespace sslab {

/// Discretization of the (u, theta, zeta) coordinates: a periodic uniform
/// u-grid on [-U, U) with Nu points, Nv Gauss-Jacobi nodes per harmonic
/// sector, and harmonic sectors 0..Lmax.
struct GridSpec {
  double U = 0;
  int Nu = 0;
  int Nv = 0;
  int Lmax = 0;

  bool operator==(const GridSpec&) const = default;
};

/// Default grid for the given parameters. The window U = max(30/gamma, 20)
/// puts the tails of the standard profile below 1e-24 at the edges.
GridSpec default_grid(const Params& p);

/// Throws DomainError unless U > 0, Nu >= 16 even, Nv >= 4, Lmax >= 0.
void validate_grid(const GridSpec& g);

/// Precomputed operators and quadrature tables for one (Params, GridSpec)
/// pair. Shared immutably between fields on the same grid.
///
/// Sector l >= 1 fields are stored factored: the stored array eta_l satisfies
/// xi_l(u, theta) = sin^l(theta) * eta_l(u, v), and the v-nodes of sector l
/// belong to the Jacobi weight (1-v)^{a+l} (1+v)^b with a = (n-2)/2,
/// b = (m-2)/2. This absorbs the csc^2(theta) sector term of the quadratic
/// form into the constant l(l + 2 gamma), so every sector block diagonalizes
/// over the Jacobi index.
class GridOps {
 public:
  GridOps(const Params& p, const GridSpec& g);

  const Params& params() const { return params_; }
  const GridSpec& spec() const { return spec_; }

  double h() const { return h_; }
  const Eigen::VectorXd& u() const { return u_; }
  /// Spectral (trigonometric) first-derivative matrix; real, skew-symmetric.
  const Eigen::MatrixXd& deriv() const { return D_; }
  /// h * D^T D, the (symmetric PSD) discrete u-stiffness matrix.
  const Eigen::MatrixXd& u_stiffness() const { return DtD_; }

  /// omega_m * omega_n * 2^{-(m+n)/2}; multiplies every (u, v) quadrature.
  double measure_prefactor() const { return pref_; }
  /// Additional 2^{-l} carried by the sin^{2l} factor of sector l.
  double sector_factor(int l) const;

  const JacobiBasis& sector_basis(int l) const;
  /// Angular quadratic-form eigenvalue of sector l, Jacobi order j:
  /// Theta_{l,j} = l(l + 2 gamma) + 4 j (j + gamma + l).
  double angular_eigenvalue(int l, int j) const;

  /// Gauss rule for the zonal angle s = cos(chi) on S^{n-1} against the
  /// uniform probability measure, plus the prob-orthonormal zonal harmonic
  /// values ghat(l, q).
  const Eigen::VectorXd& angle_nodes() const { return s_nodes_; }
  const Eigen::VectorXd& angle_weights() const { return s_weights_; }
  const Eigen::MatrixXd& zonal_harmonics() const { return ghat_; }

  /// Value table of sector-l basis polynomials at the sector-0 nodes.
  const Eigen::MatrixXd& cross_values(int l) const;

  /// Periodic trigonometric interpolation weights: row q gives the cardinal
  /// function values at target u_t[q] against the Nu grid nodes.
  Eigen::MatrixXd interpolation_matrix(const Eigen::VectorXd& u_targets) const;

 private:
  Params params_;
  GridSpec spec_;
  double h_, pref_;
  Eigen::VectorXd u_;
  Eigen::MatrixXd D_, DtD_;
  std::vector<JacobiBasis> sector_;
  std::vector<Eigen::MatrixXd> cross_;
  Eigen::VectorXd s_nodes_, s_weights_;
  Eigen::MatrixXd ghat_;
};

using GridOpsPtr = std::shared_ptr<const GridOps>;

/// Cached construction (fields on the same grid share tables).
GridOpsPtr make_grid_ops(const Params& p, const GridSpec& g);

}  // namespace sslab

#endif  // SSLAB_GRID_HPP
