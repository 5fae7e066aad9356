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

#ifndef SSLAB_FIELD_HPP
#define SSLAB_FIELD_HPP

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "sslab/grid.hpp"
#include "sslab/util.hpp"

namespace sslab {

enum class Coord { Log, Phys };

/// Complex cylindrically symmetric function sampled on the (u, v) tensor grid
/// with zonal spherical-harmonic sectors l = 0..Lmax.
///
/// Sector l holds eta_l with xi_l = sin^l(theta) eta_l, sampled at the
/// sector's own Gauss-Jacobi v-nodes (see GridOps). In log coordinates the
/// stored values are those of xi = w^gamma phi; in physical coordinates those
/// of phi itself. An empty matrix marks an unpopulated sector.
class DiscreteField {
 public:
  DiscreteField(const Params& p, const GridSpec& g, Coord coord);

  const Params& params() const { return params_; }
  const GridSpec& grid() const { return grid_; }
  const GridOpsPtr& ops() const { return ops_; }
  Coord coord() const { return coord_; }

  bool has_sector(int l) const;
  /// True when only the l = 0 sector carries data.
  bool zeta_independent() const;

  Eigen::MatrixXcd& sector(int l) { return sectors_[l]; }
  const Eigen::MatrixXcd& sector(int l) const { return sectors_[l]; }
  int num_sectors() const { return static_cast<int>(sectors_.size()); }

  DiscreteField to_log() const;
  DiscreteField to_phys() const;

  /// Pointwise maximum of |phi| over all sample nodes (physical values).
  double max_abs_phys() const;

  DiscreteField& operator+=(const DiscreteField& other);
  DiscreteField& operator*=(Complex z);
  friend DiscreteField operator+(DiscreteField a, const DiscreteField& b) { return a += b; }
  friend DiscreteField operator*(Complex z, DiscreteField f) { return f *= z; }

 private:
  Params params_;
  GridSpec grid_;
  GridOpsPtr ops_;
  Coord coord_;
  std::vector<Eigen::MatrixXcd> sectors_;
};

/// Closed-form evaluator in (rho, x-radius, cos of the x-axis angle).
struct FieldEvaluator {
  std::function<Complex(double rho, double xr, double cos_chi)> f;
  /// Set when f ignores cos_chi; skips the harmonic projection.
  bool zeta_independent = false;
};

/// Samples f at the tensor nodes, projecting onto harmonic sectors 0..Lmax by
/// quadrature over the zonal angle. Returns a field in physical coordinates.
/// Throws EvalError if f produces a non-finite value.
DiscreteField sample_field(const Params& p, const GridSpec& g, const FieldEvaluator& ev);

struct NormInfo {
  double value = 0;
  /// Set when the integrand at the u-window edge exceeds 1e-10 of its peak.
  bool window_warning = false;
};

/// Weighted L^p norm. In log coordinates the u-weight is e^{(m+n-p*gamma) u}.
/// Throws DomainError for p < 1.
NormInfo lp_norm_info(const DiscreteField& f, double p);
double lp_norm(const DiscreteField& f, double p);

/// Weighted H^1 (gradient) inner product; sesquilinear, conjugating the
/// second argument. Sector-orthogonal by construction.
/// Throws GridMismatch if the fields do not share Params and GridSpec.
Complex h1_inner(const DiscreteField& f1, const DiscreteField& f2);
double h1_norm(const DiscreteField& f);

/// Lambda-measure of {|phi| > eps, rho <= rho_max}. The indicator boundary is
/// located within each u-cell by linear interpolation of |phi| and the
/// exponential measure is integrated exactly over the included intervals
/// (deterministic; no smoothing of the indicator itself).
double superlevel_measure(const DiscreteField& f, double eps, double rho_max);

/// Off-grid evaluation of |phi| for a zeta-independent field: exact
/// polynomial evaluation across v, local cubic interpolation of log |phi|
/// along u (falling back to linear near zeros). Log-space interpolation keeps
/// the error relative to the local magnitude, so steep exponential tails do
/// not leak ringing into the far field; values at the original nodes are
/// reproduced exactly.
class FieldInterpolant {
 public:
  explicit FieldInterpolant(const DiscreteField& f);
  /// |phi|(w, theta) at u = ln w, v = 2 cos^2 theta - 1.
  double eval_abs_phys(double u, double v) const;
  /// Upper bound for |phi| over the whole region {ln w >= u}; lets callers
  /// skip regions where the field is identically negligible.
  double bound_above(double u) const;

 private:
  double U_, h_, gamma_, p0_;
  bool log_coord_;
  int Nu_, Nv_;
  Eigen::MatrixXcd coef_;      // Jacobi coefficients per u row
  Eigen::VectorXd alpha_, sqrt_beta_;
  Eigen::VectorXd suffix_bound_;  // row-wise bound, max over rows >= i
};

}  // namespace sslab

#endif  // SSLAB_FIELD_HPP
