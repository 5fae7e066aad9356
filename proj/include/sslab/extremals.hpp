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

#ifndef SSLAB_EXTREMALS_HPP
#define SSLAB_EXTREMALS_HPP

#include <functional>

#include "sslab/field.hpp"

namespace sslab {

/// A point z * F_{t, x0} on the extremal manifold. x0 is restricted to the
/// x1-axis (x-radial corpus); x0 holds that coordinate.
struct ExtremalCoords {
  Complex z{1.0, 0.0};
  double t = 1.0;
  double x0 = 0.0;
};

/// Computes k0 (unit gradient norm of F_{1,0}) and the sharp ratio
/// C = ||F_{1,0}||_{2*}, caching both into p. Uses adaptive 1-D quadrature of
/// the radial integrals at 1e-13 relative target.
/// Throws ConvergenceError if refinement stalls.
void normalize_extremal(Params& p);

/// Same, then cross-checks both constants against the 2-D production grid to
/// 1e-8 (ConvergenceError on disagreement).
void normalize_extremal(Params& p, const GridSpec& g);

enum class ExtremalDeriv { None, Du, Dt, Dx1 };

/// Samples z F_{t,x0} (or a derivative of it) on the grid, in log
/// coordinates. Du is the u-derivative, Dt = (1/t) Du the manifold t-tangent,
/// Dx1 the x1-translation tangent (an l = 1 sector field).
/// Derivatives require x0 = 0. Throws DomainError for t <= 0.
DiscreteField extremal_field(const Params& p, const ExtremalCoords& c, const GridSpec& g,
                             ExtremalDeriv d = ExtremalDeriv::None);

/// Sobolev deficit C^2 ||phi||_{H1}^2 - ||phi||_{2*}^2 (needs normalized Params).
double deficit(const DiscreteField& f);

struct DistanceOpts {
  int coarse_t = 33;
  double logt_range = 3.0;
  int coarse_x0 = 17;
  double x0_range = 2.0;
  /// Search x0 even for zeta-independent fields (whose objective is always
  /// stationary at x0 = 0 by sector orthogonality).
  bool force_x0_search = false;
  double tol = 1e-12;
  int max_iter = 120;
};

struct DistanceResult {
  double delta = 0;
  ExtremalCoords argmin;
  double orth_residual_F = 0;   // |<phi - z F, F>|
  double orth_residual_dF = 0;  // |<phi - z F, dF/dt>|
  bool converged = false;
};

/// delta(phi, M)^2 = ||phi||^2 - max_{t,x0} |<phi, F_{t,x0}>|^2 with the
/// optimal z eliminated in closed form. Coarse grid scan, then simplex
/// refinement, then a secant polish on the stationarity conditions.
/// Throws NullField for a zero field, ConvergenceError if refinement stalls.
DistanceResult distance_to_manifold(const DiscreteField& f, const DistanceOpts& opts = {});

/// L^2(du) residual of the extremal identity for the profile z * F_{t,0},
/// with the second derivative taken by the 4th-order finite-difference
/// stencil. Exactly zero in the continuum at z = 1, any t.
double el_residual(const Params& p, const GridSpec& g, double t = 1.0, double z = 1.0);

/// ||phi||_{p*} / ||phi'||_p for a radial profile against the weight
/// omega_N rho^{N-1} d rho, p* = p N / (N - p). Throws DomainError unless
/// 1 < p < N.
double bliss_ratio(const std::function<double(double)>& profile, double p, double N);

}  // namespace sslab

#endif  // SSLAB_EXTREMALS_HPP
