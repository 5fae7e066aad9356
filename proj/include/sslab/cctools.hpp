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

#ifndef SSLAB_CCTOOLS_HPP
#define SSLAB_CCTOOLS_HPP

#include <limits>

#include "sslab/extremals.hpp"
#include "sslab/field.hpp"

namespace sslab {

/// phi^sigma(rho, x) = sigma^gamma phi(sigma rho, sigma x); in log
/// coordinates a u-translation of xi by ln(sigma), realized by trigonometric
/// (spectral) shifting. Throws DomainError for sigma <= 0.
DiscreteField dilate(const DiscreteField& f, double sigma);

/// Wraps a closed-form evaluator into its dilated version.
FieldEvaluator dilate(const FieldEvaluator& ev, double sigma, double gamma);

/// Symmetric decreasing rearrangement in the x-variable, slice by slice in
/// rho. Output is zeta-independent and nonnegative, with per-slice |x|
/// superlevel measures preserved. Requires a zeta-independent field whose
/// effective support sits inside |ln r| <= sample_halfwidth.
/// Throws UnsupportedField when l > 0 sectors carry relative mass > 1e-10.
DiscreteField rearrange_x(const DiscreteField& f, int slice_samples = 3072,
                          double sample_halfwidth = 10.0);

/// |x|-superlevel measure of one rho-slice, from the same monotone estimator
/// the rearrangement uses; lets equimeasurability be checked slice-wise.
double slice_superlevel(const DiscreteField& f, double rho, double eps, int slice_samples = 3072,
                        double sample_halfwidth = 10.0);

/// 2*-mass of the field inside {w <= 1}, with the boundary cell resolved by
/// linear interpolation of the integrand (continuous in dilations).
double mass_in_unit_ball(const DiscreteField& f);

struct HalfMassResult {
  double sigma = 0;
  std::vector<double> all_crossings;  // every bracketed crossing, ascending
};

/// Finds sigma with || chi_{w <= 1} (phi^sigma)^* ||_{2*}^{2*} = c by a
/// geometric bracket scan over [1e-6, 1e6] and bisection on the first sign
/// change (1e-8 in sigma, at most 200 iterations). Dilation commutes with the
/// rearrangement, so the mass curve is evaluated from a single rearranged
/// field. Requires ||phi||_{2*} = 1 within 1e-8.
/// Throws BracketError when no sign change exists on the scanned range.
HalfMassResult half_mass_sigma(const DiscreteField& f, double c);

struct StabilityRow {
  double eps = 0;
  double deficit = 0;
  double delta = 0;
  double ratio = 0;  // deficit / delta^2
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  double fitted_exponent = 0;     // free log-log fit on the small-delta tail
  double fitted_coefficient = 0;  // exponent-2 constrained fit on the tail
  double rayleigh = 0;            // <(C^2 I - S) psi, psi>
  double gap = 0;                 // lambda_1 supplied by the caller (NaN: unset)
  bool pass_exponent = false;     // |exponent - 2| <= 0.1
  bool pass_coefficient = false;  // within [0.95 gap, 1.05 rayleigh]
  std::vector<double> beta_ratios;  // deficit / delta^1.5, tail monotone to 0
  bool beta_monotone = false;
};

/// Default schedule: 12 points, geometric from 0.2 down to 1e-3.
std::vector<double> default_eps_schedule();

/// Deficit/distance scan along phi_eps = F_{1,0} + eps psi. psi must be
/// H1-normalized and orthogonal (residual < 1e-8) to the measured null modes
/// {F, dF/dt, iF, d_x1 F}.
StabilityReport stability_scan(const Params& p, const DiscreteField& psi,
                               const std::vector<double>& eps_schedule = default_eps_schedule(),
                               double gap = std::numeric_limits<double>::quiet_NaN());

}  // namespace sslab

#endif  // SSLAB_CCTOOLS_HPP
