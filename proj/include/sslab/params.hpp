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

#ifndef SSLAB_PARAMS_HPP
#define SSLAB_PARAMS_HPP

#include <cstdint>
#include <optional>

#include "sslab/errors.hpp"

namespace sslab {

/// Global parameter pack for the weighted cylindrical setting: rho carries the
/// measure omega_m rho^{m-1} d rho (m real > 0) and x ranges over R^n.
///
/// two_star = 2(m+n)/(m+n-2) and gamma = (m+n-2)/2, so gamma*(two_star-2) = 2.
/// The normalization k0 (unit gradient norm of the standard profile) and the
/// sharp ratio C are filled lazily by normalize_extremal().
struct Params {
  double m = 0;
  int n = 0;
  double two_star = 0;
  double gamma = 0;
  std::optional<double> k0;
  std::optional<double> C;

  double dim() const { return m + static_cast<double>(n); }

  /// Sharp constant; throws if normalize_extremal has not run yet.
  double sharp_C() const {
    if (!C) throw Error("Params: C not set; call normalize_extremal first");
    return *C;
  }
  double norm_k0() const {
    if (!k0) throw Error("Params: k0 not set; call normalize_extremal first");
    return *k0;
  }
};

/// Validates (m, n) and fills the derived exponents.
/// Throws DomainError if m <= 0, n < 2, or m + n <= 2.
Params make_params(double m, int n);

/// Generalized area of the unit (d-1)-sphere, 2 pi^{d/2} / Gamma(d/2), d > 0.
double sphere_area(double d);

/// Eigendata of one (Jacobi index j, harmonic degree l) sector.
///
/// sigma_j = 4 j (j + (m+n)/2 - 1) is the Jacobi-operator eigenvalue, tau_l =
/// l (l + n - 2) the sphere-Laplacian eigenvalue, and mult_l the dimension of
/// the degree-l spherical harmonics on S^{n-1}.
struct SectorEigen {
  int j = 0;
  int l = 0;
  double sigma_j = 0;
  double tau_l = 0;
  std::int64_t mult_l = 1;
};

SectorEigen sector_eigen(const Params& p, int j, int l);

/// dim of degree-l spherical harmonics on S^{n-1}:
/// C(n+l-1, l) - C(n+l-3, l-2), binomials with negative entries read as 0.
std::int64_t harmonic_multiplicity(int n, int l);

/// The multiplicity expression printed in some references,
/// C(n+l-1, l) - C(n+l-2, l-1). Fails the n=3 sanity count (gives 2 at l=1
/// instead of 3); kept only so reports can show both values side by side.
std::int64_t harmonic_multiplicity_printed_variant(int n, int l);

}  // namespace sslab

#endif  // SSLAB_PARAMS_HPP
