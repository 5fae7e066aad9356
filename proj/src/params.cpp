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

#include "sslab/params.hpp"

#include <cmath>
#include <string>

namespace sslab {

Params make_params(double m, int n) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw DomainError("make_params: m must be positive and finite, got " + std::to_string(m));
  if (n < 2) throw DomainError("make_params: n must be an integer >= 2, got " + std::to_string(n));
  const double N = m + static_cast<double>(n);
  if (!(N > 2.0)) throw DomainError("make_params: m + n must exceed 2");
  Params p;
  p.m = m;
  p.n = n;
  p.two_star = 2.0 * N / (N - 2.0);
  p.gamma = (N - 2.0) / 2.0;
  return p;
}

double sphere_area(double d) {
  if (!(d > 0.0)) throw DomainError("sphere_area: d must be positive");
  return 2.0 * std::exp(0.5 * d * std::log(M_PI) - std::lgamma(0.5 * d));
}

namespace {

std::int64_t binom_or_zero(int a, int b) {
  if (b < 0 || a < b) return 0;
  // small arguments only; exact integer arithmetic
  std::int64_t r = 1;
  b = std::min(b, a - b);
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

std::int64_t harmonic_multiplicity(int n, int l) {
  if (l == 0) return 1;
  return binom_or_zero(n + l - 1, l) - binom_or_zero(n + l - 3, l - 2);
}

std::int64_t harmonic_multiplicity_printed_variant(int n, int l) {
  if (l == 0) return 1;
  return binom_or_zero(n + l - 1, l) - binom_or_zero(n + l - 2, l - 1);
}

SectorEigen sector_eigen(const Params& p, int j, int l) {
  if (j < 0 || l < 0) throw DomainError("sector_eigen: j, l must be nonnegative");
  SectorEigen e;
  e.j = j;
  e.l = l;
  e.sigma_j = 4.0 * j * (j + 0.5 * p.dim() - 1.0);
  e.tau_l = static_cast<double>(l) * (l + p.n - 2);
  e.mult_l = harmonic_multiplicity(p.n, l);
  return e;
}

}  // namespace sslab
