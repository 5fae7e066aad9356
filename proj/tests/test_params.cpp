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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "sslab/params.hpp"

using namespace sslab;

TEST_CASE("derived exponents") {
  const Params p = make_params(1.0, 3);
  CHECK(p.two_star == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(p.gamma == doctest::Approx(1.0).epsilon(1e-15));

  const Params q = make_params(2.0, 2);
  CHECK(q.two_star == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(q.gamma == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(make_params(0.0, 2), DomainError);
  CHECK_THROWS_AS(make_params(-1.0, 3), DomainError);
  CHECK_THROWS_AS(make_params(1.0, 1), DomainError);
  CHECK_THROWS_AS(make_params(0.5, 1), DomainError);  // m + n <= 2 as well
}

TEST_CASE("gamma (two_star - 2) = 2 across the domain") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> md(0.05, 8.0);
  std::uniform_int_distribution<int> nd(2, 7);
  for (int i = 0; i < 200; ++i) {
    const Params p = make_params(md(rng), nd(rng));
    // algebraically exact; the stored doubles satisfy it to rounding
    CHECK(std::abs(p.gamma * (p.two_star - 2.0) - 2.0) <= 16.0 * 2.220446049250313e-16);
  }
}

TEST_CASE("sphere areas") {
  CHECK(sphere_area(2.0) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(sphere_area(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  // independent high-precision Gamma evaluation in long double
  const long double d = 2.5L;
  const long double oracle = 2.0L * std::exp(0.5L * d * std::log((long double)M_PI) -
                                             std::lgammal(0.5L * d));
  CHECK(sphere_area(2.5) == doctest::Approx((double)oracle).epsilon(1e-12));
  CHECK(sphere_area(2.5) == doctest::Approx(9.2288216421624).epsilon(1e-10));
  for (double dd : {0.5, 1.0, 1.5, 2.0, 3.0, 4.5, 6.0, 10.0}) {
    const long double o =
        2.0L * std::exp(0.5L * (long double)dd * std::log((long double)M_PI) -
                        std::lgammal(0.5L * (long double)dd));
    CHECK(sphere_area(dd) == doctest::Approx((double)o).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sphere_area(0.0), DomainError);
  CHECK_THROWS_AS(sphere_area(-2.0), DomainError);
}

TEST_CASE("sector eigendata") {
  const Params p = make_params(2.0, 2);
  const SectorEigen e = sector_eigen(p, 1, 0);
  CHECK(e.sigma_j == doctest::Approx(8.0).epsilon(1e-15));
  CHECK(e.tau_l == 0.0);
  CHECK(e.mult_l == 1);

  const SectorEigen z = sector_eigen(p, 0, 0);
  CHECK(z.sigma_j == 0.0);
  CHECK(z.tau_l == 0.0);
  CHECK(z.mult_l == 1);

  const Params p3 = make_params(1.0, 3);
  const SectorEigen h = sector_eigen(p3, 0, 2);
  CHECK(h.tau_l == doctest::Approx(6.0));
  // enumerate degree-2 harmonics on S^2: dimension 5; the printed binomial
  // variant undercounts
  CHECK(h.mult_l == 5);
  CHECK(harmonic_multiplicity_printed_variant(3, 2) == 3);
  CHECK(harmonic_multiplicity(3, 1) == 3);
  CHECK(harmonic_multiplicity_printed_variant(3, 1) == 2);

  CHECK_THROWS_AS(sector_eigen(p, -1, 0), DomainError);
}

TEST_CASE("multiplicity against direct dimension counts") {
  // n = 2: 1, 2, 2, 2, ...; n = 3: 2l+1; n = 4: (l+1)^2
  for (int l = 1; l <= 12; ++l) {
    CHECK(harmonic_multiplicity(2, l) == 2);
    CHECK(harmonic_multiplicity(3, l) == 2 * l + 1);
    CHECK(harmonic_multiplicity(4, l) == (l + 1) * (l + 1));
  }
  CHECK(harmonic_multiplicity(5, 2) == 14);  // traceless symmetric 5x5
}

TEST_CASE("sigma and tau monotone") {
  const Params p = make_params(1.5, 2);
  for (int j = 0; j < 20; ++j) {
    CHECK(sector_eigen(p, j + 1, 0).sigma_j > sector_eigen(p, j, 0).sigma_j);
    CHECK(sector_eigen(p, 0, j + 1).tau_l > sector_eigen(p, 0, j).tau_l);
    CHECK(sector_eigen(p, j, j).sigma_j >= 0.0);
  }
}
