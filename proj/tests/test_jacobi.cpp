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

#include "sslab/jacobi.hpp"

using namespace sslab;

namespace {

// quadrature oracle at 4J nodes for the orthonormality check
double inner_4j(const JacobiBasis& b, int i, int j) {
  JacobiBasis fine(4 * b.order(), b.a(), b.b());
  const Eigen::MatrixXd P = b.values_at(fine.nodes());
  double s = 0;
  for (int q = 0; q < fine.order(); ++q) s += fine.weights()[q] * P(i, q) * P(j, q);
  return s;
}

}  // namespace

TEST_CASE("degree zero is the normalized constant") {
  const JacobiBasis b(8, 0.5, -0.25);
  for (int q = 0; q < 8; ++q)
    CHECK(b.values()(0, q) == doctest::Approx(1.0 / std::sqrt(b.total_weight())).epsilon(1e-14));
}

TEST_CASE("orthonormality under the 4J-node oracle") {
  for (auto [m, n] : std::vector<std::pair<double, int>>{{1.0, 2}, {1.5, 2}, {2.0, 3}, {3.7, 2},
                                                         {2.0, 4}}) {
    const JacobiBasis b(16, 0.5 * (n - 2), 0.5 * (m - 2));
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j <= i; ++j)
        CHECK(std::abs(inner_4j(b, i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("Sturm-Liouville eigen-residual") {
  for (auto [m, n] : std::vector<std::pair<double, int>>{{1.0, 2}, {1.5, 2}, {2.0, 3}, {3.7, 2},
                                                         {2.0, 4}}) {
    const double a = 0.5 * (n - 2), bb = 0.5 * (m - 2);
    const JacobiBasis b(24, a, bb);
    for (int j = 0; j < 24; ++j) {
      const Eigen::VectorXd Vp = b.apply_sturm(j);
      const double sig = 4.0 * j * (j + 0.5 * (m + n) - 1.0);
      CHECK(b.sturm_eigenvalue(j) == doctest::Approx(sig).epsilon(1e-13));
      const double resid = (Vp - sig * b.values().row(j).transpose()).cwiseAbs().maxCoeff();
      CHECK(resid < 1e-8);
    }
  }
}

TEST_CASE("Gauss rule integrates high-degree polynomials exactly") {
  const JacobiBasis b(10, 0.0, 0.5);
  // int v^k (1+v)^{1/2} dv on [-1,1] against a 40-node reference
  const JacobiBasis ref(40, 0.0, 0.5);
  for (int k = 0; k <= 19; ++k) {  // exact through degree 2J-1 = 19
    double s10 = 0, s40 = 0;
    for (int q = 0; q < 10; ++q) s10 += b.weights()[q] * std::pow(b.nodes()[q], k);
    for (int q = 0; q < 40; ++q) s40 += ref.weights()[q] * std::pow(ref.nodes()[q], k);
    CHECK(s10 == doctest::Approx(s40).epsilon(1e-13));
  }
}

TEST_CASE("recurrence stays scaled at high order") {
  const JacobiBasis b(128, 0.0, -0.5);
  CHECK(std::isfinite(b.values().cwiseAbs().maxCoeff()));
  CHECK(b.values().cwiseAbs().maxCoeff() < 1e6);
}

TEST_CASE("invalid constructions") {
  CHECK_THROWS_AS(JacobiBasis(0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(JacobiBasis(4, -1.0, 0.0), DomainError);
  CHECK_THROWS_AS(JacobiBasis(4, 0.0, -1.5), DomainError);
}
