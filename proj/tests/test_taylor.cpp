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

#include "sslab/taylor.hpp"

using namespace sslab;

namespace {

WeightedSpace uniform_space(int n) { return WeightedSpace(Eigen::VectorXd::Constant(n, 1.0 / n)); }

Eigen::VectorXd unit_real(std::mt19937_64& rng, const WeightedSpace& sp, double p) {
  std::normal_distribution<double> g;
  Eigen::VectorXd f(sp.dim());
  for (int i = 0; i < sp.dim(); ++i) f[i] = g(rng);
  return f / sp.lp(f, p);
}

Eigen::VectorXcd unit_complex(std::mt19937_64& rng, const WeightedSpace& sp, double p) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd f(sp.dim());
  for (int i = 0; i < sp.dim(); ++i) f[i] = Complex(g(rng), g(rng));
  return f / sp.lp(f, p);
}

}  // namespace

TEST_CASE("remainder constants at the anchor exponents") {
  const TaylorConstants c4 = taylor_constants(4.0);
  CHECK(c4.beta == 3.0);
  CHECK(c4.kappa_high_branch == doctest::Approx(52.0).epsilon(1e-15));
  CHECK(c4.kappa_low_branch == doctest::Approx(28.0).epsilon(1e-13));
  CHECK(c4.kappa == doctest::Approx(28.0).epsilon(1e-13));

  const TaylorConstants c3 = taylor_constants(3.0);
  CHECK(c3.beta == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(c3.kappa == doctest::Approx(224.0 / 15.0).epsilon(1e-13));

  const TaylorConstants c6 = taylor_constants(6.0);
  CHECK(c6.beta == 3.0);
  CHECK(c6.kappa == doctest::Approx(460.0 / 3.0).epsilon(1e-15));

  CHECK_THROWS_AS(taylor_constants(2.0), DomainError);
  CHECK_THROWS_AS(taylor_constants(1.0), DomainError);
}

TEST_CASE("duality map basics") {
  std::mt19937_64 rng(11);
  const WeightedSpace sp = uniform_space(17);
  for (double p : {2.0, 2.7, 4.0, 6.5}) {
    const Eigen::VectorXcd f = unit_complex(rng, sp, p) * Complex(1.7, -0.3);
    const Eigen::VectorXcd d = duality_map(f, p, sp);
    CHECK(sp.lp(d, p / (p - 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    // pairing int D_p(f) f = ||f||_p
    Complex pair = 0;
    for (int i = 0; i < sp.dim(); ++i) pair += sp.weights[i] * d[i] * f[i];
    CHECK(pair.real() == doctest::Approx(sp.lp(f, p)).epsilon(1e-12));
    CHECK(std::abs(pair.imag()) < 1e-12);
  }
  // p = 2 collapse
  const Eigen::VectorXcd f = unit_complex(rng, sp, 2.0) * Complex(0.0, 2.0);
  const Eigen::VectorXcd d2 = duality_map(f, 2.0, sp);
  const Eigen::VectorXcd expect = f.conjugate() / sp.lp(f, 2.0);
  CHECK((d2 - expect).cwiseAbs().maxCoeff() < 1e-14);

  CHECK_THROWS_AS((void)duality_map(Eigen::VectorXcd::Zero(3), 3.0, uniform_space(3)), NullField);
}

TEST_CASE("L operator identities") {
  std::mt19937_64 rng(13);
  const WeightedSpace sp = uniform_space(23);
  const double p = 3.4;
  const Eigen::VectorXd f = unit_real(rng, sp, p);

  SUBCASE("collapses at xi = f") {
    const double q = l_quadratic_form(f, p, f, Eigen::VectorXd::Zero(sp.dim()), sp);
    CHECK(q == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("self-adjoint") {
    for (int rep = 0; rep < 10; ++rep) {
      const Eigen::VectorXcd a = unit_complex(rng, sp, p), b = unit_complex(rng, sp, p);
      const LResult La = apply_L(f, p, a.real(), a.imag(), sp);
      const LResult Lb = apply_L(f, p, b.real(), b.imag(), sp);
      double lab = 0, lba = 0;
      for (int i = 0; i < sp.dim(); ++i) {
        lab += sp.weights[i] * (La.re[i] * b.real()[i] + La.im[i] * b.imag()[i]);
        lba += sp.weights[i] * (Lb.re[i] * a.real()[i] + Lb.im[i] * a.imag()[i]);
      }
      CHECK(lab == doctest::Approx(lba).epsilon(1e-11));
    }
  }

  SUBCASE("imaginary part is plain multiplication") {
    const int n = sp.dim();
    Eigen::VectorXd cf = Eigen::VectorXd::Constant(n, 1.0);
    cf /= sp.lp(cf, p);
    std::normal_distribution<double> g;
    Eigen::VectorXd eta(n);
    for (int i = 0; i < n; ++i) eta[i] = g(rng);
    const LResult L = apply_L(cf, p, Eigen::VectorXd::Zero(n), eta, sp);
    const double scale = std::pow(cf[0], p - 2.0);
    CHECK((L.im - scale * eta).cwiseAbs().maxCoeff() < 1e-13);
  }

  SUBCASE("normalization is enforced") {
    CHECK_THROWS_AS(
        apply_L(2.0 * f, p, f, Eigen::VectorXd::Zero(sp.dim()), sp), NormalizationError);
  }
}

TEST_CASE("P_psi derivatives against finite differences") {
  std::mt19937_64 rng(17);
  const WeightedSpace sp = uniform_space(31);
  const double p = 3.1;
  const Eigen::VectorXd f = unit_real(rng, sp, p);
  const Eigen::VectorXcd psi = unit_complex(rng, sp, p);
  auto P = [&](double e) {
    Eigen::VectorXcd g = f.cast<Complex>() + e * psi;
    return std::pow(sp.lp(g, p), 2.0);
  };
  const double d1 = p_prime0(f, p, psi.real(), sp);
  const double fd1 = (P(1e-5) - P(-1e-5)) / 2e-5;
  CHECK(std::abs(d1 - fd1) < 1e-8);
  const double d2 = 2.0 * l_quadratic_form(f, p, psi.real(), psi.imag(), sp);
  const double fd2 = (P(1e-4) - 2.0 * P(0.0) + P(-1e-4)) / 1e-8;
  CHECK(std::abs(d2 - fd2) < 1e-6);
}

TEST_CASE("remainder bound, collinear and zero cases") {
  const WeightedSpace sp = uniform_space(9);
  std::mt19937_64 rng(19);
  const double p = 5.0;
  const Eigen::VectorXd f = unit_real(rng, sp, p);
  const Eigen::VectorXcd psi = f.cast<Complex>();
  const TaylorReport rep = remainder_check(f, psi, p, {0.0, -0.4, 0.25, 1.0}, sp);
  CHECK(rep.pass);
  CHECK(rep.lhs[0] < 1e-14);  // exactly 0 up to unit-normalization rounding
  for (std::size_t i = 0; i < rep.eps.size(); ++i) {
    // P = (1 + eps)^2 exactly, so the quadratic model is exact
    CHECK(rep.lhs[i] < 1e-12);
    CHECK(rep.margins[i] == doctest::Approx(rep.rhs[i]).epsilon(1e-9));
  }
}

TEST_CASE("randomized remainder suite") {
  const RandomSuiteResult r = random_remainder_suite(2000, 64, 515151);
  CHECK(r.failures == 0);
  CHECK(r.worst_margin >= -1e-12);
}

TEST_CASE("convexity margins") {
  const WeightedSpace sp = uniform_space(13);
  std::mt19937_64 rng(23);

  SUBCASE("equal arguments leave the full right side") {
    const Eigen::VectorXcd h = unit_complex(rng, sp, 3.0);
    const ConvexityMargins m = convexity_checks(h, h, 3.0, sp);
    CHECK(m.duality_holder >= 0.0);
    CHECK(m.duality_holder == doctest::Approx(0.0).epsilon(1e-10));  // rhs is 0 at f = g
    CHECK(m.norm_sum_2 >= -1e-12);
  }

  SUBCASE("collinear pair at p = 3") {
    const Eigen::VectorXcd h = unit_complex(rng, sp, 3.0);
    const Eigen::VectorXcd h2 = 2.0 * h;
    const ConvexityMargins m = convexity_checks(h, h2, 3.0, sp);
    // triangle equality baseline ||3 h|| = 3 ||h||; margin collapses to ~0
    CHECK(m.norm_sum_2 >= -1e-12);
    CHECK(std::abs(m.norm_sum_2) < 1e-10);
  }

  SUBCASE("randomized, both exponent regimes") {
    const RandomSuiteResult r = random_convexity_suite(2000, 48, 727272);
    CHECK(r.failures == 0);
    CHECK(r.worst_margin >= -1e-12);
  }

  CHECK_THROWS_AS(
      (void)convexity_checks(Eigen::VectorXcd::Zero(3), Eigen::VectorXcd::Ones(3), 3.0,
                             uniform_space(3)),
      NullField);
}
