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

#include "sslab/spectral.hpp"

using namespace sslab;

namespace {

Params normalized(double m, int n) {
  Params p = make_params(m, n);
  normalize_extremal(p);
  return p;
}

GridSpec spectral_grid(const Params& p, int nu = 256) {
  GridSpec g = default_grid(p);
  g.Nu = nu;
  return g;
}

// M-orthonormalize the columns of X against the block mass matrix
Eigen::MatrixXd m_orthonormalize(const Eigen::MatrixXd& M, Eigen::MatrixXd X) {
  for (int c = 0; c < X.cols(); ++c) {
    for (int b = 0; b < c; ++b) X.col(c) -= (X.col(b).dot(M * X.col(c))) * X.col(b);
    X.col(c) /= std::sqrt(X.col(c).dot(M * X.col(c)));
  }
  return X;
}

}  // namespace

TEST_CASE("variant Ahat coincides with A on the zonal sector") {
  const Params p = normalized(2.0, 2);
  const GridSpec g = spectral_grid(p, 128);
  const SectorOperator a = assemble_sector(p, g, 1.0, 0, Part::Re, OperatorVariant::A);
  const SectorOperator ahat = assemble_sector(p, g, 1.0, 0, Part::Re, OperatorVariant::Ahat);
  for (int j = 0; j < g.Nv; ++j) {
    CHECK((a.blocks[j].K - ahat.blocks[j].K).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.blocks[j].M - ahat.blocks[j].M).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("A dominates Ahat on l >= 1 sectors") {
  const Params p = normalized(2.0, 3);
  const GridSpec g = spectral_grid(p, 128);
  const SectorOperator op = assemble_sector(p, g, 1.0, 1, Part::Re);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::MatrixXd eta(g.Nu, g.Nv);
    for (int i = 0; i < g.Nu; ++i)
      for (int q = 0; q < g.Nv; ++q) eta(i, q) = gauss(rng);
    CHECK(op.form_A_minus_Ahat(eta) >= 0.0);
  }
  CHECK_THROWS_AS(assemble_sector(p, g, 1.0, 1, Part::Re, OperatorVariant::Ahat), DomainError);
}

TEST_CASE("matrix symmetry and mass positivity") {
  const Params p = normalized(1.5, 2);
  const GridSpec g = spectral_grid(p, 128);
  const SectorOperator op = assemble_sector(p, g, 1.0, 0, Part::Re);
  const auto& b = op.blocks[0];
  CHECK((b.K - b.K.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((b.M - b.M.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  Eigen::LLT<Eigen::MatrixXd> llt(b.M);
  CHECK(llt.info() == Eigen::Success);
}

TEST_CASE("zonal nullspace structure") {
  for (auto [m, n] : std::vector<std::pair<double, int>>{{2.0, 2}, {1.5, 2}, {2.0, 3}}) {
    const Params p = normalized(m, n);
    const GridSpec g = spectral_grid(p);
    const double C2 = p.sharp_C() * p.sharp_C();

    const SectorOperator re = assemble_sector(p, g, 1.0, 0, Part::Re);
    const EigenPairs er = eigensolve(re, 8);
    int null_re = 0;
    for (int i = 0; i < er.values.size(); ++i)
      if (er.values[i] < 1e-6 * C2) ++null_re;
    CHECK(null_re == 2);
    CHECK(er.values[0] > -1e-6 * C2);

    // eigenspace angle against span{F, dF}
    const auto ops = make_grid_ops(p, g);
    Eigen::MatrixXd T(g.Nu, 2), V(g.Nu, 2);
    for (int i = 0; i < g.Nu; ++i) {
      const double u = ops->u()[i];
      T(i, 0) = std::pow(2.0 * std::cosh(u), -p.gamma);
      T(i, 1) = -std::pow(2.0 * std::cosh(u), -p.gamma) * std::tanh(u);
    }
    V.col(0) = er.vectors[0];
    V.col(1) = er.vectors[1];
    CHECK(er.block_j[0] == 0);
    CHECK(er.block_j[1] == 0);
    const Eigen::MatrixXd& M = re.blocks[0].M;
    const Eigen::MatrixXd Tq = m_orthonormalize(M, T);
    const Eigen::MatrixXd Vq = m_orthonormalize(M, V);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(Tq.transpose() * M * Vq);
    const double angle = std::acos(std::min(1.0, svd.singularValues().minCoeff()));
    CHECK(angle < 1e-3);

    const SectorOperator im = assemble_sector(p, g, 1.0, 0, Part::Im);
    const EigenPairs ei = eigensolve(im, 8);
    int null_im = 0;
    for (int i = 0; i < ei.values.size(); ++i)
      if (ei.values[i] < 1e-6 * C2) ++null_im;
    CHECK(null_im == 1);
    // aligned with F
    const double cosang =
        std::abs(ei.vectors[0].dot(im.blocks[0].M * Tq.col(0))) /
        std::sqrt(ei.vectors[0].dot(im.blocks[0].M * ei.vectors[0]));
    CHECK(std::abs(cosang - 1.0) < 1e-6);

    // all eigenvalues below C^2 + tol, approaching C^2
    const EigenPairs tail = eigensolve(re, 40);
    CHECK(tail.values.maxCoeff() <= C2 + 1e-6);
    CHECK(tail.values[tail.values.size() - 1] > 0.8 * C2);
  }
}

TEST_CASE("nullmode residuals") {
  const Params p = normalized(2.0, 2);
  const GridSpec g = spectral_grid(p);
  const NullmodeResiduals r = nullmode_residuals(p, 1.0, g);
  CHECK(r.F_re < 1e-6);
  CHECK(r.dF_re < 1e-6);
  CHECK(r.F_im < 1e-6);
  CHECK(r.dx1F_re < 1e-6);
  CHECK(r.random_probe > 1e-2);
}

TEST_CASE("Poschl-Teller anchors") {
  for (auto [m, n] : std::vector<std::pair<double, int>>{{2.0, 2}, {2.0, 3}, {3.7, 2}}) {
    const Params p = normalized(m, n);
    const GridSpec g = spectral_grid(p, 512);
    const auto levels = poschl_teller_spectrum(p);
    REQUIRE(levels.size() >= 2);
    const double C2 = p.sharp_C() * p.sharp_C();
    CHECK(levels[0].eigenvalue ==
          doctest::Approx(-C2 * (2.0 * p.gamma + 1.0)).epsilon(1e-13));
    CHECK(levels[0].eigenvalue < 0.0);
    CHECK(levels[1].zero_mode);
    CHECK(levels[1].eigenvalue == doctest::Approx(0.0).epsilon(1e-13));

    // the discrete spectrum holds the bound states interleaved with
    // finite-window box states; match each closed-form level by value
    const Eigen::VectorXd disc = radial_x_spectrum(p, g, 8 + static_cast<int>(levels.size()));
    for (const auto& lev : levels) {
      double best = 1e300;
      for (int i = 0; i < disc.size(); ++i)
        best = std::min(best, std::abs(disc[i] - lev.eigenvalue));
      CHECK(best < 1e-5);
    }
    // nothing sits below the ground state
    CHECK(disc[0] > levels[0].eigenvalue - 1e-9);
  }
}

TEST_CASE("theta operator eigenfunction") {
  for (auto [m, n] : std::vector<std::pair<double, int>>{{2.0, 2}, {1.0, 3}, {3.7, 2}}) {
    const Params p = normalized(m, n);
    const GridSpec g = spectral_grid(p, 64);
    CHECK(y_g_residual(p, g) < 1e-7);
  }
}

TEST_CASE("zonal theta spectrum ordering") {
  // three smallest distinct eigenvalues of the theta operator: 0 (constants),
  // 2(m+n) C^2 (the g mode), then larger
  const Params p = normalized(1.5, 2);
  const GridSpec g = spectral_grid(p, 64);
  const auto ops = make_grid_ops(p, g);
  const double C2 = p.sharp_C() * p.sharp_C();
  const double e0 = C2 * ops->sector_basis(0).sturm_eigenvalue(0);
  const double e1 = C2 * ops->sector_basis(0).sturm_eigenvalue(1);
  const double e2 = C2 * ops->sector_basis(0).sturm_eigenvalue(2);
  CHECK(e0 == 0.0);
  CHECK(e1 == doctest::Approx(2.0 * (p.m + p.n) * C2).epsilon(1e-12));
  CHECK(e2 > e1);
}

TEST_CASE("l = 1 sector dominates the zonal sector by the harmonic gap") {
  // same scalar profile xi placed as the l = 1 harmonic coefficient versus
  // the zonal one: the A-form difference is at least tau_1 ||xi||_{L2}^2
  // (the csc^2 factor is >= 1 node-wise)
  const Params p = normalized(2.0, 3);
  const GridSpec g = spectral_grid(p, 128);
  const SectorOperator op1 = assemble_sector(p, g, 1.0, 1, Part::Im);
  const SectorOperator op0 = assemble_sector(p, g, 1.0, 0, Part::Im);
  const auto ops = make_grid_ops(p, g);
  const double tau1 = static_cast<double>(p.n) - 1.0;

  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 8; ++rep) {
    // smooth random profile xi(u, v) vanishing at the axis v = 1 (finite
    // gradient norm as a degree-1 harmonic coefficient)
    Eigen::VectorXd cu(3);
    for (int k = 0; k < 3; ++k) cu[k] = gauss(rng);
    auto xi = [&](double u, double v) {
      const double env = std::exp(-0.1 * u * u);
      return env * (1.0 - v) * (cu[0] + cu[1] * v + cu[2] * v * v);
    };
    Eigen::MatrixXd eta1(g.Nu, g.Nv), eta0(g.Nu, g.Nv);
    const auto& v1 = ops->sector_basis(1).nodes();
    const auto& v0n = ops->sector_basis(0).nodes();
    for (int i = 0; i < g.Nu; ++i) {
      const double u = ops->u()[i];
      for (int q = 0; q < g.Nv; ++q) {
        eta1(i, q) = xi(u, v1[q]) / std::sqrt((1.0 - v1[q]) / 2.0);
        eta0(i, q) = xi(u, v0n[q]);
      }
    }
    const double a1 = op1.form_M(eta1);
    const double a0 = op0.form_M(eta0);
    double l2 = 0;
    const auto& vw0 = ops->sector_basis(0).weights();
    for (int i = 0; i < g.Nu; ++i)
      for (int q = 0; q < g.Nv; ++q)
        l2 += ops->h() * vw0[q] * eta0(i, q) * eta0(i, q);
    l2 *= ops->measure_prefactor();
    CHECK(a1 - a0 >= tau1 * l2 * (1.0 - 1e-3));  // small Jacobi-truncation slack
  }
}

TEST_CASE("trace sums") {
  const Params p2 = normalized(2.0, 2);

  SUBCASE("monotone decreasing in d") {
    const double s2 = trace_sum(p2, 2, 64, 64).partial;
    const double s3 = trace_sum(p2, 3, 64, 64).partial;
    const double s4 = trace_sum(p2, 4, 64, 64).partial;
    CHECK(s2 > s3);
    CHECK(s3 > s4);
  }

  SUBCASE("convergence for d above the threshold") {
    const TraceSum t = trace_sum(p2, 2, 4096, 4096);
    CHECK(t.converged);
    // the tail bound is a genuine bound: doubling caps stays within it
    const TraceSum t2 = trace_sum(p2, 2, 8192, 8192);
    CHECK(t2.partial - t.partial <= t.tail_bound);
  }

  SUBCASE("divergence at d = 1, n = 2") {
    const auto ratios = trace_increment_ratios(p2, 1, 64, 5);
    REQUIRE(ratios.size() >= 3);
    for (std::size_t i = ratios.size() - 3; i < ratios.size(); ++i)
      CHECK(ratios[i] > 0.99);
  }

  CHECK_THROWS_AS((void)trace_sum(p2, 2, 8, 64), DomainError);
}

TEST_CASE("t-invariance of spectra") {
  const Params p = normalized(2.0, 2);
  const GridSpec g = spectral_grid(p);

  CHECK(t_invariance_check(p, g, 1.0, 1.0, 6).max_discrepancy == 0.0);
  CHECK(t_invariance_check(p, g, 1.0, 2.0, 6).max_discrepancy < 1e-6);

  // deliberate truncation probe: tight window, no re-centering
  GridSpec tight = g;
  tight.U = 3.0;
  tight.Nu = 128;
  const TInvariance probe = t_invariance_check(p, tight, 1.0, std::exp(1.0), 6, false);
  CHECK(probe.max_discrepancy > 1e-3);
  CHECK(probe.window_warning);
}

TEST_CASE("rayleigh quotient sits between the gap and C^2") {
  const Params p = normalized(2.0, 2);
  const GridSpec g = spectral_grid(p);
  DiscreteField psi(p, g, Coord::Log);
  const auto ops = make_grid_ops(p, g);
  Eigen::VectorXcd prof(g.Nu);
  for (int i = 0; i < g.Nu; ++i) prof[i] = std::pow(std::cosh(ops->u()[i]), -p.gamma);
  psi.sector(0) = prof * ops->sector_basis(0).values().row(1);
  psi *= Complex(1.0 / h1_norm(psi), 0.0);
  const double ray = rayleigh_quotient(p, psi);
  const double C2 = p.sharp_C() * p.sharp_C();
  CHECK(ray > 0.4 * C2);
  CHECK(ray < C2);
}

TEST_CASE("spectral report") {
  const Params p = normalized(2.0, 2);
  GridSpec g = spectral_grid(p);
  g.Lmax = 1;
  const SpectralReport rep = spectral_report(p, g, 1.0, 1, 6);
  CHECK(rep.null_dim >= 3);
  CHECK(rep.null_dim == 4);  // F, dF, iF, and the x1 translation mode
  CHECK(rep.gap > 0.0);
  const double C2 = p.sharp_C() * p.sharp_C();
  CHECK(rep.gap == doctest::Approx(0.5 * C2).epsilon(1e-6));  // m+n = 4 anchor
  for (const auto& [key, vals] : rep.eigenvalues)
    for (double v : vals) CHECK(v <= C2 + 1e-6);
}
