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

#include "sslab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace sslab {

namespace {

// log-coordinate profile of F_t^{2*-2} = (k0 2^-gamma)^{2*-2} sech^2(u + s);
// gamma (2* - 2) = 2 makes the sech power exactly 2 for every (m, n).
Eigen::VectorXd sector_potential(const Params& p, const GridOps& ops, double shift) {
  const double amp = std::pow(p.norm_k0() * std::pow(2.0, -p.gamma), p.two_star - 2.0);
  Eigen::VectorXd pot(ops.spec().Nu);
  for (int i = 0; i < ops.spec().Nu; ++i) {
    const double c = std::cosh(ops.u()[i] + shift);
    pot[i] = amp / (c * c);
  }
  return pot;
}

Eigen::VectorXd f_profile(const Params& p, const GridOps& ops, double shift, double power) {
  Eigen::VectorXd f(ops.spec().Nu);
  const double k0 = p.norm_k0();
  for (int i = 0; i < ops.spec().Nu; ++i)
    f[i] = std::pow(k0 * std::pow(2.0 * std::cosh(ops.u()[i] + shift), -p.gamma), power);
  return f;
}

}  // namespace

double SectorOperator::form_K(const Eigen::MatrixXd& eta) const {
  const auto ops = make_grid_ops(params, grid);
  const Eigen::MatrixXd c = eta * ops->sector_basis(l).forward_transform().transpose();
  double s = 0;
  for (const auto& b : blocks) s += (c.col(b.j).transpose() * b.K * c.col(b.j)).value();
  return s;
}

double SectorOperator::form_M(const Eigen::MatrixXd& eta) const {
  const auto ops = make_grid_ops(params, grid);
  const Eigen::MatrixXd c = eta * ops->sector_basis(l).forward_transform().transpose();
  double s = 0;
  for (const auto& b : blocks) s += (c.col(b.j).transpose() * b.M * c.col(b.j)).value();
  return s;
}

double SectorOperator::form_A_minus_Ahat(const Eigen::MatrixXd& eta) const {
  // tau_l * integral of cot^2(theta) |xi|^2; node-wise nonnegative
  const auto ops = make_grid_ops(params, grid);
  const JacobiBasis& basis = ops->sector_basis(l);
  const double tau = static_cast<double>(l) * (l + params.n - 2);
  if (tau == 0.0) return 0.0;
  double s = 0;
  for (int q = 0; q < grid.Nv; ++q) {
    const double v = basis.nodes()[q];
    const double cot2 = (1.0 + v) / (1.0 - v);
    s += basis.weights()[q] * cot2 * eta.col(q).squaredNorm();
  }
  return tau * ops->measure_prefactor() * ops->sector_factor(l) * ops->h() * s;
}

SectorOperator assemble_sector(const Params& p, const GridSpec& g, double t, int l, Part part,
                               OperatorVariant variant, bool recenter) {
  if (!(t > 0)) throw DomainError("assemble_sector: t must be positive");
  if (l < 0 || l > g.Lmax) throw DomainError("assemble_sector: l out of range");
  const double C = p.sharp_C();
  const auto ops = make_grid_ops(p, g);
  const double shift = recenter ? 0.0 : std::log(t);

  SectorOperator op;
  op.params = p;
  op.grid = g;
  op.t = t;
  op.l = l;
  op.part = part;
  op.variant = variant;
  op.recentered = recenter;
  op.basis = "periodic-u[" + std::to_string(g.Nu) + "] x jacobi[" + std::to_string(g.Nv) + "]";
  // decay length of the profile is 1/gamma
  op.window_warning = (g.U - std::abs(shift)) < 5.0 / p.gamma;

  const double fac = ops->measure_prefactor() * ops->sector_factor(l);
  const double h = ops->h();
  const int Nu = g.Nu, Nv = g.Nv;
  const Eigen::VectorXd pot = sector_potential(p, *ops, shift);
  const double pot_coef =
      (part == Part::Re ? (p.two_star - 1.0) : 1.0) * std::pow(C, 2.0 - p.two_star);

  const Eigen::MatrixXd stiff = ops->u_stiffness();
  op.blocks.resize(Nv);
  for (int j = 0; j < Nv; ++j) {
    auto& b = op.blocks[j];
    b.j = j;
    double theta;
    if (variant == OperatorVariant::A) {
      theta = ops->angular_eigenvalue(l, j);
    } else {
      // Ahat replaces the csc^2 sector term by the constant tau_l; only its
      // l = 0 blocks (identical to A) are assembled as matrices. The l >= 1
      // comparison is available through form_A_minus_Ahat.
      if (l > 0)
        throw DomainError("assemble_sector: variant Ahat matrices are only defined for l = 0; "
                          "use form_A_minus_Ahat for the comparison");
      theta = ops->angular_eigenvalue(0, j);
    }
    b.M = fac * h *
          ((p.gamma * p.gamma + theta) * Eigen::MatrixXd::Identity(Nu, Nu) + stiff / h);
    b.M = 0.5 * (b.M + b.M.transpose().eval());
    Eigen::MatrixXd L = fac * h * pot_coef * pot.asDiagonal();
    if (part == Part::Re && l == 0 && j == 0) {
      // rank-one projection term of L^Re; only the constant Jacobi mode pairs
      // with the zonal F^{2*-1}
      const double sb0 = std::sqrt(ops->sector_basis(0).total_weight());
      const Eigen::VectorXd vec =
          ops->measure_prefactor() * h * sb0 * f_profile(p, *ops, shift, p.two_star - 1.0);
      L -= (p.two_star - 2.0) * std::pow(C, 2.0 - 2.0 * p.two_star) * vec * vec.transpose();
    }
    b.K = C * C * b.M - L;
    b.K = 0.5 * (b.K + b.K.transpose().eval());
  }
  return op;
}

namespace {

// lower bound for the smallest generalized eigenvalue of a block:
// lambda >= C^2 (1 - (gamma+1)(gamma+2) / (gamma^2 + Theta_{l,j}))
double block_lower_bound(const Params& p, double C, double theta) {
  const double g = p.gamma;
  return C * C * (1.0 - (g + 1.0) * (g + 2.0) / (g * g + theta));
}

}  // namespace

EigenPairs eigensolve(const SectorOperator& op, int k) {
  const int Nu = op.grid.Nu;
  if (k < 1 || k > Nu * op.grid.Nv) throw DomainError("eigensolve: bad k");
  const double C = op.params.sharp_C();
  const auto ops = make_grid_ops(op.params, op.grid);

  struct Item {
    double value;
    int block;
    int index;
  };
  std::vector<Item> items;
  std::vector<Eigen::MatrixXd> vecs(op.blocks.size());

  double kth = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < op.blocks.size(); ++j) {
    const double theta = ops->angular_eigenvalue(op.l, static_cast<int>(j));
    if (items.size() >= static_cast<std::size_t>(k) &&
        block_lower_bound(op.params, C, theta) > kth)
      break;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(op.blocks[j].K, op.blocks[j].M);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolve: block solve failed");
    vecs[j] = es.eigenvectors();
    const int take = std::min(k, Nu);
    for (int i = 0; i < take; ++i) items.push_back({es.eigenvalues()[i], static_cast<int>(j), i});
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
      return a.value < b.value;
    });
    if (items.size() > static_cast<std::size_t>(k)) items.resize(k);
    if (items.size() == static_cast<std::size_t>(k)) kth = items.back().value;
  }

  EigenPairs out;
  out.values.resize(static_cast<int>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    out.values[static_cast<int>(i)] = items[i].value;
    out.vectors.push_back(vecs[items[i].block].col(items[i].index));
    out.block_j.push_back(items[i].block);
  }
  return out;
}

NullmodeResiduals nullmode_residuals(const Params& p, double t, const GridSpec& g,
                                     std::uint64_t probe_seed) {
  const auto ops = make_grid_ops(p, g);
  auto residual = [](const SectorOperator::Block& b, const Eigen::VectorXd& v) {
    const Eigen::VectorXd Kv = b.K * v;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(b.M);
    if (ldlt.info() != Eigen::Success)
      throw NumericalError("nullmode_residuals: mass factorization failed");
    const double num = std::sqrt(std::max(0.0, Kv.dot(ldlt.solve(Kv))));
    const double den = std::sqrt(std::max(0.0, v.dot(b.M * v)));
    return num / den;
  };

  NullmodeResiduals r;
  const SectorOperator re0 = assemble_sector(p, g, t, 0, Part::Re);
  const SectorOperator im0 = assemble_sector(p, g, t, 0, Part::Im);
  const Eigen::VectorXd F = f_profile(p, *ops, 0.0, 1.0);
  Eigen::VectorXd dF(g.Nu);
  for (int i = 0; i < g.Nu; ++i) {
    const double u = ops->u()[i];
    dF[i] = -p.gamma * p.norm_k0() * std::pow(2.0, -p.gamma) *
            std::pow(std::cosh(u), -p.gamma - 1.0) * std::sinh(u);
  }
  r.F_re = residual(re0.blocks[0], F);
  r.dF_re = residual(re0.blocks[0], dF);
  r.F_im = residual(im0.blocks[0], F);
  if (g.Lmax >= 1) {
    const SectorOperator re1 = assemble_sector(p, g, t, 1, Part::Re);
    Eigen::VectorXd tr(g.Nu);
    for (int i = 0; i < g.Nu; ++i)
      tr[i] = std::pow(std::cosh(ops->u()[i]), -(p.gamma + 1.0));
    r.dx1F_re = residual(re1.blocks[0], tr);
  }
  std::mt19937_64 rng(probe_seed);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd rnd(g.Nu);
  for (int i = 0; i < g.Nu; ++i) rnd[i] = gauss(rng);
  r.random_probe = residual(re0.blocks[0], rnd);
  return r;
}

std::vector<PoschlTellerLevel> poschl_teller_spectrum(const Params& p) {
  const double C = p.sharp_C(), g = p.gamma;
  std::vector<PoschlTellerLevel> out;
  for (int k = 0; g + 1.0 - k > 0.0; ++k) {
    PoschlTellerLevel lev;
    lev.k = k;
    const double mu = g + 1.0 - k;
    lev.eigenvalue = C * C * (g * g - mu * mu);
    lev.zero_mode = (k == 1);
    out.push_back(lev);
  }
  return out;
}

Eigen::VectorXd radial_x_spectrum(const Params& p, const GridSpec& g, int k) {
  const double C = p.sharp_C();
  const auto ops = make_grid_ops(p, g);
  const double h = ops->h();
  const Eigen::VectorXd pot = sector_potential(p, *ops, 0.0);
  Eigen::MatrixXd X =
      C * C * (p.gamma * p.gamma * h * Eigen::MatrixXd::Identity(g.Nu, g.Nu) + ops->u_stiffness());
  X -= (p.two_star - 1.0) * std::pow(C, 2.0 - p.two_star) * h * Eigen::MatrixXd(pot.asDiagonal());
  X /= h;  // mass is h I; plain symmetric problem after scaling
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (X + X.transpose().eval()));
  if (es.info() != Eigen::Success) throw NumericalError("radial_x_spectrum: eigensolve failed");
  return es.eigenvalues().head(std::min<int>(k, g.Nu));
}

double y_g_residual(const Params& p, const GridSpec& g) {
  const double C = p.sharp_C();
  const auto ops = make_grid_ops(p, g);
  const JacobiBasis& basis = ops->sector_basis(0);
  // g(theta) = (n-m)/(m+n) + v is proportional to the degree-1 polynomial;
  // apply the Sturm-Liouville operator through the derivative tables.
  const double lead = basis.values()(1, 0) != 0 ? 0.0 : 0.0;
  (void)lead;
  Eigen::VectorXd gv(g.Nv), Yg(g.Nv);
  const double c0 = (p.n - p.m) / (p.m + p.n);
  for (int q = 0; q < g.Nv; ++q) gv[q] = c0 + basis.nodes()[q];
  // decompose g in the orthonormal table (degrees 0 and 1 only)
  Eigen::VectorXd coef = basis.forward_transform() * gv;
  Eigen::VectorXd Vg = Eigen::VectorXd::Zero(g.Nv);
  for (int j = 0; j < 2; ++j) Vg += coef[j] * basis.apply_sturm(j);
  Yg = C * C * Vg;
  const double lambda = 2.0 * (p.m + p.n) * C * C;
  return (Yg - lambda * gv).cwiseAbs().maxCoeff();
}

TraceSum trace_sum(const Params& p, int d, int j_cap, int l_cap) {
  if (d < 1) throw DomainError("trace_sum: d must be >= 1");
  if (j_cap < 16 || l_cap < 16) throw DomainError("trace_sum: caps must be >= 16");
  const double g2 = p.gamma * p.gamma;
  TraceSum out;
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(j_cap + 1) * (l_cap + 1));
  for (int l = 0; l <= l_cap; ++l) {
    const double tau = static_cast<double>(l) * (l + p.n - 2);
    const double mult = static_cast<double>(harmonic_multiplicity(p.n, l));
    for (int j = 0; j <= j_cap; ++j) {
      const double sig = 4.0 * j * (j + 0.5 * p.dim() - 1.0);
      terms.push_back(mult * std::pow(g2 + tau + sig, -static_cast<double>(d)));
    }
  }
  out.partial = pairwise_sum(terms);

  if (d > 1 && 2 * d > p.n) {
    // j-tail at l <= l_cap: (A + 4x^2)^{-d} <= (A + 4 j_cap x)^{-d} for x >= j_cap
    double tail = 0;
    for (int l = 0; l <= l_cap; ++l) {
      const double tau = static_cast<double>(l) * (l + p.n - 2);
      const double mult = static_cast<double>(harmonic_multiplicity(p.n, l));
      const double A = g2 + tau + 4.0 * static_cast<double>(j_cap) * j_cap;
      tail += mult * std::pow(A, 1.0 - d) / (4.0 * j_cap * (d - 1.0));
    }
    // l-tail over all j, with mult_l <= 2 (l+1)^{n-2} and tau_l >= l^2:
    // sum_j (A + sigma_j)^{-d} <= A^{-d} + c_d A^{1/2 - d},
    // c_d = (sqrt(pi)/4) Gamma(d - 1/2) / Gamma(d).
    const double cd = 0.25 * std::sqrt(M_PI) *
                      std::exp(std::lgamma(d - 0.5) - std::lgamma(static_cast<double>(d)));
    auto ltail_term = [&](double y) {
      const double A = g2 + y * y;
      return 2.0 * std::pow(y + 1.0, p.n - 2.0) *
             (std::pow(A, -static_cast<double>(d)) + cd * std::pow(A, 0.5 - d));
    };
    // integral comparison on [l_cap, inf) by log-axis trapezoid
    double lint = 0;
    const int S = 2048;
    const double ymax = std::max(1e7, 1e3 * l_cap);
    const double dl = std::log(ymax / l_cap) / S;
    for (int i = 0; i <= S; ++i) {
      const double y = l_cap * std::exp(i * dl);
      const double wgt = (i == 0 || i == S) ? 0.5 : 1.0;
      lint += wgt * ltail_term(y) * y * dl;
    }
    tail += ltail_term(static_cast<double>(l_cap)) + lint;  // first term + integral
    out.tail_bound = tail;
    out.converged = tail < 1e-6 * out.partial;
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
    out.converged = false;
  }
  return out;
}

std::vector<double> trace_increment_ratios(const Params& p, int d, int cap0, int doublings) {
  std::vector<double> partials;
  for (int k = 0; k <= doublings; ++k) {
    const int cap = cap0 << k;
    partials.push_back(trace_sum(p, d, cap, cap).partial);
  }
  std::vector<double> ratios;
  for (int k = 2; k <= doublings; ++k) {
    const double inc_prev = partials[k - 1] - partials[k - 2];
    const double inc = partials[k] - partials[k - 1];
    ratios.push_back(inc / inc_prev);
  }
  return ratios;
}

SpectralReport spectral_report(const Params& p, const GridSpec& g, double t, int lmax, int k) {
  if (lmax > g.Lmax) throw DomainError("spectral_report: lmax exceeds grid Lmax");
  const double C = p.sharp_C();
  SpectralReport rep;
  rep.t = t;
  rep.k = k;
  rep.null_tol = 1e-6 * C * C;
  rep.residuals = nullmode_residuals(p, t, g);
  double gap = std::numeric_limits<double>::infinity();
  int null_dim = 0;
  for (int l = 0; l <= lmax; ++l) {
    for (Part part : {Part::Re, Part::Im}) {
      const SectorOperator op = assemble_sector(p, g, t, l, part);
      rep.window_warning = rep.window_warning || op.window_warning;
      const EigenPairs ep = eigensolve(op, k);
      std::vector<double> vals(ep.values.data(), ep.values.data() + ep.values.size());
      for (double v : vals) {
        if (v < rep.null_tol)
          ++null_dim;
        else
          gap = std::min(gap, v);
      }
      rep.eigenvalues[{l, part == Part::Re ? 0 : 1}] = vals;
    }
  }
  rep.null_dim = null_dim;
  rep.gap = gap;
  return rep;
}

double rayleigh_quotient(const Params& p, const DiscreteField& psi_in, double t) {
  const DiscreteField psi = psi_in.to_log();
  const double C = p.sharp_C();
  const auto ops = psi.ops();
  const double nrm2 = h1_inner(psi, psi).real();
  if (!(nrm2 > 0)) throw NullField("rayleigh_quotient: zero field");
  const Eigen::VectorXd pot = sector_potential(p, *ops, std::log(t));
  const double h = ops->h();

  // <L psi, psi>: potential part sector-wise, rank-one from the zonal real part
  double lform = 0;
  for (int l = 0; l < psi.num_sectors(); ++l) {
    if (!psi.has_sector(l)) continue;
    const double fac = ops->measure_prefactor() * ops->sector_factor(l) * h;
    const auto& vw = ops->sector_basis(l).weights();
    const Eigen::MatrixXcd& S = psi.sector(l);
    double re_part = 0, im_part = 0;
    for (int i = 0; i < psi.grid().Nu; ++i)
      for (int q = 0; q < psi.grid().Nv; ++q) {
        const Complex z = S(i, q);
        re_part += vw[q] * pot[i] * z.real() * z.real();
        im_part += vw[q] * pot[i] * z.imag() * z.imag();
      }
    lform += fac * std::pow(C, 2.0 - p.two_star) *
             ((p.two_star - 1.0) * re_part + im_part);
  }
  if (psi.has_sector(0)) {
    const Eigen::VectorXd fq = f_profile(p, *ops, std::log(t), p.two_star - 1.0);
    const auto& vw = ops->sector_basis(0).weights();
    double pair = 0;
    for (int i = 0; i < psi.grid().Nu; ++i)
      for (int q = 0; q < psi.grid().Nv; ++q)
        pair += h * vw[q] * fq[i] * psi.sector(0)(i, q).real();
    pair *= ops->measure_prefactor();
    lform -= (p.two_star - 2.0) * std::pow(C, 2.0 - 2.0 * p.two_star) * pair * pair;
  }
  return (C * C * nrm2 - lform) / nrm2;
}

TInvariance t_invariance_check(const Params& p, const GridSpec& g, double t1, double t2, int k,
                               bool recenter) {
  if (!(t1 > 0) || !(t2 > 0)) throw DomainError("t_invariance_check: t must be positive");
  TInvariance out;
  const SectorOperator a = assemble_sector(p, g, t1, 0, Part::Re, OperatorVariant::A, recenter);
  const SectorOperator b = assemble_sector(p, g, t2, 0, Part::Re, OperatorVariant::A, recenter);
  out.window_warning = a.window_warning || b.window_warning;
  const EigenPairs ea = eigensolve(a, k);
  const EigenPairs eb = eigensolve(b, k);
  const int kk = std::min<int>(ea.values.size(), eb.values.size());
  for (int i = 0; i < kk; ++i)
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(ea.values[i] - eb.values[i]));
  return out;
}

}  // namespace sslab
