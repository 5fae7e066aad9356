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

#include "sslab/field.hpp"

#include <cmath>

namespace sslab {

DiscreteField::DiscreteField(const Params& p, const GridSpec& g, Coord coord)
    : params_(p), grid_(g), ops_(make_grid_ops(p, g)), coord_(coord), sectors_(g.Lmax + 1) {}

bool DiscreteField::has_sector(int l) const {
  return l >= 0 && l < num_sectors() && sectors_[l].size() > 0;
}

bool DiscreteField::zeta_independent() const {
  for (int l = 1; l < num_sectors(); ++l)
    if (has_sector(l)) return false;
  return true;
}

namespace {

void check_same_layout(const DiscreteField& a, const DiscreteField& b) {
  if (!(a.grid() == b.grid()) || a.params().m != b.params().m || a.params().n != b.params().n)
    throw GridMismatch("fields do not share Params and GridSpec");
}

// Sector values re-expressed at the sector-0 v-nodes, including the
// sin^l(theta) factor. Rows = u, cols = sector-0 nodes.
Eigen::MatrixXcd sector_at_common_nodes(const DiscreteField& f, int l) {
  const GridOps& ops = *f.ops();
  const Eigen::VectorXd& v0 = ops.sector_basis(0).nodes();
  Eigen::MatrixXcd vals =
      (ops.sector_basis(l).forward_transform() * f.sector(l).transpose()).transpose() *
      ops.cross_values(l);
  for (int q = 0; q < vals.cols(); ++q)
    vals.col(q) *= std::pow((1.0 - v0[q]) / 2.0, 0.5 * l);
  return vals;
}

}  // namespace

DiscreteField DiscreteField::to_log() const {
  if (coord_ == Coord::Log) return *this;
  DiscreteField out(params_, grid_, Coord::Log);
  Eigen::ArrayXd scale = (params_.gamma * ops_->u().array()).exp();
  for (int l = 0; l < num_sectors(); ++l)
    if (has_sector(l)) out.sector(l) = scale.matrix().asDiagonal() * sectors_[l];
  return out;
}

DiscreteField DiscreteField::to_phys() const {
  if (coord_ == Coord::Phys) return *this;
  DiscreteField out(params_, grid_, Coord::Phys);
  Eigen::ArrayXd scale = (-params_.gamma * ops_->u().array()).exp();
  for (int l = 0; l < num_sectors(); ++l)
    if (has_sector(l)) out.sector(l) = scale.matrix().asDiagonal() * sectors_[l];
  return out;
}

DiscreteField& DiscreteField::operator+=(const DiscreteField& other) {
  check_same_layout(*this, other);
  const DiscreteField tmp = (other.coord() == coord_) ? other
                            : (coord_ == Coord::Log ? other.to_log() : other.to_phys());
  for (int l = 0; l < num_sectors(); ++l) {
    if (!tmp.has_sector(l)) continue;
    if (has_sector(l))
      sectors_[l] += tmp.sector(l);
    else
      sectors_[l] = tmp.sector(l);
  }
  return *this;
}

DiscreteField& DiscreteField::operator*=(Complex z) {
  for (auto& s : sectors_)
    if (s.size() > 0) s *= z;
  return *this;
}

double DiscreteField::max_abs_phys() const {
  const DiscreteField f = to_phys();
  if (f.zeta_independent())
    return f.has_sector(0) ? f.sector(0).cwiseAbs().maxCoeff() : 0.0;
  const GridOps& ops = *ops_;
  const auto& s = ops.angle_nodes();
  const auto& gh = ops.zonal_harmonics();
  std::vector<Eigen::MatrixXcd> at0(f.num_sectors());
  for (int l = 0; l < f.num_sectors(); ++l)
    if (f.has_sector(l)) at0[l] = sector_at_common_nodes(f, l);
  double mx = 0;
  for (int q = 0; q < s.size(); ++q) {
    Eigen::MatrixXcd tot = Eigen::MatrixXcd::Zero(grid_.Nu, grid_.Nv);
    for (int l = 0; l < f.num_sectors(); ++l)
      if (f.has_sector(l)) tot += at0[l] * gh(l, q);
    mx = std::max(mx, tot.cwiseAbs().maxCoeff());
  }
  return mx;
}

DiscreteField sample_field(const Params& p, const GridSpec& g, const FieldEvaluator& ev) {
  DiscreteField out(p, g, Coord::Phys);
  const GridOps& ops = *out.ops();
  const int Nu = g.Nu, Nv = g.Nv;
  auto check = [](Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw EvalError("sample_field: evaluator returned a non-finite value");
    return z;
  };
  if (ev.zeta_independent) {
    const Eigen::VectorXd& v = ops.sector_basis(0).nodes();
    Eigen::MatrixXcd vals(Nu, Nv);
    for (int i = 0; i < Nu; ++i) {
      const double w = std::exp(ops.u()[i]);
      for (int q = 0; q < Nv; ++q) {
        const double ct = std::sqrt((1.0 + v[q]) / 2.0), st = std::sqrt((1.0 - v[q]) / 2.0);
        vals(i, q) = check(ev.f(w * ct, w * st, 1.0));
      }
    }
    out.sector(0) = vals;
    return out;
  }
  const auto& s = ops.angle_nodes();
  const auto& nu = ops.angle_weights();
  const auto& gh = ops.zonal_harmonics();
  for (int l = 0; l <= g.Lmax; ++l) {
    const Eigen::VectorXd& v = ops.sector_basis(l).nodes();
    Eigen::MatrixXcd vals(Nu, Nv);
    for (int i = 0; i < Nu; ++i) {
      const double w = std::exp(ops.u()[i]);
      for (int q = 0; q < Nv; ++q) {
        const double ct = std::sqrt((1.0 + v[q]) / 2.0), st = std::sqrt((1.0 - v[q]) / 2.0);
        Complex proj = 0;
        for (int a = 0; a < s.size(); ++a)
          proj += nu[a] * gh(l, a) * check(ev.f(w * ct, w * st, s[a]));
        vals(i, q) = proj / std::pow(st, l);
      }
    }
    out.sector(l) = vals;
  }
  return out;
}

NormInfo lp_norm_info(const DiscreteField& f, double p) {
  if (p < 1.0) throw DomainError("lp_norm: p must be >= 1");
  const GridOps& ops = *f.ops();
  const Params& par = f.params();
  const int Nu = f.grid().Nu, Nv = f.grid().Nv;
  const double N = par.dim();
  const double expo = (f.coord() == Coord::Log) ? (N - p * par.gamma) : N;
  Eigen::ArrayXd uw = (expo * ops.u().array()).exp() * ops.h();
  const auto& vw = ops.sector_basis(0).weights();

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(Nu) * Nv);
  double peak = 0, edge = 0;
  auto track = [&](int i, double t) {
    peak = std::max(peak, t);
    if (i == 0 || i == Nu - 1) edge = std::max(edge, t);
    terms.push_back(t);
  };

  if (f.zeta_independent()) {
    if (f.has_sector(0))
      for (int i = 0; i < Nu; ++i)
        for (int q = 0; q < Nv; ++q)
          track(i, uw[i] * vw[q] * std::pow(std::abs(f.sector(0)(i, q)), p));
  } else {
    const auto& s = ops.angle_nodes();
    const auto& nu = ops.angle_weights();
    const auto& gh = ops.zonal_harmonics();
    std::vector<Eigen::MatrixXcd> at0(f.num_sectors());
    for (int l = 0; l < f.num_sectors(); ++l)
      if (f.has_sector(l)) at0[l] = sector_at_common_nodes(f, l);
    for (int i = 0; i < Nu; ++i)
      for (int q = 0; q < Nv; ++q) {
        double acc = 0;
        for (int a = 0; a < s.size(); ++a) {
          Complex tot = 0;
          for (int l = 0; l < f.num_sectors(); ++l)
            if (f.has_sector(l)) tot += at0[l](i, q) * gh(l, a);
          acc += nu[a] * std::pow(std::abs(tot), p);
        }
        track(i, uw[i] * vw[q] * acc);
      }
  }
  NormInfo info;
  info.value = std::pow(ops.measure_prefactor() * pairwise_sum(terms), 1.0 / p);
  info.window_warning = (peak > 0 && edge > 1e-10 * peak);
  return info;
}

double lp_norm(const DiscreteField& f, double p) { return lp_norm_info(f, p).value; }

Complex h1_inner(const DiscreteField& f1, const DiscreteField& f2) {
  check_same_layout(f1, f2);
  const DiscreteField a = f1.to_log();
  const DiscreteField b = f2.to_log();
  const GridOps& ops = *a.ops();
  const double g2 = a.params().gamma * a.params().gamma;
  const double h = ops.h();
  const int Nu = a.grid().Nu, Nv = a.grid().Nv;

  std::vector<Complex> terms;
  terms.reserve(static_cast<std::size_t>(a.num_sectors()) * Nu * Nv * 2);
  for (int l = 0; l < a.num_sectors(); ++l) {
    if (!a.has_sector(l) || !b.has_sector(l)) continue;
    const double fac = ops.measure_prefactor() * ops.sector_factor(l) * h;
    const auto& vw = ops.sector_basis(l).weights();
    const Eigen::MatrixXcd& A = a.sector(l);
    const Eigen::MatrixXcd& B = b.sector(l);
    const Eigen::MatrixXcd dA = ops.deriv() * A;
    const Eigen::MatrixXcd dB = ops.deriv() * B;
    for (int i = 0; i < Nu; ++i)
      for (int q = 0; q < Nv; ++q)
        terms.push_back(fac * vw[q] *
                        (g2 * A(i, q) * std::conj(B(i, q)) + dA(i, q) * std::conj(dB(i, q))));
    // angular stiffness, diagonal in the Jacobi coefficients
    const Eigen::MatrixXd T = ops.sector_basis(l).forward_transform();
    const Eigen::MatrixXcd cA = A * T.transpose();
    const Eigen::MatrixXcd cB = B * T.transpose();
    for (int j = 0; j < Nv; ++j) {
      const double th = ops.angular_eigenvalue(l, j);
      if (th == 0.0) continue;
      for (int i = 0; i < Nu; ++i) terms.push_back(fac * th * cA(i, j) * std::conj(cB(i, j)));
    }
  }
  return pairwise_sum(terms);
}

double h1_norm(const DiscreteField& f) {
  return std::sqrt(std::max(0.0, h1_inner(f, f).real()));
}

namespace {

// Measure of {|column values| > eps, u <= u_cap} along one u-column. The
// indicator boundary is located inside its cell by linear interpolation of
// |phi| and the exponential weight is integrated exactly per included
// interval; the e^{N u} growth makes anything coarser dominate the result.
double column_superlevel(const Eigen::VectorXd& y, const Eigen::VectorXd& u, double eps,
                         double u_cap, double N) {
  const int Nu = static_cast<int>(y.size());
  double acc = 0;
  auto mass = [N](double a, double b) {
    return (std::exp(N * b) - std::exp(N * a)) / N;
  };
  for (int i = 0; i + 1 < Nu; ++i) {
    double a = u[i], b = u[i + 1];
    double ya = y[i], yb = y[i + 1];
    if (a >= u_cap) break;
    if (b > u_cap) {
      const double t = (u_cap - a) / (b - a);
      yb = ya + t * (yb - ya);
      b = u_cap;
    }
    const bool ina = ya > eps, inb = yb > eps;
    if (!ina && !inb) continue;
    if (ina && inb) {
      acc += mass(a, b);
      continue;
    }
    const double t = (eps - ya) / (yb - ya);
    const double cross = a + t * (b - a);
    acc += ina ? mass(a, cross) : mass(cross, b);
  }
  return acc;
}

}  // namespace

double superlevel_measure(const DiscreteField& f, double eps, double rho_max) {
  if (!(eps > 0)) throw DomainError("superlevel_measure: eps must be positive");
  const DiscreteField ph = f.to_phys();
  const GridOps& ops = *ph.ops();
  const int Nu = ph.grid().Nu, Nv = ph.grid().Nv;
  const double N = ph.params().dim();
  const auto& vw = ops.sector_basis(0).weights();
  const Eigen::VectorXd& v0 = ops.sector_basis(0).nodes();

  std::vector<double> terms;
  if (ph.zeta_independent()) {
    if (!ph.has_sector(0)) return 0.0;
    for (int q = 0; q < Nv; ++q) {
      const double ct = std::sqrt((1.0 + v0[q]) / 2.0);
      const double u_cap = std::log(rho_max) - std::log(ct);
      const Eigen::VectorXd col = ph.sector(0).col(q).cwiseAbs();
      terms.push_back(vw[q] * column_superlevel(col, ops.u(), eps, u_cap, N));
    }
  } else {
    const auto& s = ops.angle_nodes();
    const auto& nu = ops.angle_weights();
    const auto& gh = ops.zonal_harmonics();
    std::vector<Eigen::MatrixXcd> at0(ph.num_sectors());
    for (int l = 0; l < ph.num_sectors(); ++l)
      if (ph.has_sector(l)) at0[l] = sector_at_common_nodes(ph, l);
    for (int q = 0; q < Nv; ++q) {
      const double ct = std::sqrt((1.0 + v0[q]) / 2.0);
      const double u_cap = std::log(rho_max) - std::log(ct);
      for (int a = 0; a < s.size(); ++a) {
        Eigen::VectorXd col(Nu);
        for (int i = 0; i < Nu; ++i) {
          Complex tot = 0;
          for (int l = 0; l < ph.num_sectors(); ++l)
            if (ph.has_sector(l)) tot += at0[l](i, q) * gh(l, a);
          col[i] = std::abs(tot);
        }
        terms.push_back(vw[q] * nu[a] * column_superlevel(col, ops.u(), eps, u_cap, N));
      }
    }
  }
  return ops.measure_prefactor() * pairwise_sum(terms);
}

FieldInterpolant::FieldInterpolant(const DiscreteField& f)
    : U_(f.grid().U),
      h_(f.ops()->h()),
      gamma_(f.params().gamma),
      log_coord_(f.coord() == Coord::Log),
      Nu_(f.grid().Nu),
      Nv_(f.grid().Nv) {
  if (!f.zeta_independent())
    throw UnsupportedField("FieldInterpolant: field must be zeta-independent");
  if (!f.has_sector(0)) throw NullField("FieldInterpolant: empty field");
  const JacobiBasis& basis = f.ops()->sector_basis(0);
  coef_ = f.sector(0) * basis.forward_transform().transpose();
  alpha_ = basis.rec_alpha();
  sqrt_beta_ = basis.rec_beta().cwiseSqrt();
  p0_ = 1.0 / std::sqrt(basis.total_weight());
  // |p_j| on [-1,1] peaks at an endpoint for these weights
  Eigen::VectorXd ends(2);
  ends << -1.0, 1.0;
  const Eigen::VectorXd pmax = basis.values_at(ends).cwiseAbs().rowwise().maxCoeff();
  const double scale = (f.coord() == Coord::Log) ? 1.0 : 0.0;
  suffix_bound_.resize(Nu_ + 1);
  suffix_bound_[Nu_] = 0.0;
  for (int i = Nu_ - 1; i >= 0; --i) {
    double b = coef_.row(i).cwiseAbs().dot(pmax);
    if (scale > 0) b *= std::exp(-gamma_ * (-U_ + i * h_));
    suffix_bound_[i] = std::max(b, suffix_bound_[i + 1]);
  }
}

double FieldInterpolant::bound_above(double u) const {
  const int i = std::max(0, static_cast<int>(std::floor((u + U_) / h_)) - 1);
  return (i >= Nu_) ? 0.0 : suffix_bound_[i];
}

double FieldInterpolant::eval_abs_phys(double u, double v) const {
  const double s = (u + U_) / h_;
  int i1 = static_cast<int>(std::floor(s));
  const double t = s - i1;
  // shared orthonormal-polynomial values at v
  double pvec[128];
  {
    pvec[0] = p0_;
    double pm = 0, pc = p0_;
    for (int k = 0; k + 1 < Nv_; ++k) {
      const double pn =
          ((v - alpha_[k]) * pc - (k > 0 ? sqrt_beta_[k] * pm : 0.0)) / sqrt_beta_[k + 1];
      pvec[k + 1] = pn;
      pm = pc;
      pc = pn;
    }
  }
  auto row_abs = [&](int i) -> double {
    if (i < 0 || i >= Nu_) return 0.0;  // outside the window: field treated as 0
    Complex acc = 0;
    for (int k = 0; k < Nv_; ++k) acc += coef_(i, k) * pvec[k];
    return std::abs(acc);
  };
  const double y0 = row_abs(i1 - 1), y1 = row_abs(i1), y2 = row_abs(i1 + 1),
               y3 = row_abs(i1 + 2);
  double mag;
  const double tiny = 1e-280;
  if (t == 0.0) {
    mag = y1;
  } else if (y0 > tiny && y1 > tiny && y2 > tiny && y3 > tiny) {
    // cubic in log magnitude: errors stay relative to the local scale
    const double l0 = std::log(y0), l1 = std::log(y1), l2 = std::log(y2), l3 = std::log(y3);
    const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
    mag = std::exp(w0 * l0 + w1 * l1 + w2 * l2 + w3 * l3);
  } else {
    mag = y1 + t * (y2 - y1);  // near zeros: bounded linear interpolation
  }
  return log_coord_ ? mag * std::exp(-gamma_ * u) : mag;
}

}  // namespace sslab
