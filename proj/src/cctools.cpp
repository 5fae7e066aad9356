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

#include "sslab/cctools.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sslab/spectral.hpp"

namespace sslab {

namespace {

// Local 4-point magnitude estimate of |column| at fractional index s,
// cubic in log magnitude away from zeros (errors relative to local scale).
double local_mag(const Eigen::VectorXcd& col, double s) {
  const int n = static_cast<int>(col.size());
  const int i1 = static_cast<int>(std::floor(s));
  const double t = s - i1;
  auto at = [&](int i) { return (i < 0 || i >= n) ? 0.0 : std::abs(col[i]); };
  const double y0 = at(i1 - 1), y1 = at(i1), y2 = at(i1 + 1), y3 = at(i1 + 2);
  const double tiny = 1e-280;
  if (t == 0.0) return y1;
  if (y0 > tiny && y1 > tiny && y2 > tiny && y3 > tiny) {
    const double w0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
    const double w1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
    const double w2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
    const double w3 = (t + 1.0) * t * (t - 1.0) / 6.0;
    return std::exp(w0 * std::log(y0) + w1 * std::log(y1) + w2 * std::log(y2) +
                    w3 * std::log(y3));
  }
  return y1 + t * (y2 - y1);
}

}  // namespace

DiscreteField dilate(const DiscreteField& f, double sigma) {
  if (!(sigma > 0)) throw DomainError("dilate: sigma must be positive");
  const DiscreteField in = f.to_log();
  if (sigma == 1.0) return in;
  DiscreteField out(in.params(), in.grid(), Coord::Log);
  const GridOps& ops = *in.ops();
  const double shift = std::log(sigma);
  Eigen::VectorXd targets = ops.u().array() + shift;
  const Eigen::MatrixXd S = ops.interpolation_matrix(targets);
  for (int l = 0; l < in.num_sectors(); ++l) {
    if (!in.has_sector(l)) continue;
    Eigen::MatrixXcd shifted = S * in.sector(l);
    // The spectral shift is exact for resolved content but rings at the
    // magnitude of any under-resolved drop (e.g. double-exponential tails).
    // In the dead zone (true magnitude far below the peak) replace by the
    // local estimate, which decays with the field instead of ringing.
    const double peak = in.sector(l).cwiseAbs().maxCoeff();
    for (int q = 0; q < in.grid().Nv; ++q) {
      const Eigen::VectorXcd col = in.sector(l).col(q);
      for (int i = 0; i < in.grid().Nu; ++i) {
        const double s = (targets[i] + in.grid().U) / ops.h();
        const double est = local_mag(col, s);
        if (est <= 1e-14 * peak) {
          const double cur = std::abs(shifted(i, q));
          shifted(i, q) = (cur > 0) ? shifted(i, q) * (est / cur) : Complex(est, 0.0);
        }
      }
    }
    out.sector(l) = shifted;
  }
  return out;
}

FieldEvaluator dilate(const FieldEvaluator& ev, double sigma, double gamma) {
  if (!(sigma > 0)) throw DomainError("dilate: sigma must be positive");
  FieldEvaluator out;
  out.zeta_independent = ev.zeta_independent;
  const double amp = std::pow(sigma, gamma);
  out.f = [f = ev.f, sigma, amp](double rho, double r, double s) {
    return amp * f(sigma * rho, sigma * r, s);
  };
  return out;
}

namespace {

// One rho-slice: samples |phi| on a log r-grid (plus optional extra points),
// sorts against the cumulative |x|-measure, and exposes the monotone quantile
// and distribution functions. Interpolation is monotone cubic in log-log.
class SliceRearrangement {
 public:
  SliceRearrangement(const FieldInterpolant& itp, double rho, int samples, double halfwidth,
                     double outer_halfwidth, int n_dim, double extra_r = -1.0) {
    const double wn = sphere_area(n_dim);
    const int M = samples;
    std::vector<double> r;
    r.reserve(M + 512);
    // sparse outer zones: power-law tails are log-log linear, so coarse
    // sampling loses nothing there; the dense core resolves the bump region
    const double d_out = 0.25;
    for (double x = -outer_halfwidth; x < -halfwidth - 1e-12; x += d_out) r.push_back(std::exp(x));
    for (int b = 0; b < M; ++b)
      r.push_back(std::exp(-halfwidth + 2.0 * halfwidth * b / (M - 1)));
    for (double x = halfwidth + d_out; x <= outer_halfwidth + 1e-12; x += d_out)
      r.push_back(std::exp(x));
    if (extra_r > 0) {
      auto it = std::lower_bound(r.begin(), r.end(), extra_r);
      if (it == r.end() || std::abs(*it - extra_r) > 1e-15 * extra_r) r.insert(it, extra_r);
    }
    std::vector<double> val;
    const int Mr = static_cast<int>(r.size());
    val.resize(Mr);
    for (int b = 0; b < Mr; ++b) {
      const double w = std::hypot(rho, r[b]);
      const double v = (w > 0) ? (2.0 * rho * rho / (w * w) - 1.0) : 1.0;
      val[b] = itp.eval_abs_phys(std::log(w), v);
    }
    // measure coordinate mu(r) = omega_n r^n / n and cell masses from
    // mid-point shells
    std::vector<double> mu(Mr), cell(Mr);
    auto muof = [&](double rr) { return wn * std::pow(rr, n_dim) / n_dim; };
    for (int b = 0; b < Mr; ++b) mu[b] = muof(r[b]);
    for (int b = 0; b < Mr; ++b) {
      const double lo = (b == 0) ? 0.0 : muof(std::sqrt(r[b - 1] * r[b]));
      const double hi = (b + 1 == Mr) ? mu[Mr - 1] : muof(std::sqrt(r[b] * r[b + 1]));
      cell[b] = hi - lo;
    }
    // sort by value, descending; knots carry each sample at the same relative
    // offset inside its own cell, which makes already-decreasing slices an
    // exact fixed point at the sample points
    std::vector<int> ord(Mr);
    std::iota(ord.begin(), ord.end(), 0);
    std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return val[a] > val[b]; });
    pos_.resize(Mr);
    q_.resize(Mr);
    double cum = 0;
    for (int k = 0; k < Mr; ++k) {
      const int b = ord[k];
      const double lo = (b == 0) ? 0.0 : muof(std::sqrt(r[b - 1] * r[b]));
      double off = mu[b] - lo;
      off = std::clamp(off, 0.0, cell[b]);
      pos_[k] = cum + off;
      q_[k] = val[b];
      cum += cell[b];
    }
    total_ = cum;
  }

  /// decreasing rearrangement as a function of the measure coordinate
  double quantile(double mu) const {
    if (mu <= pos_.front()) return q_.front();
    if (mu >= pos_.back()) return q_.back();
    const auto it = std::upper_bound(pos_.begin(), pos_.end(), mu);
    const int k = static_cast<int>(it - pos_.begin());
    return interp(k - 1, k, mu);
  }

  /// measure of {value > eps} from the same knots
  double superlevel(double eps) const {
    if (eps >= q_.front()) return 0.0;
    if (eps < q_.back()) return total_;
    // q_ is nonincreasing; first index with q_ <= eps
    int lo = 0, hi = static_cast<int>(q_.size()) - 1;
    while (lo + 1 < hi) {
      const int mid = (lo + hi) / 2;
      (q_[mid] > eps ? lo : hi) = mid;
    }
    // invert the monotone interpolant between knots lo and hi
    double a = pos_[lo], b = pos_[hi];
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (a + b);
      (interp(lo, hi, mid) > eps ? a : b) = mid;
    }
    return 0.5 * (a + b);
  }

 private:
  // monotone (chord-limited) cubic in log-log between adjacent knots
  double interp(int k0, int k1, double mu) const {
    const double x0 = pos_[k0], x1 = pos_[k1];
    const double y0 = q_[k0], y1 = q_[k1];
    if (y1 <= 0 || y0 <= 0 || x0 <= 0) {
      const double t = (mu - x0) / (x1 - x0);
      return y0 + t * (y1 - y0);
    }
    const double lx0 = std::log(x0), lx1 = std::log(x1);
    const double ly0 = std::log(y0), ly1 = std::log(y1);
    const double t = (std::log(mu) - lx0) / (lx1 - lx0);
    const double d = (ly1 - ly0);
    // Hermite with secant-limited end slopes (Fritsch-Carlson on the stencil)
    double m0 = d, m1 = d;
    if (k0 > 0 && pos_[k0 - 1] > 0 && q_[k0 - 1] > 0) {
      const double dl = (ly0 - std::log(q_[k0 - 1])) / (lx0 - std::log(pos_[k0 - 1]));
      m0 = harmonic_slope(dl, d);
    }
    if (k1 + 1 < static_cast<int>(pos_.size()) && q_[k1 + 1] > 0) {
      const double dr = (std::log(q_[k1 + 1]) - ly1) / (std::log(pos_[k1 + 1]) - lx1);
      m1 = harmonic_slope(d, dr);
    }
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    return std::exp(h00 * ly0 + h10 * m0 + h01 * ly1 + h11 * m1);
  }
  static double harmonic_slope(double a, double b) {
    if (a * b <= 0) return 0.0;
    return 2.0 * a * b / (a + b);
  }

  std::vector<double> pos_, q_;
  double total_ = 0;
};

void require_x_radial(const DiscreteField& f) {
  double m0 = 0, ml = 0;
  if (f.has_sector(0)) m0 = f.sector(0).cwiseAbs().maxCoeff();
  for (int l = 1; l < f.num_sectors(); ++l)
    if (f.has_sector(l)) ml = std::max(ml, f.sector(l).cwiseAbs().maxCoeff());
  if (ml > 1e-10 * std::max(m0, 1e-300))
    throw UnsupportedField("rearrange_x: l > 0 sectors carry mass above 1e-10");
}

}  // namespace

DiscreteField rearrange_x(const DiscreteField& f, int slice_samples, double sample_halfwidth) {
  const DiscreteField ph = f.to_phys();
  require_x_radial(ph);
  const FieldInterpolant itp(ph);
  const GridOps& ops = *ph.ops();
  const int Nu = ph.grid().Nu, Nv = ph.grid().Nv;
  const Eigen::VectorXd& v0 = ops.sector_basis(0).nodes();
  const double wn = sphere_area(ph.params().n);
  DiscreteField out(ph.params(), ph.grid(), Coord::Phys);
  out.sector(0).resize(Nu, Nv);
  std::vector<double> rows(Nu * Nv);
  parallel_for(static_cast<std::size_t>(Nu) * Nv, [&](std::size_t k) {
    const int i = static_cast<int>(k) / Nv;
    const int q = static_cast<int>(k) % Nv;
    const double w = std::exp(ops.u()[i]);
    const double rho = w * std::sqrt((1.0 + v0[q]) / 2.0);
    const double r = w * std::sqrt((1.0 - v0[q]) / 2.0);
    // the slice lives in {ln w >= ln rho}; skip it where the field is dead
    if (itp.bound_above(std::log(rho)) <= 1e-250) {
      rows[k] = 0.0;
      return;
    }
    SliceRearrangement slice(itp, rho, slice_samples, sample_halfwidth, ph.grid().U + 2.0, ph.params().n, r);
    rows[k] = slice.quantile(wn * std::pow(r, ph.params().n) / ph.params().n);
  });
  for (int i = 0; i < Nu; ++i)
    for (int q = 0; q < Nv; ++q) out.sector(0)(i, q) = rows[static_cast<std::size_t>(i) * Nv + q];
  return out;
}

double slice_superlevel(const DiscreteField& f, double rho, double eps, int slice_samples,
                        double sample_halfwidth) {
  const DiscreteField ph = f.to_phys();
  require_x_radial(ph);
  const FieldInterpolant itp(ph);
  SliceRearrangement slice(itp, rho, slice_samples, sample_halfwidth, ph.grid().U + 2.0, ph.params().n);
  return slice.superlevel(eps);
}

namespace {

// continuous cumulative of the 2*-mass in {u <= c}: the integrand is
// interpolated by the local cubic through four neighbouring rows, and cells
// are accumulated with the matching 4-point quadrature, so M(c) is C^0,
// O(h^4) accurate and exact at the nodes.
class MassCumulative {
 public:
  explicit MassCumulative(const DiscreteField& f) {
    const DiscreteField ph = f.to_phys();
    const GridOps& ops = *ph.ops();
    const int Nu = ph.grid().Nu, Nv = ph.grid().Nv;
    const double ts = ph.params().two_star, N = ph.params().dim();
    const auto& vw = ops.sector_basis(0).weights();
    u_ = ops.u();
    h_ = ops.h();
    rowint_.resize(Nu);
    for (int i = 0; i < Nu; ++i) {
      double s = 0;
      for (int q = 0; q < Nv; ++q)
        s += vw[q] * std::pow(std::abs(ph.sector(0)(i, q)), ts);
      rowint_[i] = ops.measure_prefactor() * std::exp(N * u_[i]) * s;
    }
    cum_.assign(Nu, 0.0);
    for (int i = 1; i < Nu; ++i) cum_[i] = cum_[i - 1] + std::max(0.0, cell_integral(i - 1, 1.0));
  }

  double operator()(double c) const {
    const int Nu = static_cast<int>(cum_.size());
    if (c <= u_[0]) return 0.0;
    if (c >= u_[Nu - 1]) return cum_[Nu - 1];
    const int i = static_cast<int>(std::floor((c - u_[0]) / h_));
    const double t = (c - u_[i]) / h_;
    return cum_[i] + std::clamp(cell_integral(i, t), 0.0, std::max(0.0, cell_integral(i, 1.0)));
  }

 private:
  // integral of the local cubic over [u_i, u_i + t h]
  double cell_integral(int i, double t) const {
    const int Nu = static_cast<int>(rowint_.size());
    auto f = [&](int k) { return rowint_[std::clamp(k, 0, Nu - 1)]; };
    const double a = f(i - 1), b = f(i), c = f(i + 1), d = f(i + 2);
    // cubic through values at t = -1, 0, 1, 2
    const double c0 = b;
    const double c1 = c - a / 3.0 - b / 2.0 - d / 6.0;
    const double c2 = (a + c) / 2.0 - b;
    const double c3 = (d - a) / 6.0 + (b - c) / 2.0;
    return h_ * t * (c0 + t * (c1 / 2.0 + t * (c2 / 3.0 + t * c3 / 4.0)));
  }

  Eigen::VectorXd u_;
  double h_ = 0;
  std::vector<double> rowint_, cum_;
};

}  // namespace

double mass_in_unit_ball(const DiscreteField& f) { return MassCumulative(f)(0.0); }

HalfMassResult half_mass_sigma(const DiscreteField& f, double c) {
  if (!(c > 0.0) || !(c < 1.0)) throw DomainError("half_mass_sigma: c must lie in (0, 1)");
  const double nrm = lp_norm(f, f.params().two_star);
  if (std::abs(nrm - 1.0) > 1e-8)
    throw NormalizationError("half_mass_sigma: field must have unit 2*-norm, got " +
                             format17(nrm));
  // (phi^sigma)^* = (phi^*)^sigma, so one rearrangement serves the whole scan;
  // each mass evaluation then dilates the rearranged field and cuts at w = 1,
  // the same discrete functional the re-verification uses.
  const DiscreteField star = rearrange_x(f);
  auto mass = [&](double lnsig) {
    return mass_in_unit_ball(dilate(star, std::exp(lnsig)));
  };

  HalfMassResult res;
  const double lo = std::log(1e-6), hi = std::log(1e6);
  std::vector<double> lnsig;
  for (double x = lo; x <= hi + 1e-12; x += std::log(2.0)) lnsig.push_back(x);
  double prev = mass(lnsig[0]) - c;
  std::vector<std::pair<double, double>> brackets;
  for (std::size_t i = 1; i < lnsig.size(); ++i) {
    const double cur = mass(lnsig[i]) - c;
    if ((prev < 0 && cur >= 0) || (prev > 0 && cur <= 0)) brackets.push_back({lnsig[i - 1], lnsig[i]});
    prev = cur;
  }
  if (brackets.empty())
    throw BracketError("half_mass_sigma: no crossing on the scanned sigma range");
  for (auto [a, b] : brackets) {
    double fa = mass(a) - c;
    for (int it = 0; it < 200 && (std::exp(b) - std::exp(a)) > 1e-8 * std::exp(a); ++it) {
      const double mmid = 0.5 * (a + b);
      const double fm = mass(mmid) - c;
      if ((fa < 0 && fm < 0) || (fa > 0 && fm > 0)) {
        a = mmid;
        fa = fm;
      } else {
        b = mmid;
      }
    }
    res.all_crossings.push_back(std::exp(0.5 * (a + b)));
  }
  std::sort(res.all_crossings.begin(), res.all_crossings.end());
  res.sigma = res.all_crossings.front();
  return res;
}

std::vector<double> default_eps_schedule() {
  std::vector<double> eps;
  const int n = 12;
  for (int i = 0; i < n; ++i)
    eps.push_back(0.2 * std::pow(1e-3 / 0.2, static_cast<double>(i) / (n - 1)));
  return eps;
}

StabilityReport stability_scan(const Params& p, const DiscreteField& psi_in,
                               const std::vector<double>& eps_schedule, double gap) {
  const DiscreteField psi = psi_in.to_log();
  const GridSpec& g = psi.grid();
  if (std::abs(h1_norm(psi) - 1.0) > 1e-8)
    throw NormalizationError("stability_scan: psi must be H1-normalized");
  const DiscreteField F = extremal_field(p, ExtremalCoords{}, g);
  const DiscreteField dF = extremal_field(p, ExtremalCoords{}, g, ExtremalDeriv::Dt);
  const Complex ip_f = h1_inner(psi, F);
  double ortho = std::max(std::abs(ip_f.real()), std::abs(ip_f.imag()));
  ortho = std::max(ortho, std::abs(h1_inner(psi, dF)));
  if (g.Lmax >= 1) {
    const DiscreteField tx = extremal_field(p, ExtremalCoords{}, g, ExtremalDeriv::Dx1);
    ortho = std::max(ortho, std::abs(h1_inner(psi, tx)) / h1_norm(tx));
  }
  if (ortho > 1e-8)
    throw NormalizationError("stability_scan: psi is not orthogonal to the null modes, residual " +
                             format17(ortho));

  StabilityReport rep;
  rep.gap = gap;
  rep.rayleigh = rayleigh_quotient(p, psi);
  rep.rows.resize(eps_schedule.size());
  std::vector<double> eps_sorted = eps_schedule;
  std::sort(eps_sorted.rbegin(), eps_sorted.rend());
  for (std::size_t k = 0; k < eps_sorted.size(); ++k) {
    const double e = eps_sorted[k];
    DiscreteField phi = F;
    phi += Complex(e, 0.0) * psi;
    StabilityRow row;
    row.eps = e;
    row.deficit = deficit(phi);
    row.delta = distance_to_manifold(phi).delta;
    row.ratio = row.deficit / (row.delta * row.delta);
    rep.rows[k] = row;
  }

  // fit on the smallest third of the schedule
  const std::size_t nfit = std::max<std::size_t>(3, rep.rows.size() / 3);
  std::vector<double> lx, ly, c2;
  for (std::size_t k = rep.rows.size() - nfit; k < rep.rows.size(); ++k) {
    lx.push_back(std::log(rep.rows[k].delta));
    ly.push_back(std::log(std::max(rep.rows[k].deficit, 1e-300)));
    c2.push_back(ly.back() - 2.0 * lx.back());
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / lx.size();
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / ly.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  rep.fitted_exponent = sxy / sxx;
  rep.fitted_coefficient = std::exp(std::accumulate(c2.begin(), c2.end(), 0.0) / c2.size());
  rep.pass_exponent = std::abs(rep.fitted_exponent - 2.0) <= 0.1;
  rep.pass_coefficient = !std::isnan(gap) && rep.fitted_coefficient >= 0.95 * gap &&
                         rep.fitted_coefficient <= 1.05 * rep.rayleigh;

  for (const auto& row : rep.rows)
    rep.beta_ratios.push_back(row.deficit / std::pow(row.delta, 1.5));
  rep.beta_monotone = true;
  for (std::size_t k = rep.rows.size() - nfit; k + 1 < rep.rows.size(); ++k)
    if (!(rep.beta_ratios[k + 1] < rep.beta_ratios[k])) rep.beta_monotone = false;
  return rep;
}

}  // namespace sslab
