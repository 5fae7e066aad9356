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

#include "sslab/extremals.hpp"

#include <algorithm>
#include <cmath>

namespace sslab {

namespace {

// Adaptive trapezoid on the log axis w = e^s. Doubles the resolution until
// two consecutive levels agree to rel_tol. Spectrally accurate for the
// analytic, two-sided-decaying integrands used here.
double radial_integral(const std::function<double(double)>& g_of_w, double rel_tol) {
  const double S = 50.0;
  double prev = 0;
  for (int level = 0; level < 6; ++level) {
    const int n = 4096 << level;
    const double ds = 2.0 * S / n;
    std::vector<double> terms(n);
    for (int i = 0; i < n; ++i) {
      const double w = std::exp(-S + i * ds);
      terms[i] = g_of_w(w) * w * ds;  // dw = w ds
    }
    const double cur = pairwise_sum(terms);
    if (level > 0 && std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw ConvergenceError("radial_integral: refinement stalled");
}

}  // namespace

void normalize_extremal(Params& p) {
  const double g = p.gamma, N = p.dim(), ts = p.two_star;
  const double wN = sphere_area(N);
  const double IH = radial_integral(
      [g, N](double w) {
        const double d = 2.0 * g * w * std::pow(1.0 + w * w, -g - 1.0);
        return d * d * std::pow(w, N - 1.0);
      },
      1e-13);
  const double Ip = radial_integral(
      [g, N, ts](double w) { return std::pow(1.0 + w * w, -g * ts) * std::pow(w, N - 1.0); },
      1e-13);
  p.k0 = 1.0 / std::sqrt(wN * IH);
  p.C = *p.k0 * std::pow(wN * Ip, 1.0 / ts);
}

void normalize_extremal(Params& p, const GridSpec& g) {
  normalize_extremal(p);
  const DiscreteField F = extremal_field(p, ExtremalCoords{}, g);
  const double h1 = h1_norm(F);
  const double lp = lp_norm(F, p.two_star);
  if (std::abs(h1 - 1.0) > 1e-8)
    throw ConvergenceError("normalize_extremal: grid gradient norm of F is " + format17(h1));
  if (std::abs(lp - *p.C) > 1e-8 * *p.C)
    throw ConvergenceError("normalize_extremal: grid sharp ratio " + format17(lp) +
                           " disagrees with 1-D value " + format17(*p.C));
}

DiscreteField extremal_field(const Params& p, const ExtremalCoords& c, const GridSpec& g,
                             ExtremalDeriv d) {
  if (!(c.t > 0)) throw DomainError("extremal_field: t must be positive");
  const double k0 = p.norm_k0();
  const double gam = p.gamma;
  const double lt = std::log(c.t);

  if (c.x0 != 0.0) {
    if (d != ExtremalDeriv::None)
      throw DomainError("extremal_field: derivatives are only supported at x0 = 0");
    const double t = c.t, x0 = c.x0;
    FieldEvaluator ev;
    ev.zeta_independent = false;
    ev.f = [k0, gam, t, x0, z = c.z](double rho, double r, double s) {
      const double q = 1.0 + t * t * rho * rho + t * t * (r * r - 2.0 * r * x0 * s + x0 * x0);
      return z * k0 * std::pow(t, gam) * std::pow(q, -gam);
    };
    return sample_field(p, g, ev).to_log();
  }

  DiscreteField out(p, g, Coord::Log);
  const GridOps& ops = *out.ops();
  const int Nu = g.Nu, Nv = g.Nv;
  Eigen::VectorXcd prof(Nu);
  switch (d) {
    case ExtremalDeriv::None:
      for (int i = 0; i < Nu; ++i)
        prof[i] = c.z * k0 * std::pow(2.0 * std::cosh(ops.u()[i] + lt), -gam);
      out.sector(0) = prof * Eigen::RowVectorXd::Ones(Nv);
      break;
    case ExtremalDeriv::Du:
    case ExtremalDeriv::Dt: {
      const double scale = (d == ExtremalDeriv::Dt) ? 1.0 / c.t : 1.0;
      for (int i = 0; i < Nu; ++i) {
        const double x = ops.u()[i] + lt;
        prof[i] = -scale * c.z * gam * k0 * std::pow(2.0, -gam) *
                  std::pow(std::cosh(x), -gam - 1.0) * std::sinh(x);
      }
      out.sector(0) = prof * Eigen::RowVectorXd::Ones(Nv);
      break;
    }
    case ExtremalDeriv::Dx1: {
      // d/dx1 [z F] = z F'(w) sin(theta) cos(chi); factored l = 1 content
      // in log coordinates: -z gamma k0 t 2^{-gamma} sech^{gamma+1}(u+ln t) / sqrt(n)
      for (int i = 0; i < Nu; ++i) {
        const double x = ops.u()[i] + lt;
        prof[i] = -c.z * gam * k0 * c.t * std::pow(2.0, -gam) *
                  std::pow(std::cosh(x), -gam - 1.0) / std::sqrt(static_cast<double>(p.n));
      }
      if (g.Lmax < 1) throw DomainError("extremal_field: Dx1 needs Lmax >= 1");
      out.sector(1) = prof * Eigen::RowVectorXd::Ones(Nv);
      break;
    }
  }
  return out;
}

double deficit(const DiscreteField& f) {
  const double C = f.params().sharp_C();
  const double h1 = h1_norm(f);
  const double lp = lp_norm(f, f.params().two_star);
  return C * C * h1 * h1 - lp * lp;
}

namespace {

struct Objective {
  const DiscreteField* phi;
  const Params* p;
  const GridSpec* g;

  Complex pairing(double logt, double x0) const {
    ExtremalCoords c;
    c.t = std::exp(logt);
    c.x0 = x0;
    return h1_inner(*phi, extremal_field(*p, c, *g));
  }
  double value(double logt, double x0) const { return std::abs(pairing(logt, x0)); }
  // d/d(log t) of |pairing|^2 via the analytic t-tangent
  double dlogt(double logt, double x0) const {
    if (x0 != 0.0) {
      const double e = 1e-5;
      const double a = value(logt + e, x0), b = value(logt - e, x0);
      return (a * a - b * b) / (2.0 * e);
    }
    ExtremalCoords c;
    c.t = std::exp(logt);
    const Complex v = pairing(logt, 0.0);
    const Complex dv = h1_inner(*phi, extremal_field(*p, c, *g, ExtremalDeriv::Du));
    return 2.0 * (std::conj(v) * dv).real();
  }
};

}  // namespace

DistanceResult distance_to_manifold(const DiscreteField& f, const DistanceOpts& opts) {
  const DiscreteField phi = f.to_log();
  const double nrm2 = h1_inner(phi, phi).real();
  if (!(nrm2 > 0)) throw NullField("distance_to_manifold: zero field");
  const Params& p = phi.params();
  (void)p.sharp_C();  // require normalized params

  Objective obj{&phi, &p, &phi.grid()};
  const bool scan_x0 = opts.force_x0_search || !phi.zeta_independent();

  // coarse grid; ties break toward smallest |log t| then smallest |x0|
  double best = -1, bt = 0, bx = 0;
  std::vector<double> x0s;
  if (scan_x0) {
    for (int j = 0; j < opts.coarse_x0; ++j)
      x0s.push_back(-opts.x0_range + 2.0 * opts.x0_range * j / (opts.coarse_x0 - 1));
  } else {
    x0s.push_back(0.0);
  }
  std::vector<double> lts(opts.coarse_t);
  for (int i = 0; i < opts.coarse_t; ++i)
    lts[i] = -opts.logt_range + 2.0 * opts.logt_range * i / (opts.coarse_t - 1);
  std::vector<double> vals(lts.size() * x0s.size());
  parallel_for(vals.size(), [&](std::size_t k) {
    vals[k] = obj.value(lts[k / x0s.size()], x0s[k % x0s.size()]);
  });
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const double lt = lts[k / x0s.size()], x0 = x0s[k % x0s.size()];
    const bool better =
        vals[k] > best + 1e-15 ||
        (std::abs(vals[k] - best) <= 1e-15 &&
         (std::abs(lt) < std::abs(bt) ||
          (std::abs(lt) == std::abs(bt) && std::abs(x0) < std::abs(bx))));
    if (better) {
      best = vals[k];
      bt = lt;
      bx = x0;
    }
  }

  // simplex-style local refinement (coordinate shrinking steps)
  double step_t = 2.0 * opts.logt_range / (opts.coarse_t - 1);
  double step_x = scan_x0 ? 2.0 * opts.x0_range / (opts.coarse_x0 - 1) : 0.0;
  for (int it = 0; it < opts.max_iter && (step_t > 1e-8 || step_x > 1e-8); ++it) {
    bool moved = false;
    for (double s : {step_t, -step_t}) {
      const double v = obj.value(bt + s, bx);
      if (v > best) {
        best = v;
        bt += s;
        moved = true;
      }
    }
    if (scan_x0) {
      for (double s : {step_x, -step_x}) {
        const double v = obj.value(bt, bx + s);
        if (v > best) {
          best = v;
          bx += s;
          moved = true;
        }
      }
    }
    if (!moved) {
      step_t *= 0.5;
      step_x *= 0.5;
    }
  }

  // polish the log-t stationarity condition: bracket the sign change of
  // d|pairing|^2/d(log t) around the located maximum, then bisect
  bool converged = false;
  {
    double lo = bt, hi = bt;
    double dlo = obj.dlogt(lo, bx), dhi = dlo;
    for (double step = 1e-4; step <= 0.26; step *= 4.0) {
      lo = bt - step;
      hi = bt + step;
      dlo = obj.dlogt(lo, bx);
      dhi = obj.dlogt(hi, bx);
      if (dlo >= 0.0 && dhi <= 0.0) break;
    }
    if (dlo >= 0.0 && dhi <= 0.0) {
      for (int it = 0; it < 100 && hi - lo > std::max(opts.tol, 1e-14); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double dm = obj.dlogt(mid, bx);
        if (dm >= 0.0)
          lo = mid;
        else
          hi = mid;
      }
      bt = 0.5 * (lo + hi);
      const double vb = obj.value(bt, bx);
      if (vb > best) best = vb;
      converged = true;
    }
  }
  if (!converged) throw ConvergenceError("distance_to_manifold: stationarity polish stalled");

  DistanceResult r;
  ExtremalCoords c;
  c.t = std::exp(bt);
  c.x0 = bx;
  const DiscreteField Fbest = extremal_field(p, c, phi.grid());
  const Complex z = h1_inner(phi, Fbest);
  c.z = z;
  r.argmin = c;
  r.delta = std::sqrt(std::max(0.0, nrm2 - std::norm(z)));
  r.converged = converged;
  // <phi - z F, F> vanishes identically at the optimal z; recompute honestly.
  r.orth_residual_F = std::abs(h1_inner(phi, Fbest) - z * h1_inner(Fbest, Fbest));
  DiscreteField dF(p, phi.grid(), Coord::Log);
  if (bx == 0.0) {
    dF = extremal_field(p, c, phi.grid(), ExtremalDeriv::Dt);
  } else {
    const double e = 1e-5 * c.t;
    dF = extremal_field(p, ExtremalCoords{1.0, c.t + e, bx}, phi.grid());
    dF += Complex(-1.0, 0.0) * extremal_field(p, ExtremalCoords{1.0, c.t - e, bx}, phi.grid());
    dF *= Complex(1.0 / (2.0 * e), 0.0);
  }
  r.orth_residual_dF =
      std::abs(h1_inner(phi, dF) - z * h1_inner(Fbest, dF)) / std::max(1.0, h1_norm(dF));
  return r;
}

double el_residual(const Params& p, const GridSpec& g, double t, double z) {
  if (!(t > 0)) throw DomainError("el_residual: t must be positive");
  if (!(z > 0)) throw DomainError("el_residual: z must be positive");
  const double C = p.sharp_C(), k0 = p.norm_k0();
  const double gam = p.gamma, ts = p.two_star;
  validate_grid(g);
  const int Nu = g.Nu;
  const double h = 2.0 * g.U / Nu;
  Eigen::VectorXd xi(Nu);
  for (int i = 0; i < Nu; ++i) {
    const double u = -g.U + i * h + std::log(t);
    xi[i] = z * k0 * std::pow(2.0 * std::cosh(u), -gam);
  }
  // periodic 4th-order second-derivative stencil
  auto at = [&](int i) { return xi[(i % Nu + Nu) % Nu]; };
  std::vector<double> terms(Nu);
  for (int i = 0; i < Nu; ++i) {
    const double d2 =
        (-at(i - 2) + 16.0 * at(i - 1) - 30.0 * at(i) + 16.0 * at(i + 1) - at(i + 2)) /
        (12.0 * h * h);
    const double r = std::pow(xi[i], ts - 1.0) - std::pow(C, ts) * (gam * gam * xi[i] - d2);
    terms[i] = h * r * r;
  }
  return std::sqrt(pairwise_sum(terms));
}

double bliss_ratio(const std::function<double(double)>& profile, double p, double N) {
  if (!(p > 1.0) || !(p < N)) throw DomainError("bliss_ratio: need 1 < p < N");
  const double ps = p * N / (N - p);
  const double wN = sphere_area(N);
  const double S = 40.0;
  double prev = 0, ratio = 0;
  for (int level = 0; level < 5; ++level) {
    const int n = 8192 << level;
    const double ds = 2.0 * S / n;
    std::vector<double> tnum(n), tden(n);
    for (int i = 0; i < n; ++i) {
      const double s = -S + i * ds;
      const double w = std::exp(s);
      // 4th-order derivative on the log axis: phi'(w) = (1/w) d phi/ds
      const double dphi = (-profile(std::exp(s + 2 * ds)) + 8 * profile(std::exp(s + ds)) -
                           8 * profile(std::exp(s - ds)) + profile(std::exp(s - 2 * ds))) /
                          (12.0 * ds * w);
      tnum[i] = std::pow(std::abs(profile(w)), ps) * std::pow(w, N - 1.0) * w * ds;
      tden[i] = std::pow(std::abs(dphi), p) * std::pow(w, N - 1.0) * w * ds;
    }
    const double num = std::pow(wN * pairwise_sum(tnum), 1.0 / ps);
    const double den = std::pow(wN * pairwise_sum(tden), 1.0 / p);
    if (!(den > 0)) throw NullField("bliss_ratio: zero gradient norm");
    ratio = num / den;
    if (level > 0 && std::abs(ratio - prev) <= 1e-10 * std::abs(ratio)) return ratio;
    prev = ratio;
  }
  return ratio;
}

}  // namespace sslab
