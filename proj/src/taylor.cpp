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

#include "sslab/taylor.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <random>

namespace sslab {

WeightedSpace::WeightedSpace(Eigen::VectorXd w) : weights(std::move(w)) {
  if (weights.size() < 1) throw DomainError("WeightedSpace: dimension must be >= 1");
  for (int i = 0; i < weights.size(); ++i)
    if (!(weights[i] > 0) || !std::isfinite(weights[i]))
      throw DomainError("WeightedSpace: weights must be positive and finite");
}

double WeightedSpace::lp(const Eigen::VectorXcd& f, double p) const {
  double s = 0;
  for (int i = 0; i < f.size(); ++i) s += weights[i] * std::pow(std::abs(f[i]), p);
  return std::pow(s, 1.0 / p);
}

double WeightedSpace::lp(const Eigen::VectorXd& f, double p) const {
  double s = 0;
  for (int i = 0; i < f.size(); ++i) s += weights[i] * std::pow(std::abs(f[i]), p);
  return std::pow(s, 1.0 / p);
}

Eigen::VectorXcd duality_map(const Eigen::VectorXcd& f, double p, const WeightedSpace& sp) {
  const double nrm = sp.lp(f, p);
  if (!(nrm > 0)) throw NullField("duality_map: zero function");
  Eigen::VectorXcd out(f.size());
  const double scale = std::pow(nrm, 1.0 - p);
  for (int i = 0; i < f.size(); ++i) {
    const double a = std::abs(f[i]);
    out[i] = (a == 0.0) ? Complex(0, 0) : scale * std::pow(a, p - 2.0) * std::conj(f[i]);
  }
  return out;
}

TaylorConstants taylor_constants(double p) {
  if (!(p > 2.0)) throw DomainError("taylor_constants: p must exceed 2");
  TaylorConstants c;
  c.kappa_high_branch = std::numeric_limits<double>::quiet_NaN();
  c.kappa_low_branch = std::numeric_limits<double>::quiet_NaN();
  if (p >= 4.0) c.kappa_high_branch = (4.0 / 3.0) * (5.0 * p * p - 12.0 * p + 7.0);
  if (p <= 4.0)
    c.kappa_low_branch = 16.0 * (p - 1.0) / (p * (p + 2.0)) *
                         (4.0 * (p - 2.0) + std::pow(3.0 * p / (p - 2.0), 0.5 * p - 1.0));
  if (p >= 4.0) {
    c.beta = 3.0;
    c.kappa = std::isnan(c.kappa_low_branch) ? c.kappa_high_branch
                                             : std::min(c.kappa_high_branch, c.kappa_low_branch);
  } else {
    c.beta = 1.0 + 0.5 * p;
    c.kappa = c.kappa_low_branch;
  }
  return c;
}

namespace {

void require_unit(const Eigen::VectorXd& f, double p, const WeightedSpace& sp, const char* who) {
  if (std::abs(sp.lp(f, p) - 1.0) > 1e-10)
    throw NormalizationError(std::string(who) + ": f must have unit p-norm");
}

}  // namespace

LResult apply_L(const Eigen::VectorXd& f, double p, const Eigen::VectorXd& xi,
                const Eigen::VectorXd& eta, const WeightedSpace& sp) {
  require_unit(f, p, sp, "apply_L");
  const int n = sp.dim();
  Eigen::VectorXd fp2(n);  // |f|^{p-2}
  for (int i = 0; i < n; ++i) fp2[i] = std::pow(std::abs(f[i]), p - 2.0);
  double pair = 0;
  for (int i = 0; i < n; ++i) pair += sp.weights[i] * f[i] * fp2[i] * xi[i];
  LResult r;
  r.re.resize(n);
  r.im.resize(n);
  for (int i = 0; i < n; ++i) {
    r.re[i] = -(p - 2.0) * pair * f[i] * fp2[i] + (p - 1.0) * fp2[i] * xi[i];
    r.im[i] = fp2[i] * eta[i];
  }
  return r;
}

double l_quadratic_form(const Eigen::VectorXd& f, double p, const Eigen::VectorXd& xi,
                        const Eigen::VectorXd& eta, const WeightedSpace& sp) {
  const LResult L = apply_L(f, p, xi, eta, sp);
  double s = 0;
  for (int i = 0; i < sp.dim(); ++i) s += sp.weights[i] * (L.re[i] * xi[i] + L.im[i] * eta[i]);
  return s;
}

double p_prime0(const Eigen::VectorXd& f, double p, const Eigen::VectorXd& xi,
                const WeightedSpace& sp) {
  double s = 0;
  for (int i = 0; i < sp.dim(); ++i)
    s += sp.weights[i] * f[i] * std::pow(std::abs(f[i]), p - 2.0) * xi[i];
  return 2.0 * s;
}

TaylorReport remainder_check(const Eigen::VectorXd& f, const Eigen::VectorXcd& psi, double p,
                             const std::vector<double>& eps_list, const WeightedSpace& sp) {
  require_unit(f, p, sp, "remainder_check");
  if (std::abs(sp.lp(psi, p) - 1.0) > 1e-10)
    throw NormalizationError("remainder_check: psi must have unit p-norm");
  const Eigen::VectorXd xi = psi.real(), eta = psi.imag();
  TaylorReport rep;
  rep.p = p;
  rep.constants = taylor_constants(p);
  const double d1 = p_prime0(f, p, xi, sp);
  const double d2 = l_quadratic_form(f, p, xi, eta, sp);
  for (double e : eps_list) {
    if (std::abs(e) > 1.0) throw DomainError("remainder_check: eps must lie in [-1, 1]");
    Eigen::VectorXcd g = f.cast<Complex>() + e * psi;
    const double P = std::pow(sp.lp(g, p), 2.0);
    const double model = 1.0 + d1 * e + d2 * e * e;
    const double lhs = std::abs(P - model);
    const double rhs = rep.constants.kappa * std::pow(std::abs(e), rep.constants.beta);
    rep.eps.push_back(e);
    rep.lhs.push_back(lhs);
    rep.rhs.push_back(rhs);
    rep.margins.push_back(rhs - lhs);
  }
  rep.pass = true;
  for (double m : rep.margins)
    if (!(m >= -1e-12)) rep.pass = false;
  return rep;
}

ConvexityMargins convexity_checks(const Eigen::VectorXcd& h1, const Eigen::VectorXcd& h2, double p,
                                  const WeightedSpace& sp) {
  const double n1 = sp.lp(h1, p), n2 = sp.lp(h2, p);
  if (!(n1 > 0) || !(n2 > 0)) throw NullField("convexity_checks: zero input");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ConvexityMargins m;

  // duality-map Hoelder continuity
  const double dd = sp.lp(Eigen::VectorXcd(duality_map(h1, p, sp) - duality_map(h2, p, sp)),
                          p / (p - 1.0));
  const double dn = sp.lp(Eigen::VectorXcd(h1 - h2), p);
  if (p >= 2.0)
    m.duality_holder = 4.0 * (p - 1.0) * dn / (n1 + n2) - dd;
  else
    m.duality_holder = 2.0 * std::pow(p / (p - 1.0) * dn / (n1 + n2), p - 1.0) - dd;

  // ||h1 + h2||_p upper bounds; ordering requires ||h1|| <= ||h2||
  const Eigen::VectorXcd& a = (n1 <= n2) ? h1 : h2;
  const Eigen::VectorXcd& b = (n1 <= n2) ? h2 : h1;
  const double na = std::min(n1, n2), nb = std::max(n1, n2);
  const double sum = sp.lp(Eigen::VectorXcd(a + b), p);
  const double diff = sp.lp(Eigen::VectorXcd(a / na - b / nb), p);
  m.norm_sum_1 = (p <= 2.0) ? (na + nb - 0.25 * (p - 1.0) * na * diff * diff - sum) : nan;
  m.norm_sum_2 =
      (p >= 2.0) ? (na + nb - na / (p * std::pow(2.0, p - 1.0)) * std::pow(diff, p) - sum) : nan;
  return m;
}

namespace {

Eigen::VectorXcd random_complex(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(g(rng), g(rng));
  return v;
}

}  // namespace

RandomSuiteResult random_remainder_suite(int trials, int max_dim, std::uint64_t seed) {
  RandomSuiteResult res;
  res.trials = trials;
  res.worst_margin = std::numeric_limits<double>::infinity();
  std::vector<double> margins(trials);
  parallel_for(trials, [&](std::size_t k) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ull * (k + 1));
    std::uniform_int_distribution<int> dim_d(1, max_dim);
    std::uniform_real_distribution<double> p_d(2.0 + 1e-3, 8.0), e_d(-1.0, 1.0), w_d(0.1, 2.0);
    const int n = dim_d(rng);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = w_d(rng);
    WeightedSpace sp(w);
    const double p = p_d(rng);
    std::normal_distribution<double> g;
    Eigen::VectorXd f(n);
    for (int i = 0; i < n; ++i) f[i] = g(rng);
    if (sp.lp(f, p) == 0) f.setConstant(1.0);
    f /= sp.lp(f, p);
    Eigen::VectorXcd psi = random_complex(rng, n);
    psi /= sp.lp(psi, p);
    const double e = e_d(rng);
    const TaylorReport rep = remainder_check(f, psi, p, {e}, sp);
    margins[k] = rep.margins[0];
    if (!rep.pass) {
      std::cerr << "remainder-bound failure: p=" << format17(p) << " eps=" << format17(e)
                << " margin=" << format17(rep.margins[0]) << " dim=" << n << " seed-index=" << k
                << "\n";
    }
  });
  for (double m : margins) {
    res.worst_margin = std::min(res.worst_margin, m);
    if (!(m >= -1e-12)) ++res.failures;
  }
  return res;
}

RandomSuiteResult random_convexity_suite(int trials, int max_dim, std::uint64_t seed) {
  RandomSuiteResult res;
  res.trials = trials;
  res.worst_margin = std::numeric_limits<double>::infinity();
  std::vector<double> margins(trials);
  // both Hoelder branches and both norm-sum inequalities get exercised
  const double pchoices[8] = {1.2, 1.5, 1.8, 2.0, 2.5, 3.0, 4.0, 7.0};
  parallel_for(trials, [&](std::size_t k) {
    std::mt19937_64 rng(seed + 0xbf58476d1ce4e5b9ull * (k + 1));
    std::uniform_int_distribution<int> dim_d(1, max_dim), p_d(0, 7);
    std::uniform_real_distribution<double> w_d(0.1, 2.0);
    const int n = dim_d(rng);
    Eigen::VectorXd w(n);
    for (int i = 0; i < n; ++i) w[i] = w_d(rng);
    WeightedSpace sp(w);
    const double p = pchoices[p_d(rng)];
    Eigen::VectorXcd h1 = random_complex(rng, n), h2 = random_complex(rng, n);
    const ConvexityMargins m = convexity_checks(h1, h2, p, sp);
    double worst = m.duality_holder;
    if (!std::isnan(m.norm_sum_1)) worst = std::min(worst, m.norm_sum_1);
    if (!std::isnan(m.norm_sum_2)) worst = std::min(worst, m.norm_sum_2);
    margins[k] = worst;
    if (!(worst >= -1e-12))
      std::cerr << "convexity failure: p=" << format17(p) << " margin=" << format17(worst)
                << " dim=" << n << " seed-index=" << k << "\n";
  });
  for (double m : margins) {
    res.worst_margin = std::min(res.worst_margin, m);
    if (!(m >= -1e-12)) ++res.failures;
  }
  return res;
}

}  // namespace sslab
