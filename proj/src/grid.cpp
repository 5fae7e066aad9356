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

#include "sslab/grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

namespace sslab {

GridSpec default_grid(const Params& p) {
  GridSpec g;
  g.U = std::max(30.0 / p.gamma, 20.0);
  g.Nu = 512;
  g.Nv = 24;
  g.Lmax = 2;
  return g;
}

void validate_grid(const GridSpec& g) {
  if (!(g.U > 0)) throw DomainError("GridSpec: U must be positive");
  if (g.Nu < 16 || g.Nu % 2 != 0) throw DomainError("GridSpec: Nu must be an even integer >= 16");
  if (g.Nv < 4) throw DomainError("GridSpec: Nv must be >= 4");
  if (g.Lmax < 0) throw DomainError("GridSpec: Lmax must be >= 0");
}

GridOps::GridOps(const Params& p, const GridSpec& g) : params_(p), spec_(g) {
  validate_grid(g);
  const int Nu = g.Nu;
  h_ = 2.0 * g.U / Nu;
  u_.resize(Nu);
  for (int i = 0; i < Nu; ++i) u_[i] = -g.U + i * h_;

  // Periodic spectral differentiation matrix for even Nu (period 2U):
  // D_jk = (pi / (2U)) (-1)^{j-k} cot(pi (j-k) / Nu), zero diagonal.
  D_.setZero(Nu, Nu);
  const double c = M_PI / (2.0 * g.U);
  for (int j = 0; j < Nu; ++j) {
    for (int k = 0; k < Nu; ++k) {
      if (j == k) continue;
      const int d = j - k;
      const double sgn = (d % 2 == 0) ? 1.0 : -1.0;
      D_(j, k) = c * sgn / std::tan(M_PI * d / Nu);
    }
  }
  DtD_ = h_ * (D_.transpose() * D_);
  DtD_ = 0.5 * (DtD_ + DtD_.transpose().eval());  // enforce exact symmetry

  const double N = p.dim();
  pref_ = sphere_area(p.m) * sphere_area(p.n) * std::pow(2.0, -0.5 * N);

  const double a = 0.5 * (p.n - 2), b = 0.5 * (p.m - 2);
  sector_.reserve(g.Lmax + 1);
  for (int l = 0; l <= g.Lmax; ++l) sector_.emplace_back(g.Nv, a + l, b);
  cross_.reserve(g.Lmax + 1);
  for (int l = 0; l <= g.Lmax; ++l) cross_.push_back(sector_[l].values_at(sector_[0].nodes()));

  // Zonal-angle rule: s = cos(chi) with density prop. to (1-s^2)^{(n-3)/2};
  // normalized to a probability measure. ghat rows are the orthonormal zonal
  // harmonics evaluated at the nodes.
  const int nG = std::max(32, 4 * (g.Lmax + 1));
  JacobiBasis ang(nG, 0.5 * (p.n - 3), 0.5 * (p.n - 3));
  s_nodes_ = ang.nodes();
  s_weights_ = ang.weights() / ang.total_weight();
  JacobiBasis angL(std::max(g.Lmax + 1, 2), 0.5 * (p.n - 3), 0.5 * (p.n - 3));
  ghat_ = std::sqrt(angL.total_weight()) * angL.values_at(s_nodes_);
}

double GridOps::sector_factor(int l) const { return std::pow(2.0, -static_cast<double>(l)); }

const JacobiBasis& GridOps::sector_basis(int l) const {
  if (l < 0 || l > spec_.Lmax) throw DomainError("sector_basis: l out of range");
  return sector_[l];
}

const Eigen::MatrixXd& GridOps::cross_values(int l) const {
  if (l < 0 || l > spec_.Lmax) throw DomainError("cross_values: l out of range");
  return cross_[l];
}

double GridOps::angular_eigenvalue(int l, int j) const {
  const double g = params_.gamma;
  return l * (l + 2.0 * g) + 4.0 * j * (j + g + l);
}

Eigen::MatrixXd GridOps::interpolation_matrix(const Eigen::VectorXd& u_targets) const {
  const int Nu = spec_.Nu;
  const double L = 2.0 * spec_.U;
  Eigen::MatrixXd S(u_targets.size(), Nu);
  for (int q = 0; q < u_targets.size(); ++q) {
    for (int k = 0; k < Nu; ++k) {
      double d = u_targets[q] - u_[k];
      d -= L * std::round(d / L);
      if (std::abs(d) < 1e-14) {
        S(q, k) = 1.0;
      } else {
        // cardinal function of the even-N trigonometric interpolant
        S(q, k) = std::sin(M_PI * d / h_) / (Nu * std::tan(M_PI * d / L));
      }
    }
  }
  return S;
}

namespace {
std::mutex cache_mutex;
std::map<std::tuple<double, int, double, int, int, int>, GridOpsPtr> cache;
}  // namespace

GridOpsPtr make_grid_ops(const Params& p, const GridSpec& g) {
  const auto key = std::make_tuple(p.m, p.n, g.U, g.Nu, g.Nv, g.Lmax);
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto ops = std::make_shared<const GridOps>(p, g);
  if (cache.size() > 32) cache.clear();
  cache.emplace(key, ops);
  return ops;
}

}  // namespace sslab
