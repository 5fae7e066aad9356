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

#ifndef SSLAB_SPECTRAL_HPP
#define SSLAB_SPECTRAL_HPP

#include <map>
#include <string>

#include "sslab/extremals.hpp"
#include "sslab/field.hpp"

namespace sslab {

enum class Part { Re, Im };
enum class OperatorVariant { A, Ahat };

/// Second-variation sector operator in the factored basis
/// {u-grid nodes} x {shifted-weight Jacobi polynomials}.
///
/// On sector l the angular part of the quadratic form contributes the
/// constant Theta_{l,j} = l(l + 2 gamma) + 4 j (j + gamma + l) per Jacobi
/// order j, so the pair (K, M) splits into independent u-blocks. M is the
/// discrete H^1 Gram matrix (the A-form); K = C^2 M - L with the
/// multiplication potential and, for the real l = 0 part, the rank-one
/// projection in the j = 0 block.
struct SectorOperator {
  Params params;
  GridSpec grid;
  double t = 1.0;
  int l = 0;
  Part part = Part::Re;
  OperatorVariant variant = OperatorVariant::A;
  bool recentered = true;
  bool window_warning = false;
  std::string basis;  // descriptor

  struct Block {
    int j = 0;
    Eigen::MatrixXd K;
    Eigen::MatrixXd M;
  };
  std::vector<Block> blocks;

  /// Quadratic forms on a factored sector field (u x v values).
  double form_K(const Eigen::MatrixXd& eta) const;
  double form_M(const Eigen::MatrixXd& eta) const;
  /// A-form minus the Ahat-form on the same vector; nonnegative node-wise.
  double form_A_minus_Ahat(const Eigen::MatrixXd& eta) const;
};

/// Assembles the (l, part) sector of C^2 A - L at parameter t. With
/// recenter = true (default) the u-window travels with the profile, which is
/// what makes spectra exactly t-independent; recenter = false keeps the
/// window fixed and exposes the truncation error (window_warning is set when
/// the profile center sits within 5 decay lengths of the edge).
SectorOperator assemble_sector(const Params& p, const GridSpec& g, double t, int l, Part part,
                               OperatorVariant variant = OperatorVariant::A,
                               bool recenter = true);

struct EigenPairs {
  Eigen::VectorXd values;            // ascending
  std::vector<Eigen::VectorXd> vectors;  // M-orthonormal within their block
  std::vector<int> block_j;          // originating Jacobi block
};

/// k smallest generalized eigenpairs of K x = lambda M x across the sector's
/// Jacobi blocks. Blocks whose lower spectral bound already exceeds the
/// current k-th value are skipped.
EigenPairs eigensolve(const SectorOperator& op, int k);

struct NullmodeResiduals {
  double F_re = 0;
  double dF_re = 0;
  double F_im = 0;
  double dx1F_re = 0;
  double random_probe = 0;  // residual of a random M-normalized vector
};

/// ||K v||_{M^-1} / ||v||_M for the analytic tangent candidates.
NullmodeResiduals nullmode_residuals(const Params& p, double t, const GridSpec& g,
                                     std::uint64_t probe_seed = 2026);

struct PoschlTellerLevel {
  int k = 0;
  double eigenvalue = 0;  // C^2 (gamma^2 - (gamma + 1 - k)^2)
  bool zero_mode = false; // k = 1, eigenfunction d_u F
};

/// Closed-form bound states of the radial operator X (sech^2 well of
/// strength (gamma+1)(gamma+2)); valid while gamma + 1 - k > 0.
std::vector<PoschlTellerLevel> poschl_teller_spectrum(const Params& p);

/// Discrete eigenvalues of X on the u-grid (plain symmetric eigensolve in
/// L^2(du)); the first entries approximate the bound states.
Eigen::VectorXd radial_x_spectrum(const Params& p, const GridSpec& g, int k);

/// Max-norm residual of the theta-operator identity Y g = 2 (m+n) C^2 g for
/// g = (n-m)/(m+n) + cos(2 theta), evaluated through the Jacobi derivative
/// tables (not through the diagonalized form).
double y_g_residual(const Params& p, const GridSpec& g);

struct TraceSum {
  double partial = 0;
  double tail_bound = 0;
  bool converged = false;
};

/// Partial sum of mult_l (gamma^2 + tau_l + sigma_j)^{-d} over j <= j_cap,
/// l <= l_cap plus an integral-comparison tail bound (finite for 2d > n+1).
TraceSum trace_sum(const Params& p, int d, int j_cap, int l_cap);

/// Increments of the partial sums under cap doubling; the ratio of successive
/// increments stays near 1 when the series diverges.
std::vector<double> trace_increment_ratios(const Params& p, int d, int cap0, int doublings);

struct SpectralReport {
  double t = 1.0;
  int k = 0;
  // eigenvalues per (l, part), ascending, at most k and <= C^2 + tol
  std::map<std::pair<int, int>, std::vector<double>> eigenvalues;  // key (l, part as int)
  int null_dim = 0;
  double null_tol = 0;  // 1e-6 * C^2
  double gap = 0;       // smallest eigenvalue above the null cluster
  NullmodeResiduals residuals;
  bool window_warning = false;
};

SpectralReport spectral_report(const Params& p, const GridSpec& g, double t, int lmax, int k);

/// <(C^2 I - S) psi, psi> / <psi, psi>_{H1} for a discrete field psi.
double rayleigh_quotient(const Params& p, const DiscreteField& psi, double t = 1.0);

struct TInvariance {
  double max_discrepancy = 0;
  bool window_warning = false;
};

/// Solves the Re l = 0 spectra at t1 and t2 (k eigenvalues each) and reports
/// the largest eigenvalue discrepancy.
TInvariance t_invariance_check(const Params& p, const GridSpec& g, double t1, double t2, int k,
                               bool recenter = true);

}  // namespace sslab

#endif  // SSLAB_SPECTRAL_HPP
