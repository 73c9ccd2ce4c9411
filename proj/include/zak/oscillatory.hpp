// Sine-series representation of the free linear-wave part of the density.
//
// G(x, s) = eps^alpha G1(x, s) + eps^{1+beta} G2(x, s) with
//   G1 = sum_l w0_l cos(mu_l s) sin(mu_l (x - a))
//   G2 = sum_l (w1_l / mu_l) sin(mu_l s) sin(mu_l (x - a))
// All time dependence is closed form; nothing here is ever time-stepped.
#pragma once

#include "zak/grid.hpp"
#include "zak/problem.hpp"

namespace zak {

struct WaveModes {
  Grid1D grid;
  double epsilon = 1.0;
  double alpha = 0.0;
  double beta = 0.0;
  Eigen::VectorXd mu;          // mu_l = l pi / (b - a), l = 1..M-1
  Eigen::VectorXd omega0_hat;  // forward DST of omega0 samples
  Eigen::VectorXd omega1_hat;  // forward DST of omega1 samples
  // Cached mode amplitudes: g1_amp = eps^alpha * omega0_hat,
  // g2_amp = eps^{1+beta} * omega1_hat / mu.
  Eigen::VectorXd g1_amp;
  Eigen::VectorXd g2_amp;
};

WaveModes decompose_waves(const PhysicalCase& pc, const Grid1D& g);

// G(x_j, s) as a field in X_M.
RealField evaluate_G(const WaveModes& modes, double s);

// Exact integral over physical time of G(x, t/eps) dt on [t0, t1] (per-mode
// antiderivatives; no quadrature error).
RealField integral_of_G(const WaveModes& modes, double t0, double t1);

// Window average (1/2tau) * integral_of_G(t_k - tau, t_k + tau), computed from
// the same per-mode antiderivatives as integral_of_G.
RealField averaged_potential(const WaveModes& modes, double t_k, double tau);

}  // namespace zak
