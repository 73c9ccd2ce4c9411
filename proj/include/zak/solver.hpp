// The uniformly accurate finite difference time stepper for the reformulated
// Zakharov system: coupled implicit leapfrog/Crank-Nicolson update of (E, F)
// with the window-averaged oscillatory potential, plus recovery of the
// physical density N.
#pragma once

#include <span>
#include <vector>

#include "zak/oscillatory.hpp"
#include "zak/problem.hpp"
#include "zak/tridiag.hpp"

namespace zak {

struct StepConfig {
  double fp_tol = 1e-12;  // relative fixed-point tolerance
  int fp_max_iter = 100;
  bool nan_guard = true;
};

struct StepStats {
  int iterations = 0;
  // | ||E^{k+1}||^2 - ||E^{k-1}||^2 |, the parity mass defect of one step
  double parity_drift = 0.0;
};

// Two-level leapfrog window. E_curr/F_curr hold level k, E_prev/F_prev level
// k-1; step() advances the window by one tau.
struct SolverState {
  const PhysicalCase* physical = nullptr;  // non-owning
  const WaveModes* modes = nullptr;        // non-owning
  double tau = 0.0;
  int k = 1;  // index of the current level
  ComplexField E_prev, E_curr;
  RealField F_prev, F_curr;

  double t_curr() const { return k * tau; }
};

SolverState make_solver_state(const PhysicalCase& pc, const WaveModes& modes,
                              const InitialState& init, double tau);

// One step of the scheme. Solves the coupled implicit system by Picard
// iteration (F-solve from |E*|^2, then the Crank-Nicolson E-solve), with a
// final F-solve against the accepted E so both stencils hold to solver
// precision. Throws SolverError on non-convergence or non-finite values.
StepStats step(SolverState& s, const StepConfig& cfg);

// N = -|E|^2 + F + G(x, t/eps)
RealField recover_N(const ComplexField& E, const RealField& F,
                    const WaveModes& modes, double t);

struct Snapshot {
  double t = 0.0;
  ComplexField E;
  RealField F;
  RealField N;
};

struct RunStats {
  int steps = 0;
  int max_fp_iterations = 0;
  double max_parity_drift_rel = 0.0;  // parity drift / ||E^0||^2
  double mass0_sq = 0.0;
};

struct Trajectory {
  std::vector<Snapshot> samples;
  RunStats stats;
};

// Startup via the Taylor first step, then repeated step(); snapshots are taken
// at the step index nearest to each requested time (each must lie within tau/2
// of a grid time). Deterministic for identical inputs.
Trajectory run(const PhysicalCase& pc, const Grid1D& g, double tau,
               const StepConfig& cfg, std::span<const double> sample_times);

}  // namespace zak
