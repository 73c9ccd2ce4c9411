// Sine-spectral Strang splitting for the limiting Schrodinger equation with
// the oscillatory potential (plain cubic NLS when the wave data vanish).
// Used as an independent cross-check of the finite difference solver at small
// epsilon and for the soliton benchmark.
#pragma once

#include <span>
#include <vector>

#include "zak/oscillatory.hpp"

namespace zak {

struct SplitState {
  double t = 0.0;
  ComplexField E;
  const WaveModes* modes = nullptr;  // supplies the exact oscillatory phase
};

// Half potential flow, full kinetic flow, half potential flow. The potential
// flow multiplies pointwise by exp(i (delta |E|^2 - Theta)) with Theta the
// exact per-mode integral of G over the substep (|E| is invariant there); the
// kinetic flow rotates sine mode l by exp(-i mu_l^2 dt).
void strang_step(SplitState& s, double dt);

struct SplitTrajectory {
  std::vector<std::pair<double, ComplexField>> samples;
  double max_mass_drift_rel = 0.0;
};

// Composes strang_step from E_0. Requires dt <= eps/10 so the oscillatory
// potential is resolved; throws ConfigError otherwise.
SplitTrajectory solve_nlse_op(const PhysicalCase& pc, const Grid1D& g,
                              double dt, double T,
                              std::span<const double> sample_times);

}  // namespace zak
