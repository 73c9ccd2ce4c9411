#include "zak/splitting.hpp"

#include <cmath>

#include "zak/sine_transform.hpp"

namespace zak {

namespace {

// E <- E * exp(i (delta |E|^2 - Theta)) over [t, t + delta].
void potential_flow(SplitState& s, double delta) {
  RealField theta = integral_of_G(*s.modes, s.t, s.t + delta);
  auto e = s.E.interior();
  auto th = theta.interior();
  for (Eigen::Index j = 0; j < e.size(); ++j) {
    const double phase = delta * std::norm(e(j)) - th(j);
    e(j) *= Complex(std::cos(phase), std::sin(phase));
  }
  s.t += delta;
}

}  // namespace

void strang_step(SplitState& s, double dt) {
  require(dt > 0.0, "strang_step: requires dt > 0");
  require(s.modes != nullptr, "strang_step: unbound modes");
  require_same_grid(s.E.grid, s.modes->grid);
  const Grid1D& g = s.E.grid;
  const auto& dst = shared_sine_transform(g.cells);

  potential_flow(s, 0.5 * dt);

  Eigen::VectorXcd coeffs = dst.forward(Eigen::VectorXcd(s.E.interior()));
  const auto& mu = s.modes->mu;
  for (Eigen::Index l = 0; l < coeffs.size(); ++l) {
    const double phase = -mu(l) * mu(l) * dt;  // continuous symbol mu_l^2
    coeffs(l) *= Complex(std::cos(phase), std::sin(phase));
  }
  s.E.interior() = dst.inverse(coeffs);

  potential_flow(s, 0.5 * dt);
}

SplitTrajectory solve_nlse_op(const PhysicalCase& pc, const Grid1D& g,
                              double dt, double T,
                              std::span<const double> sample_times) {
  pc.validate();
  if (!(dt > 0.0) || dt > pc.epsilon / 10.0 * (1.0 + 1e-12))
    throw ConfigError(
        "solve_nlse_op: dt must satisfy dt <= epsilon/10 to resolve the "
        "oscillatory potential");
  const long n_steps = std::llround(T / dt);
  if (n_steps < 1 || std::abs(n_steps * dt - T) > 1e-9 * T)
    throw ConfigError("solve_nlse_op: dt must divide the final time T");

  std::vector<long> sample_idx(sample_times.size());
  for (size_t i = 0; i < sample_times.size(); ++i) {
    const long k = std::llround(sample_times[i] / dt);
    if (k < 0 || k > n_steps ||
        std::abs(k * dt - sample_times[i]) > 0.5 * dt * (1.0 + 1e-9))
      throw ConfigError("solve_nlse_op: sample time not on the step grid");
    sample_idx[i] = k;
  }

  WaveModes modes = decompose_waves(pc, g);
  SplitState state;
  state.t = 0.0;
  state.E = sample_interior<Complex>(
      g, [&](double x) { return pc.profiles.envelope.eval(x, 0); });
  state.modes = &modes;

  SplitTrajectory traj;
  const double mass0 = norm_l2(state.E);
  auto emit = [&](long k) {
    for (size_t i = 0; i < sample_idx.size(); ++i)
      if (sample_idx[i] == k) traj.samples.push_back({k * dt, state.E});
  };
  emit(0);
  for (long k = 0; k < n_steps; ++k) {
    strang_step(state, dt);
    if (!state.E.v.allFinite())
      throw SolverError("non-finite value in the splitting solver",
                        static_cast<int>(k + 1), state.t);
    emit(k + 1);
    if (mass0 > 0.0)
      traj.max_mass_drift_rel =
          std::max(traj.max_mass_drift_rel,
                   std::abs(norm_l2(state.E) - mass0) / mass0);
  }
  return traj;
}

}  // namespace zak
