#include "zak/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "zak/sine_transform.hpp"

namespace zak {

namespace {

// Hot-loop evaluator for H^k. Precomputes the l-dependent scalar factors of
// the closed form
//   H_l(t_k) = (eps/(tau mu_l)) sin(tau mu_l/eps)
//              * [g1_l cos(mu_l t_k/eps) + g2_l sin(mu_l t_k/eps)]
// so each step pays one pass of phase trig plus one sine synthesis.
class AveragedPotential {
 public:
  AveragedPotential(const WaveModes& m, double tau)
      : modes_(&m), dst_(&shared_sine_transform(m.grid.cells)) {
    const Eigen::ArrayXd mu = m.mu.array();
    const double eps = m.epsilon;
    const Eigen::ArrayXd factor = (eps / tau) * (tau / eps * mu).sin() / mu;
    c_cos_ = (factor * m.g1_amp.array()).matrix();
    c_sin_ = (factor * m.g2_amp.array()).matrix();
    coeffs_.resize(mu.size());
  }

  void evaluate(double t_k, RealField& out) const {
    const double inv_eps = 1.0 / modes_->epsilon;
    const auto& mu = modes_->mu;
    for (Eigen::Index l = 0; l < mu.size(); ++l) {
      const double phase = mu(l) * t_k * inv_eps;
      coeffs_(l) = c_cos_(l) * std::cos(phase) + c_sin_(l) * std::sin(phase);
    }
    out.interior() = dst_->inverse(coeffs_);
  }

 private:
  const WaveModes* modes_;
  const SineTransform* dst_;
  Eigen::VectorXd c_cos_, c_sin_;
  mutable Eigen::VectorXd coeffs_;
};

struct StepWorkspace {
  RealField H, rhsF_base, rhsF, F_new, F_iter, c;
  ComplexField rhsE_base, rhsE, E_new, E_star;
  Eigen::VectorXd absE2_prev, absE2_curr, helm_work;
  Eigen::VectorXcd tri_diag, tri_rhs;

  explicit StepWorkspace(const Grid1D& g)
      : H(g), rhsF_base(g), rhsF(g), F_new(g), F_iter(g), c(g), rhsE_base(g),
        rhsE(g), E_new(g), E_star(g), absE2_prev(g.nodes()),
        absE2_curr(g.nodes()) {}
};

}  // namespace

SolverState make_solver_state(const PhysicalCase& pc, const WaveModes& modes,
                              const InitialState& init, double tau) {
  require(tau > 0.0, "make_solver_state: requires tau > 0");
  SolverState s;
  s.physical = &pc;
  s.modes = &modes;
  s.tau = tau;
  s.k = 1;
  s.E_prev = init.E0;
  s.E_curr = init.E1;
  s.F_prev = init.F0;
  s.F_curr = init.F1;
  return s;
}

namespace {

StepStats step_impl(SolverState& s, const StepConfig& cfg,
                    const AveragedPotential& pot, StepWorkspace& w) {
  const Grid1D& g = s.E_curr.grid;
  const int n = g.cells - 1;
  const double tau = s.tau;
  const double eps = s.physical->epsilon;
  const double sigma = eps * eps / (tau * tau);
  const Complex lambda(0.0, 1.0 / tau);

  pot.evaluate(s.k * tau, w.H);

  auto interior = [n](auto& f) { return f.v.segment(1, n); };

  w.absE2_prev.head(n) = interior(s.E_prev).cwiseAbs2();
  w.absE2_curr.head(n) = interior(s.E_curr).cwiseAbs2();

  // sigma (2F^k - F^{k-1}) + (1/2) delta_x^2 F^{k-1} - sigma (2|E^k|^2 - |E^{k-1}|^2)
  interior(w.rhsF_base) =
      sigma * (2.0 * interior(s.F_curr) - interior(s.F_prev)) +
      0.5 * second_diff(s.F_prev).v.segment(1, n) -
      sigma * (2.0 * w.absE2_curr.head(n) - w.absE2_prev.head(n));

  // (i/tau) E^{k-1} - delta_x^2 E^{k-1}; the c-dependent part is added per
  // iteration.
  interior(w.rhsE_base) =
      lambda * interior(s.E_prev) - second_diff(s.E_prev).v.segment(1, n);

  // Linear extrapolation as the initial Picard guess.
  w.E_star.v = 2.0 * s.E_curr.v - s.E_prev.v;
  w.F_iter.v = 2.0 * s.F_curr.v - s.F_prev.v;

  const double scale = norm_l2(s.E_curr) + norm_l2(s.F_curr) + cfg.fp_tol;
  StepStats stats;
  bool converged = false;

  for (int it = 1; it <= cfg.fp_max_iter; ++it) {
    stats.iterations = it;

    interior(w.rhsF) =
        interior(w.rhsF_base) + sigma * interior(w.E_star).cwiseAbs2();
    solve_real_helmholtz_into(sigma, w.rhsF, w.F_new, w.helm_work);

    interior(w.c) = -w.absE2_curr.head(n) + interior(w.H) +
                    0.5 * (interior(w.F_new) + interior(s.F_prev));

    interior(w.rhsE) =
        interior(w.rhsE_base) +
        interior(w.c).cast<Complex>().cwiseProduct(interior(s.E_prev));
    solve_complex_tridiagonal_into(lambda, w.c, w.rhsE, w.E_new, w.tri_diag,
                                   w.tri_rhs);

    const double delta =
        norm_l2(w.E_new - w.E_star) + norm_l2(w.F_new - w.F_iter);
    w.E_star.v.swap(w.E_new.v);
    w.F_iter.v.swap(w.F_new.v);
    if (delta <= cfg.fp_tol * scale) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw SolverError("fixed-point iteration did not converge in " +
                          std::to_string(cfg.fp_max_iter) + " iterations",
                      s.k, s.k * tau);

  // Final F-solve against the accepted E^{k+1} so the pair satisfies both raw
  // stencils to solver precision.
  interior(w.rhsF) =
      interior(w.rhsF_base) + sigma * interior(w.E_star).cwiseAbs2();
  solve_real_helmholtz_into(sigma, w.rhsF, w.F_new, w.helm_work);

  if (cfg.nan_guard &&
      !(w.E_star.v.allFinite() && w.F_new.v.allFinite()))
    throw SolverError("non-finite value in the updated fields (blow-up)", s.k,
                      s.k * tau);

  const double m_new = g.h * interior(w.E_star).squaredNorm();
  const double m_prev = g.h * w.absE2_prev.head(n).sum();
  stats.parity_drift = std::abs(m_new - m_prev);

  // Rotate the window.
  s.E_prev.v.swap(s.E_curr.v);
  s.E_curr.v.swap(w.E_star.v);
  s.F_prev.v.swap(s.F_curr.v);
  s.F_curr.v.swap(w.F_new.v);
  s.k += 1;
  return stats;
}

}  // namespace

StepStats step(SolverState& s, const StepConfig& cfg) {
  require(s.physical && s.modes, "step: unbound solver state");
  require_same_grid(s.E_curr.grid, s.modes->grid);
  AveragedPotential pot(*s.modes, s.tau);
  StepWorkspace w(s.E_curr.grid);
  return step_impl(s, cfg, pot, w);
}

RealField recover_N(const ComplexField& E, const RealField& F,
                    const WaveModes& modes, double t) {
  require_same_grid(E.grid, F.grid);
  require_same_grid(E.grid, modes.grid);
  RealField n = evaluate_G(modes, t / modes.epsilon);
  n.interior() += F.interior() - E.interior().cwiseAbs2();
  return n;
}

Trajectory run(const PhysicalCase& pc, const Grid1D& g, double tau,
               const StepConfig& cfg, std::span<const double> sample_times) {
  pc.validate();
  const long n_steps = std::llround(pc.T / tau);
  if (n_steps < 1 || std::abs(n_steps * tau - pc.T) > 1e-9 * pc.T)
    throw ConfigError("run: tau must divide the final time T");

  // Map each sample time to its nearest step index.
  std::vector<long> sample_idx(sample_times.size());
  for (size_t i = 0; i < sample_times.size(); ++i) {
    const double t = sample_times[i];
    if (t < -1e-12 || t > pc.T + 0.5 * tau)
      throw ConfigError("run: sample time outside [0, T]");
    const long k = std::llround(t / tau);
    if (std::abs(k * tau - t) > 0.5 * tau * (1.0 + 1e-9))
      throw ConfigError("run: sample time not within tau/2 of a step time");
    sample_idx[i] = k;
  }

  WaveModes modes = decompose_waves(pc, g);
  InitialState init = build_first_steps(pc, g, tau);
  SolverState state = make_solver_state(pc, modes, init, tau);

  Trajectory traj;
  traj.stats.mass0_sq = norm_l2(init.E0);
  traj.stats.mass0_sq *= traj.stats.mass0_sq;

  auto emit = [&](long k, const ComplexField& E, const RealField& F) {
    for (size_t i = 0; i < sample_idx.size(); ++i)
      if (sample_idx[i] == k)
        traj.samples.push_back(
            {k * tau, E, F, recover_N(E, F, modes, k * tau)});
  };
  emit(0, init.E0, init.F0);
  emit(1, init.E1, init.F1);

  AveragedPotential pot(modes, tau);
  StepWorkspace w(g);
  for (long k = 1; k < n_steps; ++k) {
    StepStats st;
    try {
      st = step_impl(state, cfg, pot, w);
    } catch (SolverError& e) {
      throw SolverError(std::string(e.what()) + " (run aborted)", state.k,
                        state.k * tau);
    }
    traj.stats.steps += 1;
    traj.stats.max_fp_iterations =
        std::max(traj.stats.max_fp_iterations, st.iterations);
    const double drift_rel = traj.stats.mass0_sq > 0.0
                                 ? st.parity_drift / traj.stats.mass0_sq
                                 : st.parity_drift;
    traj.stats.max_parity_drift_rel =
        std::max(traj.stats.max_parity_drift_rel, drift_rel);
    emit(state.k, state.E_curr, state.F_curr);
  }
  // Order snapshots by time (multiple requests may map to one index).
  std::stable_sort(traj.samples.begin(), traj.samples.end(),
                   [](const Snapshot& p, const Snapshot& q) { return p.t < q.t; });
  return traj;
}

}  // namespace zak
