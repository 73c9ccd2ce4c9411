#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "zak/solver.hpp"

using namespace zak;

namespace {

PhysicalCase make_case(const std::string& name, double eps, double a, double b,
                       double T) {
  PhysicalCase pc = PhysicalCase::named(name);
  pc.epsilon = eps;
  pc.a = a;
  pc.b = b;
  pc.T = T;
  return pc;
}

struct StepTriple {
  ComplexField E_prev, E_curr, E_next;
  RealField F_prev, F_curr, F_next;
  double t_k = 0.0;
};

// Raw stencil residuals of the scheme, assembled independently of the solve
// path (plain field arithmetic plus the public averaged potential).
std::pair<double, double> stencil_residuals(const StepTriple& tr,
                                            const WaveModes& modes, double eps,
                                            double tau) {
  const Grid1D& g = tr.E_curr.grid;
  RealField H = averaged_potential(modes, tr.t_k, tau);

  ComplexField Eavg(g), dtE(g);
  Eavg.v = 0.5 * (tr.E_next.v + tr.E_prev.v);
  dtE.v = (tr.E_next.v - tr.E_prev.v) / (2.0 * tau);
  ComplexField lapEavg = second_diff(Eavg);

  double res_e = 0.0;
  for (int j = 1; j < g.cells; ++j) {
    const double coeff = -std::norm(tr.E_curr.v(j)) + H.v(j) +
                         0.5 * (tr.F_next.v(j) + tr.F_prev.v(j));
    const Complex rhs = -lapEavg.v(j) + coeff * Eavg.v(j);
    res_e = std::max(res_e, std::abs(Complex(0.0, 1.0) * dtE.v(j) - rhs));
  }

  RealField Fsum(g);
  Fsum.v = tr.F_next.v + tr.F_prev.v;
  RealField lapFsum = second_diff(Fsum);
  double res_f = 0.0;
  const double inv_tau2 = 1.0 / (tau * tau);
  for (int j = 1; j < g.cells; ++j) {
    const double dttF =
        (tr.F_next.v(j) - 2.0 * tr.F_curr.v(j) + tr.F_prev.v(j)) * inv_tau2;
    const double dttE2 = (std::norm(tr.E_next.v(j)) -
                          2.0 * std::norm(tr.E_curr.v(j)) +
                          std::norm(tr.E_prev.v(j))) *
                         inv_tau2;
    res_f = std::max(res_f, std::abs(eps * eps * dttF - 0.5 * lapFsum.v(j) -
                                     eps * eps * dttE2));
  }
  return {res_e, res_f};
}

}  // namespace

TEST_CASE("zero data is a fixed point (one iteration)") {
  PhysicalCase pc = make_case("case-II", 0.5, -20.0, 20.0, 1.0);
  Grid1D g(pc.a, pc.b, 64);
  WaveModes modes = decompose_waves(pc, g);
  SolverState st;
  st.physical = &pc;
  st.modes = &modes;
  st.tau = 0.01;
  st.k = 1;
  st.E_prev = ComplexField(g);
  st.E_curr = ComplexField(g);
  st.F_prev = RealField(g);
  st.F_curr = RealField(g);
  StepConfig cfg;
  StepStats stats = step(st, cfg);
  CHECK(stats.iterations == 1);
  CHECK(norm_inf(st.E_curr) == 0.0);
  CHECK(norm_inf(st.F_curr) == 0.0);
  CHECK(st.k == 2);
}

TEST_CASE("zero envelope with nonzero wave data stays zero") {
  PhysicalCase pc = make_case("case-II", 0.25, -40.0, 40.0, 0.05);
  pc.profiles.envelope = {[](double, int) { return Complex(0.0, 0.0); }, 4};
  Grid1D g(pc.a, pc.b, 160);
  StepConfig cfg;
  const double times[1] = {pc.T};
  Trajectory traj = run(pc, g, 0.005, cfg, times);
  CHECK(norm_inf(traj.samples.back().E) == 0.0);
  CHECK(norm_inf(traj.samples.back().F) == 0.0);
}

TEST_CASE("per-step parity norm conservation") {
  PhysicalCase pc = make_case("case-II", 0.25, -40.0, 40.0, 1.0);
  Grid1D g(pc.a, pc.b, 400);
  WaveModes modes = decompose_waves(pc, g);
  InitialState init = build_first_steps(pc, g, 1e-3);
  SolverState st = make_solver_state(pc, modes, init, 1e-3);
  StepConfig cfg;
  const double mass0_sq = std::pow(norm_l2(init.E0), 2);
  for (int k = 0; k < 8; ++k) {
    StepStats stats = step(st, cfg);
    CHECK(stats.parity_drift <= 1e-10 * mass0_sq);
  }
}

TEST_CASE("accepted steps satisfy the raw stencils (oracle)") {
  PhysicalCase pc = make_case("case-II", 0.25, -200.0, 200.0, 1.0);
  const double tau = 1e-3;
  Grid1D g = Grid1D::with_spacing(pc.a, pc.b, 0.1);
  WaveModes modes = decompose_waves(pc, g);
  InitialState init = build_first_steps(pc, g, tau);
  SolverState st = make_solver_state(pc, modes, init, tau);
  StepConfig cfg;
  for (int k = 0; k < 6; ++k) {
    StepTriple tr;
    tr.E_prev = st.E_prev;
    tr.E_curr = st.E_curr;
    tr.F_prev = st.F_prev;
    tr.F_curr = st.F_curr;
    tr.t_k = st.k * tau;
    step(st, cfg);
    tr.E_next = st.E_curr;
    tr.F_next = st.F_curr;
    auto [res_e, res_f] = stencil_residuals(tr, modes, pc.epsilon, tau);
    CHECK(res_e <= 1e-9);
    CHECK(res_f <= 1e-9);
  }
}

TEST_CASE("time-reversal symmetry of the E-update") {
  Grid1D g(0.0, 1.0, 64);
  auto gen = oracle::rng(1234);
  const double tau = 0.02;
  const Complex lambda(0.0, 1.0 / tau);
  RealField c(g);
  c.interior() = oracle::random_interior(g.cells, gen);
  ComplexField e_minus(g);
  e_minus.interior() = oracle::random_interior_complex(g.cells, gen);

  auto cn_rhs = [&](const ComplexField& u) {
    ComplexField rhs(g);
    ComplexField lap = second_diff(u);
    for (int j = 1; j < g.cells; ++j)
      rhs.v(j) = lambda * u.v(j) - lap.v(j) + c.v(j) * u.v(j);
    return rhs;
  };
  ComplexField e_plus = solve_complex_tridiagonal(lambda, c, cn_rhs(e_minus));

  // Conjugate, swap the levels, solve again: recovers the start.
  ComplexField conj_plus(g);
  for (int j = 1; j < g.cells; ++j) conj_plus.v(j) = std::conj(e_plus.v(j));
  ComplexField back = solve_complex_tridiagonal(lambda, c, cn_rhs(conj_plus));
  double worst = 0.0;
  for (int j = 1; j < g.cells; ++j)
    worst = std::max(worst, std::abs(back.v(j) - std::conj(e_minus.v(j))));
  CHECK(worst <= 1e-9);
}

TEST_CASE("fixed-point iteration count regression") {
  // The Picard map contracts at roughly 2 tau |E|^2 per pass, so counts grow
  // slowly with tau: measured 6 at tau = 1e-2 and <= 5 from tau = 5e-3 down
  // (the convergence-table regime uses tau <= 3.2e-3).
  for (const char* name : {"case-I", "case-II"}) {
    for (double eps : {1.0, 0.0625}) {
      for (double tau : {1e-2, 3.125e-3}) {
        PhysicalCase pc = make_case(name, eps, -40.0, 40.0, 1.0);
        Grid1D g(pc.a, pc.b, 400);
        WaveModes modes = decompose_waves(pc, g);
        InitialState init = build_first_steps(pc, g, tau);
        SolverState st = make_solver_state(pc, modes, init, tau);
        StepConfig cfg;
        int worst = 0;
        for (int k = 0; k < 10; ++k)
          worst = std::max(worst, step(st, cfg).iterations);
        CHECK(worst <= (tau > 5e-3 ? 6 : 5));
      }
    }
  }
}

TEST_CASE("fixed-point failure carries the step index") {
  PhysicalCase pc = make_case("case-II", 0.25, -40.0, 40.0, 1.0);
  Grid1D g(pc.a, pc.b, 200);
  WaveModes modes = decompose_waves(pc, g);
  InitialState init = build_first_steps(pc, g, 0.01);
  SolverState st = make_solver_state(pc, modes, init, 0.01);
  StepConfig cfg;
  cfg.fp_max_iter = 1;
  cfg.fp_tol = 1e-16;
  CHECK_THROWS_AS(step(st, cfg), SolverError);
}

TEST_CASE("run: startup plus one step keeps the even parity norm") {
  PhysicalCase pc = make_case("case-I", 0.5, -40.0, 40.0, 0.02);
  Grid1D g(pc.a, pc.b, 400);
  StepConfig cfg;
  const double times[2] = {0.0, pc.T};  // T = 2 tau
  Trajectory traj = run(pc, g, 0.01, cfg, times);
  REQUIRE(traj.samples.size() == 2);
  const double m0 = norm_l2(traj.samples.front().E);
  const double m2 = norm_l2(traj.samples.back().E);
  CHECK(std::abs(m2 * m2 - m0 * m0) <= 1e-10 * m0 * m0);
  CHECK(traj.stats.steps == 1);
}

TEST_CASE("run: identical inputs give identical trajectories") {
  PhysicalCase pc = make_case("case-II", 0.125, -40.0, 40.0, 0.1);
  Grid1D g(pc.a, pc.b, 256);
  StepConfig cfg;
  const double times[1] = {pc.T};
  Trajectory t1 = run(pc, g, 0.002, cfg, times);
  Trajectory t2 = run(pc, g, 0.002, cfg, times);
  CHECK(t1.samples.back().E.v == t2.samples.back().E.v);
  CHECK(t1.samples.back().F.v == t2.samples.back().F.v);
}

TEST_CASE("run: sample-time validation and nearest-step mapping") {
  PhysicalCase pc = make_case("case-II", 0.5, -20.0, 20.0, 0.1);
  Grid1D g(pc.a, pc.b, 64);
  StepConfig cfg;
  {
    const double times[1] = {0.2};  // outside [0, T]
    CHECK_THROWS_AS(run(pc, g, 0.01, cfg, times), ConfigError);
  }
  {
    const double times[1] = {0.0251};  // maps to the nearest step, k = 1
    Trajectory traj = run(pc, g, 0.05, cfg, times);
    REQUIRE(traj.samples.size() == 1);
    CHECK(traj.samples[0].t == doctest::Approx(0.05));
  }
  CHECK_THROWS_AS(run(pc, g, 0.03, cfg, std::span<const double>{}),
                  ConfigError);  // tau does not divide T
}

TEST_CASE("recover_N") {
  PhysicalCase pc = make_case("case-II", 0.5, -40.0, 40.0, 1.0);
  Grid1D g(pc.a, pc.b, 256);
  WaveModes modes = decompose_waves(pc, g);

  // E = 0, F = 0, t = 0: N = eps^alpha omega0 samples (alpha = 0 here).
  ComplexField e0(g);
  RealField f0(g);
  RealField n = recover_N(e0, f0, modes, 0.0);
  double worst = 0.0;
  for (int j = 1; j < g.cells; ++j)
    worst = std::max(worst,
                     std::abs(n.v(j) - pc.profiles.omega0.eval(g.node(j), 0)));
  CHECK(worst < 1e-12);

  // Full initial data at t = 0 reproduces N0 exactly (F^0 == 0).
  InitialState init = build_first_steps(pc, g, 0.01);
  RealField n0 = recover_N(init.E0, init.F0, modes, 0.0);
  CHECK(norm_inf(n0 - init.N0) < 1e-12);

  // Affine in F.
  auto gen = oracle::rng(77);
  ComplexField e(g);
  e.interior() = oracle::random_interior_complex(g.cells, gen);
  RealField f1(g), f2(g), f12(g);
  f1.interior() = oracle::random_interior(g.cells, gen);
  f2.interior() = oracle::random_interior(g.cells, gen);
  f12.v = f1.v + f2.v;
  RealField lhs = recover_N(e, f12, modes, 0.37);
  RealField rhs = recover_N(e, f1, modes, 0.37);
  rhs.v += f2.v;
  CHECK(norm_inf(lhs - rhs) < 1e-12);
}

TEST_CASE("self-convergence: halving tau quarters the error") {
  // Case I, eps = 1, h = 0.1, measured against a tau/8 run on the same grid.
  PhysicalCase pc = make_case("case-I", 1.0, -40.0, 40.0, 1.0);
  Grid1D g = Grid1D::with_spacing(pc.a, pc.b, 0.1);
  StepConfig cfg;
  const double times[1] = {pc.T};
  const double tau = 1e-3;
  auto at = [&](double t) { return run(pc, g, t, cfg, times).samples.back().E; };
  ComplexField ref = at(tau / 8.0);
  ComplexField c1 = at(tau);
  ComplexField c2 = at(tau / 2.0);
  ComplexField d1 = ref - c1;
  ComplexField d2 = ref - c2;
  const double e1 = norm_l2(d1) + seminorm_h1(d1);
  const double e2 = norm_l2(d2) + seminorm_h1(d2);
  // tau/8 reference bias: measured ratio drifts off 4 by O(1/16).
  CHECK(e1 / e2 > 3.2);
  CHECK(e1 / e2 < 4.8);
}
