#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "zak/harness.hpp"
#include "zak/splitting.hpp"

using namespace zak;

namespace {

PhysicalCase zero_wave_case(double a, double b) {
  PhysicalCase pc;
  pc.name = "nls";
  pc.epsilon = 1.0;
  pc.a = a;
  pc.b = b;
  pc.profiles.omega0 = {[](double, int) { return 0.0; }, 2};
  pc.profiles.omega1 = {[](double, int) { return 0.0; }, 0};
  return pc;
}

}  // namespace

TEST_CASE("linear limit: tiny single mode rotates with the kinetic symbol") {
  PhysicalCase pc = zero_wave_case(-10.0, 10.0);
  Grid1D g(pc.a, pc.b, 128);
  WaveModes modes = decompose_waves(pc, g);
  const double mu1 = modes.mu(0);
  const double amp = 1e-8;

  SplitState st;
  st.t = 0.0;
  st.E = sample_interior<Complex>(g, [&](double x) {
    return Complex(amp * std::sin(mu1 * (x - g.a)), 0.0);
  });
  st.modes = &modes;
  const double dt = 1e-3;
  strang_step(st, dt);

  const Complex rot(std::cos(mu1 * mu1 * dt), -std::sin(mu1 * mu1 * dt));
  double worst = 0.0;
  for (int j = 1; j < g.cells; ++j) {
    const Complex expect =
        amp * std::sin(mu1 * (g.node(j) - g.a)) * rot;
    worst = std::max(worst, std::abs(st.E.v(j) - expect));
  }
  CHECK(worst <= amp * (amp * amp + dt * dt * dt + 1e-12));
  CHECK(st.t == doctest::Approx(dt));
}

TEST_CASE("mass isometry per step") {
  PhysicalCase pc = PhysicalCase::named("case-I");
  pc.a = -40.0;
  pc.b = 40.0;
  pc.epsilon = 0.25;
  Grid1D g(pc.a, pc.b, 512);
  WaveModes modes = decompose_waves(pc, g);
  auto gen = oracle::rng(5);
  SplitState st;
  st.t = 0.0;
  st.E = ComplexField(g);
  st.E.interior() = oracle::random_interior_complex(g.cells, gen);
  st.modes = &modes;
  const double m0 = norm_l2(st.E);
  for (int k = 0; k < 20; ++k) {
    strang_step(st, 1e-3);
    CHECK(std::abs(norm_l2(st.E) - m0) <= 1e-12 * m0);
  }
}

TEST_CASE("solve_nlse_op: dt guard and mass conservation") {
  PhysicalCase pc = PhysicalCase::named("case-I");
  pc.a = -40.0;
  pc.b = 40.0;
  pc.epsilon = 0.125;
  pc.T = 0.5;
  Grid1D g(pc.a, pc.b, 512);
  const double times[1] = {pc.T};

  // dt > eps/10 must be rejected.
  CHECK_THROWS_AS(solve_nlse_op(pc, g, 0.025, pc.T, times), ConfigError);

  SplitTrajectory traj = solve_nlse_op(pc, g, 0.0125 / 2.0, pc.T, times);
  CHECK(traj.max_mass_drift_rel <= 1e-10);
  REQUIRE(traj.samples.size() == 1);
  CHECK(norm_l2(traj.samples.back().second) > 0.0);
}

TEST_CASE("second-order self-convergence in dt (plain NLS)") {
  PhysicalCase pc = zero_wave_case(-40.0, 40.0);
  pc.T = 0.5;
  Grid1D g(pc.a, pc.b, 1024);
  const double times[1] = {pc.T};
  auto terminal = [&](double dt) {
    return solve_nlse_op(pc, g, dt, pc.T, times).samples.back().second;
  };
  ComplexField e1 = terminal(2e-3);
  ComplexField e2 = terminal(1e-3);
  ComplexField e3 = terminal(5e-4);
  const double d1 = norm_l2(e1 - e2);
  const double d2 = norm_l2(e2 - e3);
  CHECK(d1 / d2 > 3.2);
  CHECK(d1 / d2 < 4.8);
}

TEST_CASE("soliton benchmark (reduced horizon)") {
  auto res = soliton_benchmark(1.0, 32.0, 1024, 1e-3, 0.25);
  CHECK(res.l2_error <= 5e-5);
  CHECK(res.mass_drift_rel <= 1e-12);
}
