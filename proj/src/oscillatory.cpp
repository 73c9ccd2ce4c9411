#include "zak/oscillatory.hpp"

#include <cmath>

#include "zak/sine_transform.hpp"

namespace zak {

WaveModes decompose_waves(const PhysicalCase& pc, const Grid1D& g) {
  pc.validate();
  require(g.a == pc.a && g.b == pc.b, "grid does not cover the case domain");
  const int n = g.cells - 1;
  const auto& dst = shared_sine_transform(g.cells);

  WaveModes m;
  m.grid = g;
  m.epsilon = pc.epsilon;
  m.alpha = pc.alpha;
  m.beta = pc.beta;
  m.mu.resize(n);
  for (int l = 1; l <= n; ++l) m.mu(l - 1) = l * M_PI / (g.b - g.a);

  Eigen::VectorXd w0(n), w1(n);
  for (int j = 1; j < g.cells; ++j) {
    w0(j - 1) = pc.profiles.omega0.eval(g.node(j), 0);
    w1(j - 1) = pc.profiles.omega1.eval(g.node(j), 0);
  }
  m.omega0_hat = dst.forward(w0);
  m.omega1_hat = dst.forward(w1);
  m.g1_amp = std::pow(pc.epsilon, pc.alpha) * m.omega0_hat;
  m.g2_amp = (std::pow(pc.epsilon, 1.0 + pc.beta) *
              m.omega1_hat.array() / m.mu.array())
                 .matrix();
  return m;
}

namespace {

RealField synthesize(const WaveModes& m, const Eigen::VectorXd& coeffs) {
  RealField out(m.grid);
  out.interior() = shared_sine_transform(m.grid.cells).inverse(coeffs);
  return out;
}

// Per-mode antiderivative of G(x, t/eps) in physical time:
//   A_l(t) = (eps / mu_l) [g1_l sin(mu_l t/eps) - g2_l cos(mu_l t/eps)]
Eigen::VectorXd mode_antiderivative(const WaveModes& m, double t) {
  const double s = t / m.epsilon;
  Eigen::VectorXd out(m.mu.size());
  for (Eigen::Index l = 0; l < m.mu.size(); ++l) {
    const double phase = m.mu(l) * s;
    out(l) = m.epsilon / m.mu(l) *
             (m.g1_amp(l) * std::sin(phase) - m.g2_amp(l) * std::cos(phase));
  }
  return out;
}

}  // namespace

RealField evaluate_G(const WaveModes& m, double s) {
  require(s >= 0.0, "evaluate_G: requires s >= 0");
  Eigen::VectorXd coeffs(m.mu.size());
  for (Eigen::Index l = 0; l < m.mu.size(); ++l) {
    const double phase = m.mu(l) * s;
    coeffs(l) = m.g1_amp(l) * std::cos(phase) + m.g2_amp(l) * std::sin(phase);
  }
  return synthesize(m, coeffs);
}

RealField integral_of_G(const WaveModes& m, double t0, double t1) {
  require(t1 >= t0 && t0 >= 0.0, "integral_of_G: requires t1 >= t0 >= 0");
  Eigen::VectorXd coeffs = mode_antiderivative(m, t1) - mode_antiderivative(m, t0);
  return synthesize(m, coeffs);
}

RealField averaged_potential(const WaveModes& m, double t_k, double tau) {
  require(tau > 0.0 && t_k >= tau, "averaged_potential: requires t_k >= tau > 0");
  Eigen::VectorXd coeffs =
      (mode_antiderivative(m, t_k + tau) - mode_antiderivative(m, t_k - tau)) /
      (2.0 * tau);
  return synthesize(m, coeffs);
}

}  // namespace zak
