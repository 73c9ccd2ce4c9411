#include "zak/problem.hpp"

#include <cmath>

namespace zak {

namespace {

// Derivatives of exp(-c x^2) via the Hermite-style recurrence
// p_{k+1} = p_k' - 2 c x p_k applied to the polynomial prefactor.
double gaussian_deriv(double c, double x, int order) {
  // prefactor polynomials up to the orders used here (<= 4)
  switch (order) {
    case 0: return std::exp(-c * x * x);
    case 1: return -2.0 * c * x * std::exp(-c * x * x);
    case 2: return (4.0 * c * c * x * x - 2.0 * c) * std::exp(-c * x * x);
    case 3:
      return (-8.0 * c * c * c * x * x * x + 12.0 * c * c * x) *
             std::exp(-c * x * x);
    case 4:
      return (16.0 * c * c * c * c * x * x * x * x -
              48.0 * c * c * c * x * x + 12.0 * c * c) *
             std::exp(-c * x * x);
    default: contract_failure("gaussian_deriv: order > 4");
  }
}

}  // namespace

ProfileSet ProfileSet::builtin() {
  ProfileSet set;
  set.envelope = {[](double x, int k) { return Complex(gaussian_deriv(0.5, x, k), 0.0); }, 4};
  set.omega0 = {[](double x, int k) { return gaussian_deriv(0.25, x, k); }, 2};
  set.omega1 = {[](double x, int k) {
                  require(k == 0, "omega1 profile: derivatives not provided");
                  return std::exp(-x * x / 3.0) * std::sin(x);
                },
                0};
  set.analytic = true;
  return set;
}

void PhysicalCase::validate() const {
  if (!(epsilon > 0.0 && epsilon <= 1.0))
    throw ConfigError("PhysicalCase: requires 0 < epsilon <= 1");
  if (alpha < 0.0 || beta < 0.0)
    throw ConfigError("PhysicalCase: requires alpha, beta >= 0");
  if (!(T > 0.0)) throw ConfigError("PhysicalCase: requires T > 0");
  if (!(b > a)) throw ConfigError("PhysicalCase: requires b > a");
}

PhysicalCase PhysicalCase::named(const std::string& name) {
  PhysicalCase pc;
  pc.name = name;
  if (name == "case-I") {
    pc.alpha = 1.0;
    pc.beta = 0.0;
  } else if (name == "case-II") {
    pc.alpha = 0.0;
    pc.beta = 0.0;
  } else {
    throw ConfigError("unknown case name '" + name +
                      "' (expected case-I or case-II)");
  }
  return pc;
}

TruncationReport check_truncation(const PhysicalCase& pc, const Grid1D& g) {
  TruncationReport rep;
  for (double x : {pc.a, pc.b}) {
    rep.boundary_magnitude = std::max(
        rep.boundary_magnitude, std::abs(pc.profiles.envelope.eval(x, 0)));
    rep.boundary_magnitude =
        std::max(rep.boundary_magnitude, std::abs(pc.profiles.omega0.eval(x, 0)));
    rep.boundary_magnitude =
        std::max(rep.boundary_magnitude, std::abs(pc.profiles.omega1.eval(x, 0)));
  }
  if (rep.boundary_magnitude > 1e-4)
    throw ConfigError(
        "profiles do not decay at the domain boundary (magnitude > 1e-4); "
        "enlarge [a, b]");
  double integ = 0.0;
  for (int j = 1; j < g.cells; ++j) integ += pc.profiles.omega1.eval(g.node(j), 0);
  integ += 0.5 * (pc.profiles.omega1.eval(g.a, 0) + pc.profiles.omega1.eval(g.b, 0));
  rep.omega1_integral = g.h * integ;
  rep.warned =
      rep.boundary_magnitude > 1e-8 || std::abs(rep.omega1_integral) > 1e-8;
  return rep;
}

std::pair<RealField, RealField> build_perturbed_density(const PhysicalCase& pc,
                                                        const Grid1D& g) {
  pc.validate();
  require(g.a == pc.a && g.b == pc.b, "grid does not cover the case domain");
  const double ea = std::pow(pc.epsilon, pc.alpha);
  const double eb = std::pow(pc.epsilon, pc.beta);
  const auto& prof = pc.profiles;

  RealField n0(g), n1(g);
  if (prof.analytic) {
    for (int j = 1; j < g.cells; ++j) {
      const double x = g.node(j);
      const Complex e0 = prof.envelope.eval(x, 0);
      const Complex e0pp = prof.envelope.eval(x, 2);
      n0.v(j) = -std::norm(e0) + ea * prof.omega0.eval(x, 0);
      n1.v(j) = 2.0 * std::imag(e0pp * std::conj(e0)) + eb * prof.omega1.eval(x, 0);
    }
  } else {
    auto e0 = sample_interior<Complex>(g, [&](double x) { return prof.envelope.eval(x, 0); });
    auto e0pp = second_diff(e0);
    for (int j = 1; j < g.cells; ++j) {
      const double x = g.node(j);
      n0.v(j) = -std::norm(e0.v(j)) + ea * prof.omega0.eval(x, 0);
      n1.v(j) = 2.0 * std::imag(e0pp.v(j) * std::conj(e0.v(j))) +
                eb * prof.omega1.eval(x, 0);
    }
  }
  return {std::move(n0), std::move(n1)};
}

PhiSet compute_phi_functions(const PhysicalCase& pc, const Grid1D& g,
                             const RealField& N0, const RealField& N1) {
  require_same_grid(N0.grid, g);
  require_same_grid(N1.grid, g);
  const auto& prof = pc.profiles;
  const Complex I(0.0, 1.0);
  PhiSet out{RealField(g), ComplexField(g), ComplexField(g), RealField(g)};

  if (prof.analytic) {
    const double ea = std::pow(pc.epsilon, pc.alpha);
    for (int j = 1; j < g.cells; ++j) {
      const double x = g.node(j);
      const Complex e0 = prof.envelope.eval(x, 0);
      const Complex e0p = prof.envelope.eval(x, 1);
      const Complex e0pp = prof.envelope.eval(x, 2);
      const Complex e0pppp = prof.envelope.eval(x, 4);
      const double n0 = N0.v(j);
      // |E_0|^2 derivatives feed N0', N0''.
      const double n0p =
          -2.0 * std::real(std::conj(e0) * e0p) + ea * prof.omega0.eval(x, 1);
      const double n0pp =
          -2.0 * (std::norm(e0p) + std::real(std::conj(e0) * e0pp)) +
          ea * prof.omega0.eval(x, 2);

      const Complex phi2 = I * (e0pp - n0 * e0);
      const Complex phi2pp =
          I * (e0pppp - (n0pp * e0 + 2.0 * n0p * e0p + n0 * e0pp));
      out.phi1.v(j) = 2.0 * std::imag(e0pp * std::conj(e0));
      out.phi2.v(j) = phi2;
      out.phi3.v(j) = I * (phi2pp - N1.v(j) * e0 - n0 * phi2);
      out.phi4.v(j) = 2.0 * std::imag(phi2 * std::conj(e0pp) +
                                      e0 * std::conj(phi2pp));
    }
    return out;
  }

  // FD fallback: every second derivative is the three-point stencil.
  auto e0 = sample_interior<Complex>(g, [&](double x) { return prof.envelope.eval(x, 0); });
  auto e0pp = second_diff(e0);
  ComplexField phi2(g);
  for (int j = 1; j < g.cells; ++j)
    phi2.v(j) = I * (e0pp.v(j) - N0.v(j) * e0.v(j));
  auto phi2pp = second_diff(phi2);
  for (int j = 1; j < g.cells; ++j) {
    out.phi1.v(j) = 2.0 * std::imag(e0pp.v(j) * std::conj(e0.v(j)));
    out.phi2.v(j) = phi2.v(j);
    out.phi3.v(j) = I * (phi2pp.v(j) - N1.v(j) * e0.v(j) - N0.v(j) * phi2.v(j));
    out.phi4.v(j) = 2.0 * std::imag(phi2.v(j) * std::conj(e0pp.v(j)) +
                                    e0.v(j) * std::conj(phi2pp.v(j)));
  }
  return out;
}

InitialState build_first_steps(const PhysicalCase& pc, const Grid1D& g,
                               double tau) {
  require(tau > 0.0, "build_first_steps: requires tau > 0");
  pc.validate();
  InitialState st;
  st.truncation = check_truncation(pc, g);
  auto [n0, n1] = build_perturbed_density(pc, g);
  st.N0 = std::move(n0);
  st.N1 = std::move(n1);
  st.phi = compute_phi_functions(pc, g, st.N0, st.N1);
  st.E0 = sample_interior<Complex>(
      g, [&](double x) { return pc.profiles.envelope.eval(x, 0); });
  st.E1 = ComplexField(g);
  st.E1.v = st.E0.v + tau * st.phi.phi2.v + (0.5 * tau * tau) * st.phi.phi3.v;
  st.E1.clamp_boundary();
  st.F0 = RealField(g);
  st.F1 = RealField(g);
  st.F1.v = (0.5 * tau * tau) * st.phi.phi4.v;
  st.F1.clamp_boundary();
  return st;
}

}  // namespace zak
