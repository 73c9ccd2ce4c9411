// Physical test cases: perturbed initial density, the derivative functions
// phi_1..phi_4 and the Taylor first step of the time integrator.
#pragma once

#include <functional>
#include <string>
#include <utility>

#include "zak/grid.hpp"

namespace zak {

// A scalar profile with derivatives up to `max_order`; eval(x, k) returns the
// k-th derivative. Sampled profiles expose order 0 only.
struct RealProfile {
  std::function<double(double, int)> eval;
  int max_order = 0;
};

struct ComplexProfile {
  std::function<Complex(double, int)> eval;
  int max_order = 0;
};

struct ProfileSet {
  ComplexProfile envelope;  // E_0; needs derivatives to order 4 when analytic
  RealProfile omega0;       // density perturbation; order 2 when analytic
  RealProfile omega1;       // density-rate perturbation; values only
  bool analytic = true;     // false switches phi derivatives to FD stencils

  // The Gaussian set used by the convergence studies:
  //   E_0 = exp(-x^2/2), omega0 = exp(-x^2/4), omega1 = exp(-x^2/3) sin(x).
  static ProfileSet builtin();
};

struct PhysicalCase {
  std::string name = "custom";
  double epsilon = 1.0;  // in (0, 1]
  double alpha = 0.0;    // >= 0
  double beta = 0.0;     // >= 0
  double a = -200.0;
  double b = 200.0;
  double T = 1.0;
  ProfileSet profiles = ProfileSet::builtin();

  double alpha_star() const { return std::min(alpha, 1.0); }
  void validate() const;  // throws ConfigError

  // "case-I": alpha = 1, beta = 0 (well-prepared).
  // "case-II": alpha = 0, beta = 0 (ill-prepared).
  static PhysicalCase named(const std::string& name);
};

// Boundary-truncation diagnostics. Warning above 1e-8, hard ConfigError above
// 1e-4; the omega1 mean is reported (not enforced), warning above 1e-8.
struct TruncationReport {
  double boundary_magnitude = 0.0;  // max profile magnitude at x = a, b
  double omega1_integral = 0.0;     // trapezoidal integral of omega1
  bool warned = false;
};

TruncationReport check_truncation(const PhysicalCase& pc, const Grid1D& g);

// N0_j = -|E_0(x_j)|^2 + eps^alpha omega0(x_j)
// N1_j = phi_1(x_j) + eps^beta omega1(x_j),  phi_1 = 2 Im(E_0'' conj(E_0))
std::pair<RealField, RealField> build_perturbed_density(const PhysicalCase& pc,
                                                        const Grid1D& g);

struct PhiSet {
  RealField phi1;     // d/dt of the density at t = 0
  ComplexField phi2;  // d/dt E at t = 0
  ComplexField phi3;  // d^2/dt^2 E at t = 0
  RealField phi4;     // d^2/dt^2 F at t = 0
};

// phi_2 = i(E_0'' - N0 E_0)
// phi_3 = i(phi_2'' - N1 E_0 - N0 phi_2)
// phi_4 = 2 Im(phi_2 conj(E_0'') + E_0 conj(phi_2''))
// Second derivatives are analytic when the profiles provide them, otherwise
// the second-order FD stencil is used.
PhiSet compute_phi_functions(const PhysicalCase& pc, const Grid1D& g,
                             const RealField& N0, const RealField& N1);

struct InitialState {
  ComplexField E0;  // E at level 0
  ComplexField E1;  // E_0 + tau phi_2 + (tau^2/2) phi_3
  RealField F0;     // identically zero
  RealField F1;     // (tau^2/2) phi_4
  PhiSet phi;
  RealField N0, N1;
  TruncationReport truncation;
};

InitialState build_first_steps(const PhysicalCase& pc, const Grid1D& g,
                               double tau);

}  // namespace zak
