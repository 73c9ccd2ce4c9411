#include "zak/tridiag.hpp"

#include <cmath>

namespace zak {

// Thomas elimination for a symmetric tridiagonal system with constant
// off-diagonal `off`. diag/rhs are overwritten, the solution lands in rhs.
namespace {

template <class DiagVec, class RhsVec, class Off>
void thomas_constant_off(DiagVec& diag, RhsVec& rhs, Off off, bool guard_pivot,
                         int step_hint) {
  const int n = static_cast<int>(diag.size());
  for (int j = 1; j < n; ++j) {
    if (guard_pivot && std::abs(diag(j - 1)) < 1e-300)
      throw SolverError("tridiagonal pivot breakdown", step_hint, 0.0);
    auto w = off / diag(j - 1);
    diag(j) -= w * off;
    rhs(j) -= w * rhs(j - 1);
  }
  if (guard_pivot && std::abs(diag(n - 1)) < 1e-300)
    throw SolverError("tridiagonal pivot breakdown", step_hint, 0.0);
  rhs(n - 1) /= diag(n - 1);
  for (int j = n - 2; j >= 0; --j) rhs(j) = (rhs(j) - off * rhs(j + 1)) / diag(j);
}

}  // namespace

void solve_real_helmholtz_into(double sigma, const RealField& rhs,
                               RealField& out, Eigen::VectorXd& work) {
  require(sigma > 0.0, "solve_real_helmholtz: requires sigma > 0");
  require_same_grid(rhs.grid, out.grid);
  const Grid1D& g = rhs.grid;
  const int n = g.cells - 1;
  const double inv_h2 = 1.0 / (g.h * g.h);
  const double off = -0.5 * inv_h2;
  work.resize(n);
  work.setConstant(sigma + inv_h2);
  out.v.segment(1, n) = rhs.v.segment(1, n);
  auto sol = out.v.segment(1, n);
  thomas_constant_off(work, sol, off, /*guard_pivot=*/false, -1);
  out.clamp_boundary();
}

RealField solve_real_helmholtz(double sigma, const RealField& rhs) {
  RealField out(rhs.grid);
  Eigen::VectorXd work;
  solve_real_helmholtz_into(sigma, rhs, out, work);
  return out;
}

void solve_complex_tridiagonal_into(Complex lambda, const RealField& c,
                                    const ComplexField& rhs, ComplexField& out,
                                    Eigen::VectorXcd& diag_work,
                                    Eigen::VectorXcd& rhs_work) {
  require(lambda.imag() != 0.0,
          "solve_complex_tridiagonal: requires Im(lambda) != 0");
  require_same_grid(c.grid, rhs.grid);
  require_same_grid(rhs.grid, out.grid);
  const Grid1D& g = rhs.grid;
  const int n = g.cells - 1;
  const double inv_h2 = 1.0 / (g.h * g.h);
  diag_work.resize(n);
  const Complex shift = lambda - 2.0 * inv_h2;
  for (int j = 0; j < n; ++j) diag_work(j) = shift - c.v(j + 1);
  rhs_work = rhs.v.segment(1, n);
  thomas_constant_off(diag_work, rhs_work, Complex(inv_h2, 0.0),
                      /*guard_pivot=*/true, -1);
  out.v.segment(1, n) = rhs_work;
  out.clamp_boundary();
}

ComplexField solve_complex_tridiagonal(Complex lambda, const RealField& c,
                                       const ComplexField& rhs) {
  ComplexField out(rhs.grid);
  Eigen::VectorXcd diag_work, rhs_work;
  solve_complex_tridiagonal_into(lambda, c, rhs, out, diag_work, rhs_work);
  return out;
}

}  // namespace zak
