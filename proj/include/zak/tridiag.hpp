// Tridiagonal solves behind the two implicit updates of the time stepper.
#pragma once

#include "zak/grid.hpp"

namespace zak {

// Solves (sigma - (1/2) delta_x^2) u = rhs at interior nodes, u in X_M.
// The matrix is symmetric positive definite for sigma > 0.
RealField solve_real_helmholtz(double sigma, const RealField& rhs);

// Solves lambda * u - (-delta_x^2 u + c u) = rhs at interior nodes, u in X_M.
// lambda must have a nonzero imaginary part (here lambda = i/tau).
// Throws SolverError on pivot breakdown (|pivot| < 1e-300).
ComplexField solve_complex_tridiagonal(Complex lambda, const RealField& c,
                                       const ComplexField& rhs);

// Workspace-reusing kernels for the time loop (identical math, no per-call
// allocation). `work` must have at least M-1 entries.
void solve_real_helmholtz_into(double sigma, const RealField& rhs,
                               RealField& out, Eigen::VectorXd& work);
void solve_complex_tridiagonal_into(Complex lambda, const RealField& c,
                                    const ComplexField& rhs, ComplexField& out,
                                    Eigen::VectorXcd& diag_work,
                                    Eigen::VectorXcd& rhs_work);

}  // namespace zak
