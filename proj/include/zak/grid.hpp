// Uniform 1D Dirichlet grid, grid functions and finite-difference operators.
//
// Grid functions live in X_M = {v in C^{M+1} : v_0 = v_M = 0}; every operation
// here writes interior nodes only, so membership in X_M is preserved by
// construction. Norms and inner products carry the mesh weight h. Fields are
// plain values (they embed their grid), safe to copy across threads.
#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>

#include "zak/errors.hpp"

namespace zak {

using Complex = std::complex<double>;

struct Grid1D {
  double a = 0.0;  // left endpoint
  double b = 0.0;  // right endpoint
  int cells = 0;   // M
  double h = 0.0;  // (b - a) / M

  Grid1D() = default;  // empty grid, only valid as a placeholder
  Grid1D(double a_, double b_, int cells_) : a(a_), b(b_), cells(cells_) {
    if (!(b > a)) throw ConfigError("Grid1D: requires b > a");
    if (cells < 4) throw ConfigError("Grid1D: requires M >= 4");
    h = (b - a) / cells;
  }

  // M = round((b-a)/h); rejects spacings that do not tile the interval.
  static Grid1D with_spacing(double a, double b, double h);

  int nodes() const { return cells + 1; }
  double node(int j) const { return a + j * h; }
  Eigen::VectorXd coords() const;

  friend bool operator==(const Grid1D& p, const Grid1D& q) {
    return p.a == q.a && p.b == q.b && p.cells == q.cells;
  }
};

template <class Scalar>
struct GridFunction {
  Grid1D grid;
  Eigen::VectorX<Scalar> v;  // size M+1, v(0) = v(M) = 0

  GridFunction() = default;
  explicit GridFunction(const Grid1D& g)
      : grid(g), v(Eigen::VectorX<Scalar>::Zero(g.nodes())) {}

  int size() const { return static_cast<int>(v.size()); }
  void clamp_boundary() {
    v(0) = Scalar(0);
    v(v.size() - 1) = Scalar(0);
  }
  // Interior view, nodes 1..M-1.
  auto interior() { return v.segment(1, grid.cells - 1); }
  auto interior() const { return v.segment(1, grid.cells - 1); }
};

using RealField = GridFunction<double>;
using ComplexField = GridFunction<Complex>;

inline void require_same_grid(const Grid1D& p, const Grid1D& q) {
  require(p.cells >= 4 && p == q, "grid mismatch between fields");
}

// Samples f(x_j) at interior nodes; boundary stays zero.
template <class Scalar, class Fn>
GridFunction<Scalar> sample_interior(const Grid1D& g, Fn&& f) {
  GridFunction<Scalar> out(g);
  for (int j = 1; j < g.cells; ++j) out.v(j) = f(g.node(j));
  return out;
}

// Three-point second difference (u_{j+1} - 2u_j + u_{j-1}) / h^2 on the
// interior; boundary entries of the result are zero.
template <class Scalar>
GridFunction<Scalar> second_diff(const GridFunction<Scalar>& u) {
  const Grid1D& g = u.grid;
  GridFunction<Scalar> out(g);
  const double inv_h2 = 1.0 / (g.h * g.h);
  out.v.segment(1, g.cells - 1) =
      inv_h2 * (u.v.segment(2, g.cells - 1) - 2.0 * u.v.segment(1, g.cells - 1) +
                u.v.segment(0, g.cells - 1));
  return out;
}

// Forward difference (u_{j+1} - u_j) / h for j = 0..M-1.
template <class Scalar>
Eigen::VectorX<Scalar> forward_diff(const GridFunction<Scalar>& u) {
  const Grid1D& g = u.grid;
  return ((u.v.tail(g.cells) - u.v.head(g.cells)) / g.h).eval();
}

// ||u||^2 = h * sum_{j=1}^{M-1} |u_j|^2
template <class Scalar>
double norm_l2(const GridFunction<Scalar>& u) {
  return std::sqrt(u.grid.h * u.interior().squaredNorm());
}

// (u, v) = h * sum_{j=1}^{M-1} u_j conj(v_j)
template <class Scalar>
Scalar inner(const GridFunction<Scalar>& u, const GridFunction<Scalar>& v) {
  require_same_grid(u.grid, v.grid);
  // Eigen's dot conjugates the left factor; the paper conjugates the right.
  return u.grid.h * v.interior().dot(u.interior());
}

// ||delta_x^+ u|| = sqrt(h * sum_{j=0}^{M-1} |(u_{j+1}-u_j)/h|^2)
template <class Scalar>
double seminorm_h1(const GridFunction<Scalar>& u) {
  return std::sqrt(u.grid.h * forward_diff(u).squaredNorm());
}

template <class Scalar>
double norm_inf(const GridFunction<Scalar>& u) {
  return u.v.cwiseAbs().maxCoeff();
}

template <class Scalar>
GridFunction<Scalar> operator-(const GridFunction<Scalar>& u,
                               const GridFunction<Scalar>& v) {
  require_same_grid(u.grid, v.grid);
  GridFunction<Scalar> out(u.grid);
  out.v = u.v - v.v;
  return out;
}

// Restriction onto a coarser grid whose nodes are a subset of the fine ones.
template <class Scalar>
GridFunction<Scalar> restrict_to(const GridFunction<Scalar>& fine,
                                 const Grid1D& coarse) {
  const Grid1D& gf = fine.grid;
  if (gf.a != coarse.a || gf.b != coarse.b || coarse.cells <= 0 ||
      gf.cells % coarse.cells != 0)
    throw ConfigError("restrict_to: coarse nodes are not a subset of fine nodes");
  const int r = gf.cells / coarse.cells;
  GridFunction<Scalar> out(coarse);
  for (int j = 1; j < coarse.cells; ++j) out.v(j) = fine.v(r * j);
  return out;
}

}  // namespace zak
