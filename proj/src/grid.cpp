#include "zak/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace zak {

void contract_failure(const char* what) {
  std::fprintf(stderr, "zak: contract violation: %s\n", what);
  std::abort();
}

Grid1D Grid1D::with_spacing(double a, double b, double h) {
  if (!(h > 0.0)) throw ConfigError("Grid1D: requires h > 0");
  const double cells_real = (b - a) / h;
  const int cells = static_cast<int>(std::llround(cells_real));
  if (cells < 4 || std::abs(cells_real - cells) > 1e-9 * cells_real)
    throw ConfigError("Grid1D: h does not tile [a, b] into >= 4 cells");
  return Grid1D(a, b, cells);
}

Eigen::VectorXd Grid1D::coords() const {
  Eigen::VectorXd x(nodes());
  for (int j = 0; j <= cells; ++j) x(j) = node(j);
  return x;
}

}  // namespace zak
