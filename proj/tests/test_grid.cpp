#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "oracles.hpp"
#include "zak/grid.hpp"
#include "zak/sine_transform.hpp"
#include "zak/tridiag.hpp"

using namespace zak;

namespace {

RealField random_real_field(const Grid1D& g, std::mt19937_64& gen) {
  RealField f(g);
  f.interior() = oracle::random_interior(g.cells, gen);
  return f;
}

ComplexField random_complex_field(const Grid1D& g, std::mt19937_64& gen) {
  ComplexField f(g);
  f.interior() = oracle::random_interior_complex(g.cells, gen);
  return f;
}

}  // namespace

TEST_CASE("grid invariants") {
  Grid1D g(-2.0, 3.0, 10);
  CHECK(g.h == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.node(0) == -2.0);
  CHECK(g.node(10) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 8), ConfigError);
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 3), ConfigError);
  CHECK(Grid1D::with_spacing(-200.0, 200.0, 0.2).cells == 2000);
  CHECK_THROWS_AS(Grid1D::with_spacing(0.0, 1.0, 0.3), ConfigError);
}

TEST_CASE("second_diff on zero and quadratic fields") {
  Grid1D g(-1.0, 2.0, 12);
  RealField zero(g);
  CHECK(norm_inf(second_diff(zero)) == 0.0);

  // (x-a)(b-x) has exact second difference -2 at every interior node.
  auto quad = sample_interior<double>(
      g, [&](double x) { return (x - g.a) * (g.b - x); });
  auto d2 = second_diff(quad);
  for (int j = 1; j < g.cells; ++j)
    CHECK(d2.v(j) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(d2.v(0) == 0.0);
  CHECK(d2.v(g.cells) == 0.0);
}

TEST_CASE("second_diff sine mode is a discrete eigenfunction") {
  Grid1D g(0.0, 1.0, 16);
  const double mu = M_PI / (g.b - g.a);
  auto mode =
      sample_interior<double>(g, [&](double x) { return std::sin(mu * (x - g.a)); });
  auto d2 = second_diff(mode);
  const double s = std::sin(0.5 * M_PI * g.h / (g.b - g.a));
  const double lambda = -4.0 / (g.h * g.h) * s * s;
  for (int j = 1; j < g.cells; ++j)
    CHECK(d2.v(j) == doctest::Approx(lambda * mode.v(j)).epsilon(1e-12));
}

TEST_CASE("forward_diff of the boundary-vanishing quadratic") {
  Grid1D g(-1.5, 2.5, 8);
  auto quad = sample_interior<double>(
      g, [&](double x) { return (x - g.a) * (g.b - x); });
  auto d = forward_diff(quad);
  REQUIRE(d.size() == g.cells);
  for (int j = 0; j < g.cells; ++j) {
    const double expect = g.b + g.a - g.node(j) - g.node(j + 1);
    CHECK(d(j) == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("summation by parts and symmetry of the second difference") {
  Grid1D g(-3.0, 1.0, 32);
  auto gen = oracle::rng(42);
  for (int trial = 0; trial < 8; ++trial) {
    auto u = random_complex_field(g, gen);
    auto v = random_complex_field(g, gen);
    // (-delta_x^2 u, v) = <delta_x^+ u, delta_x^+ v>
    ComplexField neg_d2u(g);
    neg_d2u.v = -second_diff(u).v;
    Complex lhs = inner(neg_d2u, v);
    auto du = forward_diff(u);
    auto dv = forward_diff(v);
    Complex rhs = g.h * dv.dot(du);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    // (delta_x^2 u, v) = (u, delta_x^2 v)
    Complex s1 = inner(second_diff(u), v);
    ComplexField d2v = second_diff(v);
    Complex s2 = inner(u, d2v);
    CHECK(std::abs(s1 - s2) <= 1e-12 * (std::abs(s1) + 1.0));
    // ||delta_x^+ u||^2 = (-delta_x^2 u, u)
    double e1 = g.h * du.squaredNorm();
    double e2 = inner(neg_d2u, u).real();
    CHECK(e1 == doctest::Approx(e2).epsilon(1e-12));
  }
}

TEST_CASE("norms and inner products") {
  Grid1D g(0.0, 2.0, 8);
  RealField zero(g);
  CHECK(norm_l2(zero) == 0.0);

  RealField spike(g);
  spike.v(3) = 1.0;
  CHECK(norm_l2(spike) == doctest::Approx(std::sqrt(g.h)).epsilon(1e-15));

  auto gen = oracle::rng(7);
  auto u = random_complex_field(g, gen);
  auto v = random_complex_field(g, gen);
  CHECK(std::abs(inner(u, v) - std::conj(inner(v, u))) < 1e-14);
  CHECK(inner(u, u).real() == doctest::Approx(norm_l2(u) * norm_l2(u)).epsilon(1e-13));
  CHECK(std::abs(inner(u, u).imag()) < 1e-15);
}

TEST_CASE("dst forward-inverse conventions") {
  Grid1D g(-1.0, 1.0, 16);
  SineTransform dst(g.cells);

  // sin(j pi / M) is the first basis vector of the paper's convention.
  Eigen::VectorXd mode(g.cells - 1);
  for (int j = 1; j < g.cells; ++j) mode(j - 1) = std::sin(j * M_PI / g.cells);
  auto coeff = dst.forward(mode);
  CHECK(coeff(0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(coeff.tail(coeff.size() - 1).cwiseAbs().maxCoeff() < 1e-13);

  const Eigen::VectorXd zeros = Eigen::VectorXd::Zero(g.cells - 1);
  CHECK(dst.forward(zeros).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dst matches the direct O(M^2) sum and roundtrips") {
  auto gen = oracle::rng(99);
  for (int cells : {4, 16, 64, 256}) {
    SineTransform dst(cells);
    Eigen::VectorXd samples = oracle::random_interior(cells, gen);
    const Eigen::VectorXd direct =
        (2.0 / cells) * oracle::sine_sum_direct(samples, cells);
    Eigen::VectorXd fast = dst.forward(samples);
    CHECK((fast - direct).cwiseAbs().maxCoeff() <=
          1e-12 * samples.cwiseAbs().maxCoeff());
    auto back = dst.inverse(fast);
    CHECK((back - samples).cwiseAbs().maxCoeff() <=
          1e-12 * samples.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("real helmholtz solve") {
  Grid1D g(0.0, 1.0, 16);

  RealField zero(g);
  CHECK(norm_inf(solve_real_helmholtz(2.5, zero)) == 0.0);

  // Constructed right-hand side recovers a sine mode.
  auto mode = sample_interior<double>(
      g, [&](double x) { return std::sin(3.0 * M_PI * (x - g.a) / (g.b - g.a)); });
  const double sigma = 0.73;
  RealField rhs(g);
  rhs.v = sigma * mode.v - 0.5 * second_diff(mode).v;
  auto u = solve_real_helmholtz(sigma, rhs);
  CHECK((u.v - mode.v).cwiseAbs().maxCoeff() < 1e-12);

  // Random rhs against a dense LU solve.
  auto gen = oracle::rng(5);
  for (double s : {1e-2, 1.0, 1e6}) {
    auto r = random_real_field(g, gen);
    auto sol = solve_real_helmholtz(s, r);
    Eigen::MatrixXd a = 0.5 * oracle::neg_laplacian_dense(g.cells, g.h);
    a.diagonal().array() += s;
    Eigen::VectorXd dense = a.fullPivLu().solve(Eigen::VectorXd(r.interior()));
    CHECK((Eigen::VectorXd(sol.interior()) - dense).cwiseAbs().maxCoeff() <=
          1e-11 * dense.cwiseAbs().maxCoeff() + 1e-14);
    // Residual bound from the contract.
    RealField applied(g);
    applied.v = s * sol.v - 0.5 * second_diff(sol).v;
    double resid = (applied.v - r.v).cwiseAbs().maxCoeff();
    CHECK(resid <= 1e-12 * (s + 1.0 / (g.h * g.h)) * (norm_l2(sol) + 1e-30));
  }
}

TEST_CASE("complex tridiagonal solve") {
  Grid1D g(0.0, 1.0, 16);
  const Complex lambda(0.0, 1.0 / 0.01);

  RealField c0(g);
  ComplexField zero(g);
  CHECK(norm_inf(solve_complex_tridiagonal(lambda, c0, zero)) == 0.0);

  // c == 0: lambda u - (-delta_x^2 u) = (lambda - Lambda_1) u for the first
  // discrete sine mode with Lambda_1 = (4/h^2) sin^2(mu_1 h / 2).
  auto mode = sample_interior<Complex>(
      g, [&](double x) { return Complex(std::sin(M_PI * (x - g.a) / (g.b - g.a)), 0.0); });
  const double s = std::sin(0.5 * M_PI * g.h / (g.b - g.a));
  const double eig = 4.0 / (g.h * g.h) * s * s;
  ComplexField rhs(g);
  rhs.v = (lambda - eig) * mode.v;
  auto u = solve_complex_tridiagonal(lambda, c0, rhs);
  CHECK((u.v - mode.v).cwiseAbs().maxCoeff() < 1e-12);

  // Random potential and rhs against dense LU.
  auto gen = oracle::rng(31);
  auto c = random_real_field(g, gen);
  auto r = random_complex_field(g, gen);
  auto sol = solve_complex_tridiagonal(lambda, c, r);
  const int n = g.cells - 1;
  Eigen::MatrixXcd a = -oracle::neg_laplacian_dense(g.cells, g.h);
  a.diagonal().array() += lambda;
  a.diagonal() -= Eigen::VectorXcd(c.interior());
  Eigen::VectorXcd dense = a.fullPivLu().solve(Eigen::VectorXcd(r.interior()));
  CHECK((Eigen::VectorXcd(sol.interior()) - dense).cwiseAbs().maxCoeff() <=
        1e-11 * dense.cwiseAbs().maxCoeff());
  (void)n;
}
