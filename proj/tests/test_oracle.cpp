#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "liewave/oracle.hpp"

using namespace liewave;
using namespace liewave::oracle;

namespace {

// V = 0 on x > 0 via a vanishing inverse-square coefficient
symmetry::PotentialSpec free_pot() {
  return symmetry::PotentialSpec::inverse_square(0.0);
}

}  // namespace

TEST_CASE("Grid2D: construction and CFL gate") {
  auto g = Grid2D::make(1.0, 5.0, 41, 0.0, 1.0, 21);
  CHECK(g.dx == doctest::Approx(0.1));
  CHECK(g.dt == doctest::Approx(0.05));
  CHECK(g.x(40) == doctest::Approx(5.0));
  CHECK(g.t(20) == doctest::Approx(1.0));
  CHECK_THROWS_AS(Grid2D::make(0.0, 1.0, 11, 0.0, 1.0, 5),
                  std::invalid_argument);  // dt = 0.25 > 0.9 * 0.1
}

TEST_CASE("fd_solve: trivial data and linear exactness") {
  auto grid = Grid2D::make(1.0, 5.0, 41, 0.0, 1.0, 26);
  auto z = fd_solve(free_pot(), FunctionSpec::zero(), FunctionSpec::zero(), grid);
  for (double v : z.values) CHECK(v == 0.0);

  // u = x + t is exact on the stencil
  auto f = FunctionSpec::from_callable("x", [](double x) { return x; });
  auto g = FunctionSpec::from_callable("one", [](double) { return 1.0; });
  auto u = fd_solve(free_pot(), f, g, grid);
  auto r = pde_residual(u, free_pot());
  CHECK(r.count > 0);
  CHECK(r.max_norm < 1e-11);
}

TEST_CASE("fd_solve: standing wave against closed form") {
  auto f = FunctionSpec::from_callable("sinx", [](double x) { return std::sin(x); });
  auto run = [&](int n) {
    auto grid = Grid2D::make(1.0, 1.0 + 8.0, 8 * n + 1, 0.0, 1.0, 2 * n + 1);
    auto u = fd_solve(free_pot(), f, FunctionSpec::zero(), grid);
    double err = 0.0;
    for (int j = 0; j < grid.nt; ++j) {
      double elapsed = grid.t(j);
      double speed = grid.dx / grid.dt;
      for (int i = 0; i < grid.nx; ++i) {
        double x = grid.x(i);
        if (x - grid.x0 < speed * elapsed + grid.dx ||
            grid.x(grid.nx - 1) - x < speed * elapsed + grid.dx)
          continue;
        err = std::max(err,
                       std::fabs(u.at(i, j) - std::cos(elapsed) * std::sin(x)));
      }
    }
    return err;
  };
  double e1 = run(10), e2 = run(20);
  CHECK(e1 < 5e-3);
  CHECK(convergence_order(e1, e2) == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("pde_residual: analytic solutions and noise sensitivity") {
  // exact traveling wave u = exp(-(x - t)^2) for V = 0
  auto fill = [](const Grid2D& g, auto&& fn) {
    SolutionField u;
    u.grid = g;
    u.values.resize(std::size_t(g.nx) * g.nt);
    for (int j = 0; j < g.nt; ++j)
      for (int i = 0; i < g.nx; ++i) u.at(i, j) = fn(g.x(i), g.t(j));
    return u;
  };
  auto wave = [](double x, double t) {
    double z = x - t - 3.0;
    return std::exp(-z * z);
  };
  auto g1 = Grid2D::make(1.0, 7.0, 61, 0.0, 1.0, 21);
  auto g2 = Grid2D::make(1.0, 7.0, 121, 0.0, 1.0, 41);
  double r1 = pde_residual(fill(g1, wave), free_pot()).max_norm;
  double r2 = pde_residual(fill(g2, wave), free_pot()).max_norm;
  CHECK(convergence_order(r1, r2) == doctest::Approx(2.0).epsilon(0.15));

  // uncorrelated noise blows up like h^{-2}
  std::srand(42);
  auto noise = [](double, double) { return (std::rand() % 1000) / 1000.0; };
  double n1 = pde_residual(fill(g1, noise), free_pot()).max_norm;
  CHECK(n1 > 1.0 / (g1.dx * g1.dx) * 0.1);
}

TEST_CASE("fd_solve: energy near-conservation for compact data") {
  auto f = FunctionSpec::gaussian(6.0, 0.4);
  auto energy = [](const SolutionField& u, int j) {
    const Grid2D& g = u.grid;
    double e = 0.0;
    for (int i = 1; i + 1 < g.nx; ++i) {
      double ut = (u.at(i, j + 1) - u.at(i, j - 1)) / (2.0 * g.dt);
      double ux = (u.at(i + 1, j) - u.at(i - 1, j)) / (2.0 * g.dx);
      e += (ut * ut + ux * ux) * g.dx;  // V = 0
    }
    return e;
  };
  auto run = [&](int n) {
    auto grid = Grid2D::make(1.0, 11.0, 10 * n + 1, 0.0, 1.0, 2 * n + 1);
    auto u = fd_solve(free_pot(), f, FunctionSpec::zero(), grid);
    double e_lo = energy(u, 1), e_hi = energy(u, grid.nt - 2);
    return std::fabs(e_hi - e_lo) / e_lo;
  };
  double d1 = run(20), d2 = run(40);
  CHECK(d1 < 5e-3);
  CHECK(d2 < d1);
}

TEST_CASE("fd_solve: domain of dependence") {
  auto grid = Grid2D::make(1.0, 9.0, 81, 0.0, 1.0, 21);
  auto f1 = FunctionSpec::gaussian(3.0, 0.3);
  // perturb far outside the backward cone of (x = 3, t = 1)
  auto f2 = FunctionSpec::from_callable("pert", [&](double x) {
    double z = (x - 8.0) / 0.2;
    return f1(x) + 0.5 * std::exp(-0.5 * z * z);
  });
  auto u1 = fd_solve(free_pot(), f1, FunctionSpec::zero(), grid);
  auto u2 = fd_solve(free_pot(), f2, FunctionSpec::zero(), grid);
  // x = 3 is index 20; cone of radius 1 + margin reaches x = 4.2 < 7 where
  // the perturbation lives (support essentially [7.2, 8.8])
  double diff = 0.0;
  for (int j = 0; j < grid.nt; ++j)
    diff = std::max(diff, std::fabs(u1.at(20, j) - u2.at(20, j)));
  CHECK(diff < 1e-12);
}

TEST_CASE("inteq_residual: norms of a forward-minus-data gap") {
  auto data = FunctionSpec::from_callable("lin", [](double x) { return 2.0 * x; });
  std::vector<double> xs{0.5, 1.0, 1.5, 2.0};
  auto r0 = inteq_residual([](double x) { return 2.0 * x; }, data, xs);
  CHECK(r0.max_norm == 0.0);
  CHECK(r0.count == 4);
  auto r1 = inteq_residual([](double x) { return 2.0 * x + 0.01; }, data, xs);
  auto r2 = inteq_residual([](double x) { return 2.0 * x + 0.02; }, data, xs);
  CHECK(r1.max_norm == doctest::Approx(0.01));
  CHECK(r2.l2_norm == doctest::Approx(2.0 * r1.l2_norm).epsilon(1e-12));
}

TEST_CASE("convergence_order: synthetic rates") {
  CHECK(convergence_order(4e-4, 1e-4) == doctest::Approx(2.0));
  CHECK(convergence_order(2e-3, 1e-3) == doctest::Approx(1.0));
  CHECK_THROWS_AS(convergence_order(0.0, 1e-4), std::invalid_argument);
}
