#include "liewave/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace liewave::oracle {

Grid2D Grid2D::make(double x_lo, double x_hi, int nx, double t_lo, double t_hi,
                    int nt) {
  if (nx < 3 || nt < 3) throw std::invalid_argument("Grid2D: need nx, nt >= 3");
  if (!(x_hi > x_lo) || !(t_hi > t_lo))
    throw std::invalid_argument("Grid2D: empty extent");
  Grid2D g;
  g.x0 = x_lo;
  g.dx = (x_hi - x_lo) / (nx - 1);
  g.nx = nx;
  g.t0 = t_lo;
  g.dt = (t_hi - t_lo) / (nt - 1);
  g.nt = nt;
  if (g.dt > 0.9 * g.dx + 1e-15)
    throw std::invalid_argument("Grid2D: CFL violated (dt > 0.9 dx)");
  return g;
}

void SolutionField::validate() const {
  if ((int)values.size() != grid.nx * grid.nt)
    throw std::logic_error("SolutionField: size mismatch");
  for (double v : values)
    if (!std::isfinite(v)) throw std::logic_error("SolutionField: non-finite");
}

SolutionField fd_solve(const symmetry::PotentialSpec& pot, const FunctionSpec& f,
                       const FunctionSpec& g, const Grid2D& grid) {
  if (grid.dt > 0.9 * grid.dx + 1e-15)
    throw std::invalid_argument("fd_solve: CFL violated");
  SolutionField u;
  u.grid = grid;
  u.values.assign(std::size_t(grid.nx) * grid.nt, 0.0);
  u.method = "fd_leapfrog";
  u.potential = pot;
  u.has_potential = true;

  std::vector<double> V(grid.nx);
  for (int i = 0; i < grid.nx; ++i) V[i] = symmetry::potential_value(pot, grid.x(i));

  for (int i = 0; i < grid.nx; ++i) u.at(i, 0) = f(grid.x(i));
  double dt2 = grid.dt * grid.dt, dx2 = grid.dx * grid.dx;
  for (int i = 0; i < grid.nx; ++i) {
    double x = grid.x(i);
    double fxx;
    if (i == 0 || i == grid.nx - 1) {
      // one-sided second difference; boundary columns are frozen afterwards
      fxx = 0.0;
    } else {
      fxx = (u.at(i + 1, 0) - 2.0 * u.at(i, 0) + u.at(i - 1, 0)) / dx2;
    }
    u.at(i, 1) = f(x) + grid.dt * g(x) + 0.5 * dt2 * (fxx + V[i] * f(x));
  }
  u.at(0, 1) = u.at(0, 0);
  u.at(grid.nx - 1, 1) = u.at(grid.nx - 1, 0);

  for (int j = 1; j + 1 < grid.nt; ++j) {
    for (int i = 1; i + 1 < grid.nx; ++i) {
      double lap = (u.at(i + 1, j) - 2.0 * u.at(i, j) + u.at(i - 1, j)) / dx2;
      u.at(i, j + 1) =
          2.0 * u.at(i, j) - u.at(i, j - 1) + dt2 * (lap + V[i] * u.at(i, j));
    }
    u.at(0, j + 1) = u.at(0, j);
    u.at(grid.nx - 1, j + 1) = u.at(grid.nx - 1, j);
  }
  return u;
}

ResidualNorms pde_residual(const SolutionField& u,
                           const symmetry::PotentialSpec& pot) {
  u.validate();
  const Grid2D& g = u.grid;
  ResidualNorms out;
  double sumsq = 0.0;
  double dt2 = g.dt * g.dt, dx2 = g.dx * g.dx;
  for (int j = 1; j + 1 < g.nt; ++j) {
    double elapsed = g.t(j) - g.t0;
    for (int i = 1; i + 1 < g.nx; ++i) {
      double x = g.x(i);
      // exclude anything the boundary columns can influence: the discrete
      // scheme propagates one cell per step, i.e. at speed dx/dt >= 1
      double speed = std::max(1.0, g.dx / g.dt);
      if (x - g.x0 < speed * elapsed + g.dx ||
          g.x(g.nx - 1) - x < speed * elapsed + g.dx)
        continue;
      double utt = (u.at(i, j + 1) - 2.0 * u.at(i, j) + u.at(i, j - 1)) / dt2;
      double uxx = (u.at(i + 1, j) - 2.0 * u.at(i, j) + u.at(i - 1, j)) / dx2;
      double r = utt - uxx - symmetry::potential_value(pot, x) * u.at(i, j);
      out.max_norm = std::max(out.max_norm, std::fabs(r));
      sumsq += r * r;
      ++out.count;
    }
  }
  out.l2_norm = out.count ? std::sqrt(sumsq / out.count) : 0.0;
  return out;
}

ResidualNorms inteq_residual(const std::function<double(double)>& forward,
                             const FunctionSpec& data,
                             const std::vector<double>& xs) {
  ResidualNorms out;
  double sumsq = 0.0;
  for (double x : xs) {
    double r = forward(x) - data(x);
    out.max_norm = std::max(out.max_norm, std::fabs(r));
    sumsq += r * r;
    ++out.count;
  }
  out.l2_norm = out.count ? std::sqrt(sumsq / out.count) : 0.0;
  return out;
}

double convergence_order(double residual_h, double residual_h2) {
  if (!(residual_h > 0.0) || !(residual_h2 > 0.0))
    throw std::invalid_argument("convergence_order: positive residuals required");
  return std::log(residual_h / residual_h2) / std::log(2.0);
}

}  // namespace liewave::oracle
