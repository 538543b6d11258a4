#pragma once

// Independent verification layer: leapfrog finite-difference solver for
// u_tt = u_xx + V(x)u, discrete residual norms restricted to the interior
// domain of dependence, and convergence-order estimation.

#include <functional>
#include <string>
#include <vector>

#include "liewave/funcspec.hpp"
#include "liewave/symmetry.hpp"

namespace liewave::oracle {

struct Grid2D {
  double x0 = 0.0, dx = 0.0;
  int nx = 0;
  double t0 = 0.0, dt = 0.0;
  int nt = 0;

  static Grid2D make(double x_lo, double x_hi, int nx, double t_lo, double t_hi,
                     int nt);  // enforces dt <= 0.9 dx

  double x(int i) const { return x0 + i * dx; }
  double t(int j) const { return t0 + j * dt; }
};

struct SolutionField {
  Grid2D grid;
  std::vector<double> values;  // row-major, index j * nx + i
  std::string method;
  double abs_tol = 0.0, rel_tol = 0.0;
  symmetry::PotentialSpec potential;
  bool has_potential = false;

  double& at(int i, int j) { return values[std::size_t(j) * grid.nx + i]; }
  double at(int i, int j) const { return values[std::size_t(j) * grid.nx + i]; }
  void validate() const;  // finite entries, size consistency
};

// Leapfrog scheme, first step Taylor-consistent:
//   u^1 = f + dt g + dt^2/2 (f'' + V f).
// Boundary columns are held frozen; only the interior cone is trustworthy.
SolutionField fd_solve(const symmetry::PotentialSpec& pot, const FunctionSpec& f,
                       const FunctionSpec& g, const Grid2D& grid);

struct ResidualNorms {
  double max_norm = 0.0;
  double l2_norm = 0.0;
  int count = 0;  // stencil points examined
};

// Centered-stencil residual of (d_tt - d_xx - V)u over interior points whose
// backward cone (unit speed) stays inside the grid.
ResidualNorms pde_residual(const SolutionField& u,
                           const symmetry::PotentialSpec& pot);

// Residual of a forward integral operator against target data on sample
// points: norms of forward(x) - data(x). The forward callable is supplied by
// whichever solver module owns the equation.
ResidualNorms inteq_residual(const std::function<double(double)>& forward,
                             const FunctionSpec& data,
                             const std::vector<double>& xs);

// Observed order p from residuals at h and h/2.
double convergence_order(double residual_h, double residual_h2);

}  // namespace liewave::oracle
