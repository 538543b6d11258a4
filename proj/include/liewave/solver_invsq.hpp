#pragma once

// Cauchy solver for u_tt = u_xx - (A/x^2) u on x > 0 via the scaling-symmetry
// Hankel representation. The sine-product kernel
//   p(x,y,t) = int_0^inf J_nu(ax) J_nu(ay) sin(at) da
// has a piecewise Legendre closed form; the g-part of the solution is an
// absolutely convergent finite-band integral against p, and the f-part is the
// t-derivative of the analogous integral, realized by central differencing.

#include "liewave/funcspec.hpp"
#include "liewave/oracle.hpp"
#include "liewave/quadrature.hpp"

namespace liewave::solver_invsq {

struct InvsqProblem {
  double A = 0.0;  // >= 0
  FunctionSpec f, g;
  double nu() const;  // 0.5 sqrt(4A + 1), >= 1/2
};

// Piecewise evaluation (band boundaries t = |x-y|, t = x+y excluded):
//   0                                          t < |x - y|
//   P_{nu-1/2}(z) / (2 sqrt(xy))               |x - y| < t < x + y
//   cos(nu pi) Q_{nu-1/2}(-z) / (pi sqrt(xy))  t > x + y
// with z = (x^2 + y^2 - t^2) / (2xy).
double kernel_p(double nu, double x, double y, double t);

// Direct oscillatory quadrature of the defining integral; validation only.
double kernel_p_quadrature(double nu, double x, double y, double t,
                           const quadrature::QuadratureConfig& cfg = {});

// phi(lam) = Hankel_nu[f](lam), psi(lam) = Hankel_nu[g](lam) / lam.
std::pair<double, double> spectral_from_data(
    const InvsqProblem& prob, double lam,
    const quadrature::QuadratureConfig& cfg = {});

// Solution value at one point. h_t chooses the time-differencing step for the
// f-part; pass <= 0 to use the default 1e-3.
double solve_at(const InvsqProblem& prob, double x, double t, double h_t = 0.0,
                const quadrature::QuadratureConfig& cfg = {});

oracle::SolutionField solve_invsq(const InvsqProblem& prob,
                                  const oracle::Grid2D& grid,
                                  const quadrature::QuadratureConfig& cfg = {});

}  // namespace liewave::solver_invsq
