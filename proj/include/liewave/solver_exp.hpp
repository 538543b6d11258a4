#pragma once

// Cauchy solver for u_tt = y^2 u_yy + y u_y + y^2 u on y > 0, the form the
// e^{2x} potential takes under y = e^x. Solutions are assembled from spectral
// densities phi, psi against the translated Bessel kernel
// J0(sqrt(y^2 + 2 lam y e^{+-t})). Densities come from two routes: an
// explicit iterated-integral inversion of the data equations, and a
// power-series route through exact rational inverse Laplace transforms whose
// growing exponentials are integrated term by term as Bessel series.

#include <vector>

#include "liewave/funcspec.hpp"
#include "liewave/oracle.hpp"
#include "liewave/quadrature.hpp"
#include "liewave/transforms.hpp"

namespace liewave::solver_exp {

enum class Coordinate { y_direct, x_via_exp, x_via_negexp };
enum class Route { integral, series };

struct ExpProblem {
  FunctionSpec f, g;  // data in the grid coordinate
  Coordinate coordinate = Coordinate::y_direct;
};

// int_0^inf phi(lam) J0(sqrt(y^2 + 2 lam y)) dlam plus atom contributions
// (an atom at lam0 adds weight * J0(sqrt(y^2 + 2 lam0 y))). Growth-flagged
// densities are refused: their solution route is series_solution_at.
double forward_eqn3one(const transforms::SpectralDensity& phi, double y,
                       const quadrature::QuadratureConfig& cfg = {});

// -int_0^inf lam psi(lam) J1(sqrt(y^2+2 lam y))/sqrt(y^2+2 lam y) dlam,
// which equals g(y)/y for the velocity density. Atoms at lam = 0 contribute
// nothing (the lam factor vanishes).
double forward_inteqn2(const transforms::SpectralDensity& psi, double y,
                       const quadrature::QuadratureConfig& cfg = {});

// Explicit inversion of forward_eqn3one:
//   phi(lam) = int_0^{y_max} J0(2 sqrt(lam y)) h(y) dy,
//   h(y) = f(2y) + y int_0^{2y} I1(sqrt(u(2y-u)))/sqrt(u(2y-u)) f(u) du.
// The inner integral cancels against an e^y envelope, so h carries a
// roundoff floor ~e^y * eps sourced from the double-precision f samples;
// y_max caps the outer range near the point where that floor overtakes the
// decaying transform. Supply f as a smooth evaluator: interpolated samples
// break the cancellation catastrophically.
double phi_from_f_integral(const FunctionSpec& f, double lam,
                           const quadrature::QuadratureConfig& cfg = {},
                           double y_max = 34.0);

// psi(lam) = -(1/lam) int_0^lam q(v) dv with q = the inversion above applied
// to g. Below lam = 1e-3 the average is taken analytically to O(lam^2) by a
// midpoint evaluation.
double psi_from_g_integral(const FunctionSpec& g, double lam,
                           const quadrature::QuadratureConfig& cfg = {},
                           double y_max = 34.0);

// Series route: with derivs[n] = data^(n)(0),
//   phi = sum_n derivs[n] * InvLaplace[(xi^2+1)(2 xi)^n / (1-xi^2)^{n+1}],
//   psi = psi0 delta
//       + sum_{n>=1} derivs[n] * InvLaplace[(1/n)(2 xi)^n / (1-xi^2)^n],
// the psi symbols being the xi-antiderivatives forced by the identity tying
// the velocity kernel to the lambda derivative of the position kernel
// (velocity data must vanish at 0: its order-0 symbol is logarithmic).
// Terms keep their exact pole realizations so the solution can be assembled
// without quadrature against growing exponentials. The expansion is formal:
// for polynomial data the finite sum is exact, but for entire data the
// pointwise term sum diverges with the truncation order (it converges only
// in the transform domain at small xi), so infinite expansions must be
// truncated with the error controlled through the data remainder.
struct SeriesDensity {
  std::vector<transforms::RationalClosedForm> terms;  // weighted by derivs[n]
  double atom0 = 0.0;  // delta at lam = 0
  transforms::SpectralDensity to_density() const;
};

SeriesDensity phi_series_terms(const std::vector<double>& derivs);
SeriesDensity psi_series_terms(const std::vector<double>& derivs,
                               double psi0 = 0.0);
transforms::SpectralDensity phi_from_f_series(const std::vector<double>& derivs);
transforms::SpectralDensity psi_from_g_series(const std::vector<double>& derivs,
                                              double psi0 = 0.0);

// int_0^inf lam^j e^{-c lam} J0(sqrt(y^2 + 2 lam w)) dlam, evaluated as
//   sum_k (-1)^k ((k+j)!/k!) (w/(cy))^k J_k(y) / c^{j+1}.
// The sum converges for every c != 0 and is the analytic continuation in c
// when Re(c) <= 0 (where the integral itself diverges).
specfun::Complex bessel_profile_integral(int j, specfun::Complex c, double y,
                                         double w);

// u(y, t) from quadrature-viable densities:
//   1/2 [I(phi, ye^t) + I(phi, ye^{-t})] + 1/2 [I(psi, ye^t) - I(psi, ye^{-t})]
// with I(d, w) = int d(lam) J0(sqrt(y^2 + 2 lam w)) dlam.
double solve_exp_at(const transforms::SpectralDensity& phi,
                    const transforms::SpectralDensity& psi, double y, double t,
                    const quadrature::QuadratureConfig& cfg = {});

// Same assembly from series realizations, term-by-term Bessel series.
double series_solution_at(const SeriesDensity& phi, const SeriesDensity& psi,
                          double y, double t);

oracle::SolutionField solve_exp(const ExpProblem& prob,
                                const oracle::Grid2D& grid, Route route,
                                const quadrature::QuadratureConfig& cfg = {});

// Data f = 0, g = (1/4)y^2 1F2(1/2; 3/2, 2; -y^2/4) - y/2, density e^{-lam}:
// u = (1/2)[u1(y,t) - u1(y,-t)], u1 = sum_k (-1)^k e^{kt} J_k(y).
double example1_closed_form(double y, double t, int terms = 80);
// Same value through the two-variable Lommel function route.
double example1_lommel(double y, double t);
transforms::SpectralDensity example1_psi();

}  // namespace liewave::solver_exp
