#pragma once

// Potential families admitting nontrivial point symmetries of
// u_tt = u_xx + f(x)u, the exponentiated one-parameter maps, and the
// solution kernels they generate.

#include <utility>

#include "liewave/quadrature.hpp"

namespace liewave::symmetry {

struct PotentialSpec {
  enum class Family { InverseSquare, ExpFamily, TrigFamily };
  Family family = Family::InverseSquare;
  double A = 0.0, B = 0.0, omega = 1.0;

  static PotentialSpec inverse_square(double A);
  static PotentialSpec exp_family(double A, double B, double omega);
  static PotentialSpec trig_family(double A, double B, double omega);
};

// InverseSquare: f(x) = -A/x^2 on x > 0 (attractive sign convention used by
// the half-line solver). ExpFamily: 1/(A e^{wx} + B e^{-wx})^2.
// TrigFamily: 1/(A cos wx + B sin wx)^2. Throws on domain violations.
double potential_value(const PotentialSpec& spec, double x);

struct SymmetryParams {
  double A = 0.0, B = 0.0, omega = 1.0;
  double eps = 0.0;  // group parameter
};

// Flow of the first symmetry generator through (x, t) for time eps:
//   x~ = (1/2w) ln[(e^{2wx} + 2Bew e^{w(x+t)}) / (1 - 2Aew e^{w(x+t)})]
//   t~ = (1/w)  ln[e^{w(x+t)} / sqrt(num * den)]
// Throws when either radicand is non-positive.
std::pair<double, double> exp_symmetry_map(const SymmetryParams& p, double x,
                                           double t);

// Second generator: time-reversal conjugate of the first flow.
std::pair<double, double> exp_symmetry_map_v2(const SymmetryParams& p, double x,
                                              double t);

// Largest eps > 0 keeping both radicands of exp_symmetry_map positive at
// (x, t); +inf when unconstrained.
double symmetry_domain(const SymmetryParams& p, double x, double t);

// Time-independent solution for the exponential family with AB > 0:
//   base^beta 2F1(beta, beta; 1; 1 - base),  base = 1 + (A/B)e^{2wx},
// where beta = (1 - sqrt(1 + 1/(A B w^2)))/2 is the decaying root of the
// index equation; equals P_nu(-tanh(wx + ln(A/B)/2)) with nu = -beta.
double stationary_solution_exp(double A, double B, double omega, double x);

// The stationary solution pushed along the symmetry flow: both the
// hypergeometric argument and the prefactor base are divided by
// 1 + 2 A eps w e^{w(x+t)}. eps = 0 recovers stationary_solution_exp.
double kernel_K_general(double A, double B, double omega, double eps, double x,
                        double t);

// sech^2 specialization (A = B = 1/2, w = 1):
//   Q_nu((2 eps e^{t+x} + e^{2x} - 1)/(e^{2x} + 1)), nu = (sqrt 5 - 1)/2,
// Ferrers branch for argument < 1. Throws when the argument hits 1.
double kernel_Q_sech(double x, double t, double eps);

// Same kernel through its Laplace-type integral representation
//   int_0^inf sqrt(pi/2) e^{-e^{-t} xi sinh x - t/2}
//             I_{nu+1/2}(e^{-t} xi cosh x) e^{-eps xi} / sqrt(xi sech x) dxi,
// convergent for eps > e^{-(t+x)}; below that threshold the contour is
// rotated to a conditionally convergent Bessel-J form whose real part
// continues the kernel onto the Ferrers branch.
double kernel_Q_sech_laplace(double x, double t, double eps,
                             const quadrature::QuadratureConfig& cfg = {});

// Oscillatory solution pair obtained from the representation above by
// xi -> i xi:
//   w1 = cos(e^{-t} xi sinh x) e^{-t/2} J_{nu+1/2}(e^{-t} xi cosh x)
//        / sqrt(xi sech x),
//   w2 = the sine companion.
std::pair<double, double> wave_kernels_w(double x, double t, double xi);

inline constexpr double kNuSech = 0.61803398874989484820;  // (sqrt 5 - 1)/2

}  // namespace liewave::symmetry
