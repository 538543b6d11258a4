#pragma once

// Special-function kernel evaluations: complex gamma, Bessel J/I, the
// Macdonald function of imaginary order, Legendre P/Q of real degree,
// Gauss 2F1, 1F2, and the two-variable Lommel function.
//
// Everything here is pure and re-entrant; accuracy targets are noted per
// function and enforced by the test suite.

#include <complex>
#include <stdexcept>

namespace liewave::specfun {

using Complex = std::complex<double>;

struct AccuracySpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_terms = 500;
};

// Thrown when a truncated series cannot meet the requested tolerance; carries
// the tail estimate in what().
struct AccuracyError : std::runtime_error {
  double tail_estimate;
  AccuracyError(const std::string& msg, double tail)
      : std::runtime_error(msg), tail_estimate(tail) {}
};

// Euler gamma on the complex plane. Relative error <= 1e-12 for |Im s| <= 50.
// Poles (non-positive real integers) throw std::domain_error.
Complex gamma_cx(Complex s);

// log gamma for Re s > 0 (principal branch), used where Gamma itself would
// overflow.
Complex log_gamma_cx(Complex s);

// J_nu(x), nu >= -1/2, x >= 0. Abs error <= 1e-11 for x <= 50.
double bessel_j(double nu, double x);

// I_nu(x), nu >= -1, x >= 0. Abs error <= 1e-11 for x <= 30; overflow for
// large argument is reported via std::overflow_error.
double bessel_i(double nu, double x);

// K_{i tau}(y): Macdonald function of purely imaginary order, real and even
// in tau. Computed by adaptive quadrature of
//   integral_0^inf e^{-y cosh u} cos(tau u) du,
// truncated where the envelope drops below 1e-20 relative. Abs error <= 1e-9
// for y in [1e-3, 30], tau <= 20.
double macdonald_k_it(double tau, double y);

enum class LegendreKind { P, Q };

// Legendre functions of real degree nu. Ferrers (on-cut) convention on
// (-1, 1), standard convention on (1, inf). Q has a logarithmic singularity
// at z = 1 (throws). Abs error <= 1e-9 for z at least 1e-4 away from 1.
double legendre(LegendreKind kind, double nu, double z);

// Gauss hypergeometric 2F1(a, b; c; z), real z < 1 (target domain
// [-100, 0.9], rel error <= 1e-9). Series for z >= 0, Pfaff-transformed
// series for z < 0; internal term budget exceeds AccuracySpec defaults since
// the transformed argument can approach 1.
Complex gauss_2f1(Complex a, Complex b, Complex c, double z);

// 1F2(a; b1, b2; z), entire in z; rel error <= 1e-9 for |z| <= 100.
double hyp_1f2(double a, double b1, double b2, double z);

// Lommel function of two variables:
//   U_nu(w, z) = sum_k (-1)^k (w/z)^{nu+2k} J_{nu+2k}(z),
// integer nu >= 0, complex w, z > 0. Abs error <= 1e-10 for |w| <= 10 z;
// non-convergent truncation throws AccuracyError with the tail estimate.
Complex lommel_u(int nu, Complex w, double z, const AccuracySpec& acc = {});

}  // namespace liewave::specfun
