#pragma once

// Non-convolution integral equations of the first kind tied to the sech^2
// potential family:
//   f(x) = sqrt(pi/2) int_0^inf phi(xi) cos(xi sinh x) J_nu(xi cosh x) dxi
// and its sine companion. On the critical line s = 1/2 + i tau the equations
// diagonalize: a compatibility functional h built from a Kontorovich-Lebedev
// style transform of the data determines the Mellin transform of the solution
// up to an odd free function rho, and the unique member is picked out by an
// evenness normalization. The module evaluates the forward operators, the
// data symbols F and G on the line, the h functionals, the unique and
// rho-indexed solution families (by both a Mellin-line route and an x-space
// oscillatory route), and assembles the Cauchy solver for
// u_tt = u_xx + u/cosh^2 x from the cosine-family inversion at shifted order.

#include <functional>
#include <vector>

#include "liewave/funcspec.hpp"
#include "liewave/oracle.hpp"
#include "liewave/quadrature.hpp"
#include "liewave/specfun.hpp"
#include "liewave/transforms.hpp"

namespace liewave::solver_sech {

// Order parameter of the Bessel kernel. Everything below needs nu > -1/2;
// the x-space solution routes additionally exclude the half-odd lattice
// nu = 1/2, 3/2, ... where their gamma prefactors degenerate.
struct SechOrder {
  double nu = 0.61803398874989484820;  // (sqrt 5 - 1)/2, the Cauchy order
  void validate() const;               // throws std::domain_error
};

// Free odd function on the critical line indexing the homogeneous solutions:
// rho(1/2 + i tau) with rho(s) = -rho(1-s), i.e. odd in tau. Real-valued
// solutions force rho purely imaginary. An empty fn means rho = 0.
struct OddSigmaFunction {
  std::function<specfun::Complex(double)> fn;
  specfun::Complex operator()(double tau) const {
    return fn ? fn(tau) : specfun::Complex(0.0, 0.0);
  }
  explicit operator bool() const { return static_cast<bool>(fn); }
  // Checks rho(-tau) = -rho(tau) and Re rho = 0 at the given nodes to 1e-10
  // relative; throws std::invalid_argument on violation.
  void validate(const std::vector<double>& tau_nodes) const;
};

// Forward operators. Atoms of derivative_order 0 add
// weight * kernel(location); higher orders throw. Growth-flagged densities
// are refused. Densities with only nodes integrate over the node range;
// callable densities integrate with oscillation-aware panels.
double forward_eqn1(const transforms::SpectralDensity& phi, double nu, double x,
                    const quadrature::QuadratureConfig& cfg = {});
double forward_eqn2(const transforms::SpectralDensity& psi, double nu, double x,
                    const quadrature::QuadratureConfig& cfg = {});

// Shared tabulation attached to one data function: the weighted transform
//   C(y) = int_0^inf cos(y sinh x) (cosh x)^{1-nu} f(x) dx   (cosine kind)
//   D(y) = same with sin                                      (sine kind)
// is sampled on a fixed Gauss-Legendre grid, smoothed against the Laplace
// kernel e^{-y cosh u} into a table W(u), and cosine-transformed. Building a
// profile costs seconds; h, symbol, line_density and unique_solution reuse
// the tables and are cheap. The small-y divergence of the cosine kind for
// nu > 1/2 is removed by subtracting C(0) e^{-y}, whose contribution is
// restored in closed form.
class DataProfile {
 public:
  enum class Kind { cosine, sine };

  DataProfile(const FunctionSpec& f, double nu, Kind kind,
              const quadrature::QuadratureConfig& cfg = {});

  // Compatibility functional on the critical line (even, O(tau^2) at 0 for
  // data in the range of the forward operator):
  //   cosine: h_c = (8/pi^2) tau sinh(pi tau) |Gamma(1/2+nu+i tau)|^2 I(tau)
  //   sine:   h_s = (16/(pi^2 (2nu+1))) tau sinh(pi tau)
  //               * |Gamma(3/2+nu+i tau)|^2 I2(tau)
  double h(double tau) const;

  // Data symbol, real and even: F = (32/pi) cosh(pi tau/2) I(tau) for the
  // cosine kind, G = (32/(pi (2nu+1))) tau sinh(pi tau/2) I2(tau) for the
  // sine kind.
  double symbol(double tau) const;

  // Mellin transform of the unique solution at s = 1/2 + i tau:
  //   h(tau) / (2 Gamma(1/2+nu-i tau))   resp.   / (2 Gamma(3/2+nu-i tau)).
  specfun::Complex line_density(double tau) const;

  // Inverse Mellin of line_density. Throws AccuracyError when the line
  // density fails to decay (data outside the operator range).
  double unique_solution(double xi) const;

  double c0() const { return c0_; }
  double nu() const { return nu_; }
  Kind kind() const { return kind_; }

 private:
  double fourier_table(double tau) const;

  double nu_, mu_;
  Kind kind_;
  double c0_ = 0.0;
  double closed_coeff_ = 0.0;   // C(0) Gamma(mu) 2^{mu-1} / Gamma(2 mu)
  std::vector<double> table_;   // W(u) on a uniform u grid
  double du_ = 0.0;
  quadrature::QuadratureConfig cfg_;
  // noise-floor bookkeeping for the critical-line scan: running peaks of |h|
  // and of the line density, and the tau beyond which h sits in quadrature
  // noise and the density is treated as zero
  mutable double hpeak_ = 0.0;
  mutable double vpeak_ = 0.0;
  mutable double cut_tau_ = 1e308;
};

// Data symbols at s on the critical line (|Re s - 1/2| <= 1e-9, else
// std::invalid_argument). Real-valued; F(s) = F(1-s), G(s) = G(1-s).
specfun::Complex F_of_s(const FunctionSpec& f, double nu, specfun::Complex s,
                        const quadrature::QuadratureConfig& cfg = {});
specfun::Complex G_of_s(const FunctionSpec& f, double nu, specfun::Complex s,
                        const quadrature::QuadratureConfig& cfg = {});

// Compatibility functionals; each call builds a DataProfile, so batch
// evaluations should construct the profile directly.
double compute_h_c(const FunctionSpec& f, double nu, double tau,
                   const quadrature::QuadratureConfig& cfg = {});
double compute_h_s(const FunctionSpec& f, double nu, double tau,
                   const quadrature::QuadratureConfig& cfg = {});

// Unique solutions under the evenness normalization
// phi*(s) Gamma(1-s+nu) = phi*(1-s) Gamma(s+nu) (shifted by one for the sine
// family), evaluated by inverse Mellin of the line density.
double unique_phi_eqn1(const FunctionSpec& f, double nu, double xi,
                       const quadrature::QuadratureConfig& cfg = {});
double unique_psi_eqn2(const FunctionSpec& f, double nu, double xi,
                       const quadrature::QuadratureConfig& cfg = {});

// rho-indexed families: homogeneous term
//   -(1/2) InvMellin[ rho(tau) / Gamma(1/2+nu-i tau) ]  (cosine; 3/2 for sine)
// plus a particular solution. The particular term of general_* is the
// Mellin-line route (it already satisfies the evenness normalization);
// simplified_* evaluates it by the x-space oscillatory route
//   -(2/pi^2) Gamma(1/2-nu) sin(pi(nu+1/2)/2) xi^nu
//     int_R e^{(nu+1/2)u} Bc(xi e^u) X(u) du
// with Bc(r) = (nu+1/2) cos(r-beta) - r sin(r-beta), beta = pi(2nu-1)/4, and
// X(u) the |sinh u +- sinh x|^{nu-1/2} moment of the weighted data. The sine
// family mirrors this one order up:
//   -(4/(pi^2 (2nu+1))) Gamma(1/2-nu) cos(pi(2nu+1)/4) xi^{1+nu}
//     int_R e^{(nu+3/2)u} Bs(xi e^u) X2(u) du
// with Bs(r) = (nu+3/2) cos(r-gam) - r sin(r-gam), gam = pi(2nu+1)/4, and
// X2(u) the sign-weighted sgn(sinh x +- sinh u)|sinh x +- sinh u|^{nu-1/2}
// moment.
double general_phi_eqn1(const FunctionSpec& f, double nu,
                        const OddSigmaFunction& rho, double xi,
                        const quadrature::QuadratureConfig& cfg = {});
double simplified_phi_eqn1(const FunctionSpec& f, double nu,
                           const OddSigmaFunction& rho, double xi,
                           const quadrature::QuadratureConfig& cfg = {});
double general_psi_eqn2(const FunctionSpec& f, double nu,
                        const OddSigmaFunction& rho, double xi,
                        const quadrature::QuadratureConfig& cfg = {});
double simplified_psi_eqn2(const FunctionSpec& f, double nu,
                           const OddSigmaFunction& rho, double xi,
                           const quadrature::QuadratureConfig& cfg = {});

// Cauchy problem u_tt = u_xx + u / cosh^2 x, u(x,0) = f, u_t(x,0) = 0, on
// x >= 0 (even extension implied; grid.x0 must be >= 0). The coefficient is
// nu(nu+1) = 1 at the golden-ratio order. Solved by inverting the cosine
// equation at shifted order nu + 1/2 for the weighted data f(x)/sqrt(cosh x)
// and propagating with the symmetrized boost-translated kernels
// (1/2) sqrt(pi cosh x / 2) [e^{t/2} cos(e^t xi sinh x)
// J_{nu+1/2}(e^t xi cosh x) + (t -> -t)].
oracle::SolutionField solve_cauchy_sech(const FunctionSpec& f,
                                        const oracle::Grid2D& grid,
                                        const quadrature::QuadratureConfig& cfg = {});

// int_0^inf phi(eps) K(x, 0, eps) deps against the general two-parameter
// kernel. For A > 0 the kernel argument crosses its logarithmic singularity
// at eps* = e^{-omega x}/(2 A omega); the integral is split there with
// one-sided panels.
double forward_general_AB(const transforms::SpectralDensity& phi, double A,
                          double B, double omega, double x,
                          const quadrature::QuadratureConfig& cfg = {});

// True when the sampled Mellin data satisfies the evenness normalization:
// values real (when only tau >= 0 is stored) or conjugate-even across
// paired +-tau nodes, to rel_tol against the largest sample.
bool check_even_condition(const transforms::MellinSample& sample,
                          double rel_tol = 1e-8);

// The contour kernel behind the x-space route, as two closed forms that must
// agree: the compact trig form
//   -z^{-(1+nu)/2}/(2 sqrt pi) [(nu+1/2) cos(r-beta) - r sin(r-beta)],
// r = 2/sqrt z, beta = pi(2nu-1)/4, and its hypergeometric expansion
//   cos(pi(2nu+1)/4)(3/2+nu) 1F2(7/4+nu/2; 3/4+nu/2, 3/2; -1/z) / (sqrt pi z^{1+nu/2})
// - sin(pi(2nu+1)/4)(1/2+nu) 1F2(5/4+nu/2; 1/4+nu/2, 1/2; -1/z) / (2 sqrt pi z^{(1+nu)/2}).
double contour_bracket_trig(double nu, double z);
double contour_bracket_hyp(double nu, double z);

// Mellin transforms of the kernels, closed form:
//   int_0^inf x^{s-1} cos(bx) J_nu(cx) dx
//     = 2^{s-1} Gamma((s+nu)/2) / (c^s Gamma(1+(nu-s)/2))
//       * 2F1((s+nu)/2, (s-nu)/2; 1/2; b^2/c^2),
// and the sine version
//     = 2^s b Gamma((s+nu+1)/2) / (c^{s+1} Gamma((nu-s+1)/2))
//       * 2F1((s+nu+1)/2, (s-nu+1)/2; 3/2; b^2/c^2),
// both for 0 < b < c. The _quad versions evaluate the defining integrals by
// oscillatory quadrature for cross-checking.
specfun::Complex cos_kernel_mellin(double nu, double b, double c,
                                   specfun::Complex s);
specfun::Complex sin_kernel_mellin(double nu, double b, double c,
                                   specfun::Complex s);
specfun::Complex cos_kernel_mellin_quad(double nu, double b, double c,
                                        specfun::Complex s,
                                        const quadrature::QuadratureConfig& cfg = {});
specfun::Complex sin_kernel_mellin_quad(double nu, double b, double c,
                                        specfun::Complex s,
                                        const quadrature::QuadratureConfig& cfg = {});

}  // namespace liewave::solver_sech
