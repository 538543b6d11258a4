#pragma once

// Integral transforms evaluated by direct quadrature with error control:
// Hankel, Laplace (forward, exact rational inverse, numeric inverse), Mellin
// on the critical line, Fourier cosine/sine, and the Kontorovich-Lebedev
// pair. Delta atoms ride along symbolically and never enter quadrature.

#include <complex>
#include <functional>
#include <utility>
#include <vector>

#include "liewave/funcspec.hpp"
#include "liewave/quadrature.hpp"
#include "liewave/specfun.hpp"

namespace liewave::transforms {

using specfun::Complex;

struct DeltaAtom {
  double location = 0.0;   // lambda_0 >= 0
  double weight = 0.0;
  int derivative_order = 0;  // 0 = delta, 1 = delta'
};

// Density on the positive half line: sampled nodes/values, an optional
// continuous evaluation rule (used when set), and delta atoms.
struct SpectralDensity {
  std::vector<double> nodes;   // strictly increasing, positive
  std::vector<double> values;
  std::vector<DeltaAtom> atoms;
  std::function<double(double)> density;  // optional closed-form rule
  bool growth_flagged = false;  // exponentially growing terms present

  double eval(double lam) const;  // density() if set, else linear interp
  void validate() const;
};

// Samples of h(1/2 + i tau) on the critical line.
struct MellinSample {
  std::vector<double> tau_nodes;  // ascending
  std::vector<Complex> values;
  enum class Symmetry { none, even_F, odd_rho } symmetry = Symmetry::none;
  // checks node ordering and the declared symmetry (to 1e-8); the line is
  // parameterized s = 1/2 + i tau, so s -> 1-s is tau -> -tau and the
  // symmetry is testable on conjugate pairs of stored nodes
  void validate() const;
};

// Inverse Laplace transform of a rational N/D in closed form:
//   polynomial_part[k] * delta^(k)(lambda)
// + sum over poles r of sum_j coeffs[j] lambda^j e^{r lambda} / j!.
struct PoleTerm {
  Complex root;
  int order = 1;
  std::vector<Complex> coeffs;  // coeffs[j] multiplies lambda^j e^{r lam}/j!
};

struct RationalClosedForm {
  std::vector<double> polynomial_part;  // delta atoms at lambda = 0
  std::vector<PoleTerm> pole_terms;

  bool has_growing() const;          // any Re(root) > 0
  double eval(double lam) const;     // smooth part only (atoms excluded)
  Complex laplace_at(Complex s) const;  // transform of the full realization
};

// --- operations ----------------------------------------------------------

// Hankel transform with kernel sqrt(lam y) J_nu(lam y).
double hankel(double nu, const FunctionSpec& f, double lam,
              const quadrature::QuadratureConfig& cfg = {});

double laplace(const FunctionSpec& f, double s,
               const quadrature::QuadratureConfig& cfg = {});

// Exact partial fractions. Coefficients ascending (c0 + c1 x + ...). The
// coefficient form locates denominator roots numerically (simple roots; near
// ties are clustered); the factored form takes (root, multiplicity) pairs
// and is exact for known root sets.
RationalClosedForm inv_laplace_rational(const std::vector<double>& num,
                                        const std::vector<double>& den);
RationalClosedForm inv_laplace_rational_factored(
    const std::vector<double>& num,
    const std::vector<std::pair<Complex, int>>& den_roots,
    double den_leading = 1.0);

// Fixed-Talbot deformed-Bromwich inversion; rel ~1e-8 on smooth originals.
double inv_laplace_numeric(const std::function<Complex(Complex)>& F, double lam,
                           const quadrature::QuadratureConfig& cfg = {});

// Mellin transform at s = 1/2 + i tau.
Complex mellin_line(const FunctionSpec& f, double tau,
                    const quadrature::QuadratureConfig& cfg = {});

// Inverse Mellin transform on the critical line; assumes the original is
// real (h(-tau) = conj h(tau)). The sampled overload trapezoids the stored
// nodes; the callable overload chooses the step from the x-oscillation
// (d tau <= pi / (4 |ln x|)) and extends until |h| stays below
// truncation_tail_tol for 20 consecutive nodes.
double inv_mellin_line(const MellinSample& h, double x);
double inv_mellin_line(const std::function<Complex(double)>& h, double x,
                       const quadrature::QuadratureConfig& cfg = {});

// Fourier cosine/sine transforms, normalization sqrt(2/pi).
double fourier_cos(const FunctionSpec& f, double x,
                   const quadrature::QuadratureConfig& cfg = {});
double fourier_sin(const FunctionSpec& f, double x,
                   const quadrature::QuadratureConfig& cfg = {});

// Kontorovich-Lebedev pair.
double kl_forward(const FunctionSpec& g, double tau,
                  const quadrature::QuadratureConfig& cfg = {});
double kl_inverse(const std::function<double(double)>& H, double x,
                  const quadrature::QuadratureConfig& cfg = {});

}  // namespace liewave::transforms
