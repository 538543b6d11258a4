#pragma once

// Adaptive quadrature: finite intervals (Gauss-Kronrod 7-15 with a global
// worst-segment heap), semi-infinite integrals by envelope truncation,
// conditionally convergent oscillatory integrals by inter-zero panel sums
// with series acceleration, and order-preserving iterated integrals.

#include <functional>
#include <vector>

namespace liewave::quadrature {

struct QuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  int max_subdivisions = 100000;
  enum class Accel { none, euler, shanks };
  Accel oscillatory_accel = Accel::euler;
  double truncation_tail_tol = 1e-12;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

// Returns cfg with both tolerances scaled by `factor` (inner integrals of
// iterated quadrature use factor = 0.1, one decade tighter).
QuadratureConfig tighten(const QuadratureConfig& cfg, double factor);

IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadratureConfig& cfg = {});

// Decaying-integrand path over [start, inf). The truncation point is where
// `envelope` (default |f|) stays below cfg.truncation_tail_tol. Integrands
// flagged oscillatory are refused (std::invalid_argument): conditionally
// convergent tails must go through integrate_oscillatory.
IntegralResult integrate_semiinf(const Integrand& f,
                                 const QuadratureConfig& cfg = {},
                                 const Integrand& envelope = {},
                                 bool oscillatory_flagged = false,
                                 double start = 0.0);

// Integral over [0, inf) of an oscillatory integrand. `zero(k)`, k = 0,1,...,
// yields the ascending panel boundaries (sign-change abscissae of the kernel);
// panel integrals are summed with the configured acceleration.
IntegralResult integrate_oscillatory(const Integrand& f,
                                     const std::function<double(int)>& zero,
                                     const QuadratureConfig& cfg = {});
IntegralResult integrate_oscillatory(const Integrand& f,
                                     const std::vector<double>& zeros,
                                     const QuadratureConfig& cfg = {});

// Iterated integral with the loop order fixed by the caller: the outer
// variable sweeps [a, b] (or [0, inf)), and `inner(y, inner_cfg)` evaluates
// the inner integral at one decade tighter tolerance. Loops are never
// interchanged.
IntegralResult integrate_iterated(
    const std::function<double(double, const QuadratureConfig&)>& inner,
    double a, double b, const QuadratureConfig& cfg = {});
IntegralResult integrate_iterated_semiinf(
    const std::function<double(double, const QuadratureConfig&)>& inner,
    const QuadratureConfig& cfg = {}, const Integrand& envelope = {});

// McMahon approximation to the k-th positive zero of J_nu (k = 1, 2, ...);
// accurate enough to bracket sign changes for panel boundaries.
double mcmahon_zero(double nu, int k);

}  // namespace liewave::quadrature
