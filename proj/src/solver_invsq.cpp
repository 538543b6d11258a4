#include "liewave/solver_invsq.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "liewave/specfun.hpp"
#include "liewave/transforms.hpp"

namespace liewave::solver_invsq {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double InvsqProblem::nu() const {
  if (A < 0.0) throw std::invalid_argument("InvsqProblem: A >= 0");
  return 0.5 * std::sqrt(4.0 * A + 1.0);
}

double kernel_p(double nu, double x, double y, double t) {
  if (!(x > 0.0) || !(y > 0.0) || !(t > 0.0))
    throw std::invalid_argument("kernel_p: x, y, t > 0");
  double a = std::min(x, y), b = std::max(x, y);
  double scale = b + t;
  if (std::fabs(t - (b - a)) < 1e-12 * scale ||
      std::fabs(t - (b + a)) < 1e-12 * scale)
    throw std::domain_error("kernel_p: band boundary");
  if (t < b - a) return 0.0;
  double z = (b * b + a * a - t * t) / (2.0 * a * b);
  if (t < b + a)
    return specfun::legendre(specfun::LegendreKind::P, nu - 0.5, z) /
           (2.0 * std::sqrt(a * b));
  double c = std::cos(nu * kPi);
  if (std::fabs(c) < 1e-15) return 0.0;  // half-integer order
  return c * specfun::legendre(specfun::LegendreKind::Q, nu - 0.5, -z) /
         (kPi * std::sqrt(a * b));
}

namespace {

// int_z^inf sin(u + phase)/u du via the Si/Ci asymptotic auxiliaries,
// accurate for z >~ 40
double tail_sin_over_u(double z, double phase) {
  double z2 = z * z;
  double fa = (1.0 - 2.0 / z2 + 24.0 / (z2 * z2) - 720.0 / (z2 * z2 * z2)) / z;
  double ga = (1.0 - 6.0 / z2 + 120.0 / (z2 * z2) - 5040.0 / (z2 * z2 * z2)) / z2;
  double half_pi_minus_si = fa * std::cos(z) + ga * std::sin(z);
  double ci = fa * std::sin(z) - ga * std::cos(z);
  return std::cos(phase) * half_pi_minus_si - std::sin(phase) * ci;
}

}  // namespace

double kernel_p_quadrature(double nu, double x, double y, double t,
                           const quadrature::QuadratureConfig& cfg) {
  // Finite part by direct adaptive quadrature; the O(1/lam) tail reduces via
  // the Bessel asymptotics to four modes sin(f_i lam + phi_i)/lam whose tail
  // integrals are Si/Ci closed forms. The O(1/lam^2) remainder is left to
  // oscillatory cancellation beyond Lam.
  double chi = nu * kPi / 2.0 + kPi / 4.0;
  struct Mode {
    double f, phase;
  };
  Mode modes[] = {{t + x - y, 0.0},
                  {t - x + y, 0.0},
                  {t + x + y, -2.0 * chi},
                  {t - x - y, 2.0 * chi}};
  double fmin = t + x + y;
  for (auto& m : modes) {
    double a = std::fabs(m.f);
    if (a > 1e-6) fmin = std::min(fmin, a);
  }
  double lam_max =
      std::max({50.0 / fmin, 40.0 / std::min(x, y), 40.0 / t, 200.0});
  auto res = quadrature::integrate_finite(
      [&](double lam) {
        if (lam <= 0.0) return 0.0;
        return specfun::bessel_j(nu, lam * x) * specfun::bessel_j(nu, lam * y) *
               std::sin(lam * t);
      },
      0.0, lam_max, cfg);
  double tail = 0.0;
  for (auto& m : modes) {
    if (std::fabs(m.f) < 1e-6) continue;  // band boundary excluded upstream
    double s = m.f > 0.0 ? 1.0 : -1.0;
    tail += s * tail_sin_over_u(std::fabs(m.f) * lam_max, s * m.phase);
  }
  tail /= 2.0 * kPi * std::sqrt(x * y);
  return res.value + tail;
}

std::pair<double, double> spectral_from_data(
    const InvsqProblem& prob, double lam,
    const quadrature::QuadratureConfig& cfg) {
  double nu = prob.nu();
  double phi = transforms::hankel(nu, prob.f, lam, cfg);
  double psi = transforms::hankel(nu, prob.g, lam, cfg) / lam;
  return {phi, psi};
}

namespace {

// int sqrt(xy) h(y) p(x, y, tau) dy for tau > 0; the kernel vanishes outside
// y in [|x - tau|, x + tau] and switches band at y = tau - x when tau > x
double band_integral(double nu, const FunctionSpec& h, double x, double tau,
                     const quadrature::QuadratureConfig& cfg) {
  if (tau <= 0.0) return 0.0;
  auto integrand = [&](double y) {
    if (y <= 0.0) return 0.0;
    return std::sqrt(x * y) * h(y) * kernel_p(nu, x, y, tau);
  };
  double hi = x + tau;
  double sum = 0.0;
  if (tau < x) {
    sum = quadrature::integrate_finite(integrand, x - tau, hi, cfg).value;
  } else {
    double split = tau - x;
    if (split > 0.0 && std::fabs(std::cos(nu * kPi)) > 1e-15)
      sum += quadrature::integrate_finite(integrand, 0.0, split, cfg).value;
    sum += quadrature::integrate_finite(integrand, split, hi, cfg).value;
  }
  return sum;
}

}  // namespace

double solve_at(const InvsqProblem& prob, double x, double t, double h_t,
                const quadrature::QuadratureConfig& cfg) {
  if (!(x > 0.0)) throw std::invalid_argument("solve_at: x > 0");
  if (t < 0.0) throw std::invalid_argument("solve_at: t >= 0");
  double nu = prob.nu();
  if (t == 0.0) return prob.f(x);
  double h = h_t > 0.0 ? h_t : 1e-3;
  // the p-integral is odd in tau, so the centered difference stays valid for
  // t < h via sign(tau)
  auto If = [&](double tau) {
    double s = tau < 0.0 ? -1.0 : 1.0;
    return s * band_integral(nu, prob.f, x, std::fabs(tau), cfg);
  };
  double u_f = (If(t + h) - If(t - h)) / (2.0 * h);
  double u_g = band_integral(nu, prob.g, x, t, cfg);
  return u_f + u_g;
}

oracle::SolutionField solve_invsq(const InvsqProblem& prob,
                                  const oracle::Grid2D& grid,
                                  const quadrature::QuadratureConfig& cfg) {
  oracle::SolutionField out;
  out.grid = grid;
  out.values.assign(std::size_t(grid.nx) * grid.nt, 0.0);
  out.method = "invsq_hankel";
  out.abs_tol = cfg.abs_tol;
  out.rel_tol = cfg.rel_tol;
  out.potential = symmetry::PotentialSpec::inverse_square(prob.A);
  out.has_potential = true;
  double h_t = std::min(grid.dt / 4.0, 1e-3);
  for (int j = 0; j < grid.nt; ++j)
    for (int i = 0; i < grid.nx; ++i)
      out.at(i, j) = solve_at(prob, grid.x(i), grid.t(j), h_t, cfg);
  return out;
}

}  // namespace liewave::solver_invsq
