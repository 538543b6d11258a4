#include "liewave/symmetry.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "liewave/specfun.hpp"

namespace liewave::symmetry {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PotentialSpec PotentialSpec::inverse_square(double A) {
  PotentialSpec s;
  s.family = Family::InverseSquare;
  s.A = A;
  return s;
}

PotentialSpec PotentialSpec::exp_family(double A, double B, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("exp_family: omega > 0");
  PotentialSpec s;
  s.family = Family::ExpFamily;
  s.A = A;
  s.B = B;
  s.omega = omega;
  return s;
}

PotentialSpec PotentialSpec::trig_family(double A, double B, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("trig_family: omega > 0");
  PotentialSpec s;
  s.family = Family::TrigFamily;
  s.A = A;
  s.B = B;
  s.omega = omega;
  return s;
}

double potential_value(const PotentialSpec& spec, double x) {
  switch (spec.family) {
    case PotentialSpec::Family::InverseSquare:
      if (!(x > 0.0))
        throw std::domain_error("potential_value: inverse-square needs x > 0");
      return -spec.A / (x * x);
    case PotentialSpec::Family::ExpFamily: {
      double d = spec.A * std::exp(spec.omega * x) +
                 spec.B * std::exp(-spec.omega * x);
      if (d == 0.0)
        throw std::domain_error("potential_value: zero denominator");
      return 1.0 / (d * d);
    }
    case PotentialSpec::Family::TrigFamily: {
      double d = spec.A * std::cos(spec.omega * x) +
                 spec.B * std::sin(spec.omega * x);
      if (d == 0.0)
        throw std::domain_error("potential_value: zero denominator");
      return 1.0 / (d * d);
    }
  }
  throw std::logic_error("potential_value: unreachable");
}

std::pair<double, double> exp_symmetry_map(const SymmetryParams& p, double x,
                                           double t) {
  double w = p.omega;
  double e_xpt = std::exp(w * (x + t));
  double num = std::exp(2.0 * w * x) + 2.0 * p.B * p.eps * w * e_xpt;
  double den = 1.0 - 2.0 * p.A * p.eps * w * e_xpt;
  if (!(num > 0.0) || !(den > 0.0))
    throw std::domain_error("exp_symmetry_map: outside validity domain");
  double xt = std::log(num / den) / (2.0 * w);
  double tt = std::log(e_xpt / std::sqrt(num * den)) / w;
  return {xt, tt};
}

std::pair<double, double> exp_symmetry_map_v2(const SymmetryParams& p, double x,
                                              double t) {
  auto [xr, tr] = exp_symmetry_map(p, x, -t);
  return {xr, -tr};
}

double symmetry_domain(const SymmetryParams& p, double x, double t) {
  double w = p.omega;
  double e_xpt = std::exp(w * (x + t));
  double lim = std::numeric_limits<double>::infinity();
  if (p.A > 0.0) lim = std::min(lim, 1.0 / (2.0 * p.A * w * e_xpt));
  if (p.B < 0.0)
    lim = std::min(lim, std::exp(2.0 * w * x) / (-2.0 * p.B * w * e_xpt));
  return lim;
}

namespace {

// base^beta 2F1(beta, beta; 1; 1 - base), shared by the stationary solution
// and its flowed kernel; substituting s = 1 - base into the ODE and peeling
// off (1-s)^beta leaves the hypergeometric equation with a = b = beta, c = 1
double hyp_kernel_value(double beta, double base) {
  using specfun::Complex;
  Complex h = specfun::gauss_2f1(Complex(beta), Complex(beta), Complex(1.0),
                                 1.0 - base);
  return std::pow(base, beta) * h.real();
}

double beta_from(double A, double B, double omega) {
  double ab = A * B;
  if (!(ab > 0.0))
    throw std::domain_error("stationary solution requires AB > 0");
  // index equation theta^2 - theta - 1/(4 A B w^2) = 0, decaying branch
  double disc = std::sqrt(1.0 + 1.0 / (ab * omega * omega));
  double beta = (1.0 - disc) / 2.0;
  if (!std::isfinite(beta))
    throw std::domain_error("degenerate hypergeometric index");
  return beta;
}

}  // namespace

double stationary_solution_exp(double A, double B, double omega, double x) {
  double beta = beta_from(A, B, omega);
  double base = 1.0 + (A / B) * std::exp(2.0 * omega * x);
  if (!(base > 0.0))
    throw std::domain_error("stationary_solution_exp: nonpositive base");
  return hyp_kernel_value(beta, base);
}

double kernel_K_general(double A, double B, double omega, double eps, double x,
                        double t) {
  double beta = beta_from(A, B, omega);
  double scale = 1.0 + 2.0 * A * eps * omega * std::exp(omega * (x + t));
  if (!(scale > 0.0))
    throw std::domain_error("kernel_K_general: outside validity domain");
  double base = (1.0 + (A / B) * std::exp(2.0 * omega * x)) / scale;
  if (!(base > 0.0))
    throw std::domain_error("kernel_K_general: nonpositive base");
  return hyp_kernel_value(beta, base);
}

double kernel_Q_sech(double x, double t, double eps) {
  double e2x = std::exp(2.0 * x);
  double z = (2.0 * eps * std::exp(t + x) + e2x - 1.0) / (e2x + 1.0);
  if (std::fabs(z - 1.0) < 1e-12)
    throw std::domain_error("kernel_Q_sech: singular argument");
  return specfun::legendre(specfun::LegendreKind::Q, kNuSech, z);
}

double kernel_Q_sech_laplace(double x, double t, double eps,
                             const quadrature::QuadratureConfig& cfg) {
  double mu = kNuSech + 0.5;
  double a = std::exp(-t) * std::sinh(x);
  double b = std::exp(-t) * std::cosh(x);
  double pre = std::sqrt(kPi / 2.0) * std::exp(-t / 2.0) * std::sqrt(std::cosh(x));
  double threshold = std::exp(-(t + x));  // argument = 1 crossing
  if (eps > threshold * (1.0 + 1e-8)) {
    // absolutely convergent: integrand decays like e^{(b-a-eps) xi}
    double rate = eps + a - b;  // > 0 here
    auto res = quadrature::integrate_semiinf(
        [&](double xi) {
          if (xi <= 0.0) return 0.0;
          return pre * std::exp(-a * xi) * specfun::bessel_i(mu, b * xi) *
                 std::exp(-eps * xi) / std::sqrt(xi);
        },
        cfg,
        [&](double xi) {
          return pre * std::exp(-rate * xi) / std::sqrt(std::max(xi, 1e-8));
        });
    return res.value;
  }
  if (eps > threshold * (1.0 - 1e-8))
    throw std::domain_error("kernel_Q_sech_laplace: singular argument");
  // divergent regime: rotate xi -> -i s; I_mu(-ibs) = e^{-i mu pi/2} J_mu(bs)
  // and the real part of the rotated integral continues the kernel onto the
  // Ferrers branch
  // phase collects -i (from d xi), e^{-i mu pi/2} (from I -> J), and
  // e^{+i pi/4} (from 1/sqrt(-i s))
  double phase0 = -(mu / 2.0 + 0.25) * kPi;
  // the product J_mu(bs) cos((a+eps)s + phase) beats at b -+ (a+eps); panels
  // must follow the slow beat or the partial sums never alternate
  double beat = std::fabs(b - (a + eps));
  double panel = kPi / std::max(beat, 1e-3 * (b + a + eps));
  auto osc_cfg = cfg;
  // the beat partial sums carry two oscillatory modes; epsilon extrapolation
  // handles that, plain averaging does not
  osc_cfg.oscillatory_accel = quadrature::QuadratureConfig::Accel::shanks;
  auto res = quadrature::integrate_oscillatory(
      [&](double s) {
        if (s <= 0.0) return 0.0;
        return pre * specfun::bessel_j(mu, b * s) *
               std::cos((a + eps) * s + phase0) / std::sqrt(s);
      },
      [=](int k) { return (k + 1) * panel; }, osc_cfg);
  if (!res.converged)
    throw specfun::AccuracyError("kernel_Q_sech_laplace: quadrature stalled",
                                 res.error_estimate);
  return res.value;
}

std::pair<double, double> wave_kernels_w(double x, double t, double xi) {
  if (!(xi > 0.0)) throw std::invalid_argument("wave_kernels_w: xi > 0");
  double mu = kNuSech + 0.5;
  double arg = std::exp(-t) * xi;
  double common = std::exp(-t / 2.0) * specfun::bessel_j(mu, arg * std::cosh(x)) /
                  std::sqrt(xi / std::cosh(x));
  return {std::cos(arg * std::sinh(x)) * common,
          std::sin(arg * std::sinh(x)) * common};
}

}  // namespace liewave::symmetry
