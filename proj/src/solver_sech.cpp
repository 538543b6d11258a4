#include "liewave/solver_sech.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "liewave/symmetry.hpp"

namespace liewave::solver_sech {

using quadrature::QuadratureConfig;
using specfun::AccuracyError;
using specfun::Complex;

namespace {

constexpr double kPi = 3.14159265358979323846;

// ln |Gamma(a + i t)|^2, stable for any real a (poles excluded) and large t.
double log_norm_gamma(double a, double t) {
  double corr = 0.0;
  while (a < 1.0) {
    double m = a * a + t * t;
    if (m == 0.0) throw std::domain_error("log_norm_gamma: pole");
    corr -= std::log(m);
    a += 1.0;
  }
  return 2.0 * specfun::log_gamma_cx(Complex(a, t)).real() + corr;
}

double ln_sinh(double z) {  // z > 0
  return z - std::log(2.0) + std::log1p(-std::exp(-2.0 * z));
}

double ln_cosh(double z) {  // z >= 0
  return z - std::log(2.0) + std::log1p(std::exp(-2.0 * z));
}

// 1/Gamma(x) on the real axis; zero at the poles x = 0, -1, -2, ...
double rgamma_real(double x) {
  if (x <= 0.5 && std::fabs(x - std::round(x)) < 1e-12) return 0.0;
  return 1.0 / specfun::gamma_cx(Complex(x, 0.0)).real();
}

// Support bound for the weighted datum (cosh x)^{1-nu} f(x): the last point
// of a coarse scan where the envelope exceeds 1e-13 of its peak.
struct SupportScan {
  double xmax = 0.0;
  double peak = 0.0;
};

SupportScan scan_support(const FunctionSpec& f, double nu) {
  SupportScan s;
  const double step = 0.05, lim = 40.0;
  double last = 0.0;
  std::vector<double> vals;
  vals.reserve(static_cast<size_t>(lim / step) + 2);
  for (double x = 0.0; x <= lim + 1e-9; x += step) {
    double v = std::pow(std::cosh(x), 1.0 - nu) * std::fabs(f(x));
    vals.push_back(v);
    s.peak = std::max(s.peak, v);
  }
  if (s.peak == 0.0) return s;
  if (vals.back() > 1e-10 * s.peak)
    throw AccuracyError(
        "datum weighted by cosh^{1-nu} has not decayed by x = 40; the "
        "transform pipeline needs effectively compact support",
        vals.back() / s.peak);
  for (size_t i = 0; i < vals.size(); ++i)
    if (vals[i] > 1e-13 * s.peak) last = i * step;
  s.xmax = std::min(last + 0.5, lim);
  return s;
}

// Gauss-Legendre 16, half nodes/weights.
constexpr double kGlx[8] = {0.0950125098376374, 0.2816035507792589,
                            0.4580167776572274, 0.6178762444026438,
                            0.7554044083550030, 0.8656312023878318,
                            0.9445750230732326, 0.9894009349916499};
constexpr double kGlw[8] = {0.1894506104550685, 0.1826034150449236,
                            0.1691565193950025, 0.1495959888165767,
                            0.1246289712555339, 0.0951585116824928,
                            0.0622535239386479, 0.0271524594117541};

double require_converged(const quadrature::IntegralResult& r,
                         const char* stage) {
  if (!r.converged)
    throw AccuracyError(std::string(stage) + ": quadrature did not converge",
                        r.error_estimate);
  return r.value;
}

// Oscillation-aware integral of density * kernel over [0, inf) for the
// forward operators; panel spacing follows the fast mode e^x.
double forward_kernel_integral(const transforms::SpectralDensity& phi,
                               double nu, double x, bool sine,
                               const QuadratureConfig& cfg) {
  phi.validate();
  if (phi.growth_flagged)
    throw std::invalid_argument("forward operator: growth-flagged density");
  double sh = std::sinh(x), ch = std::cosh(x);
  double total = 0.0;
  for (const auto& a : phi.atoms) {
    if (a.derivative_order != 0)
      throw std::invalid_argument("forward operator: derivative atoms");
    double osc = sine ? std::sin(a.location * sh) : std::cos(a.location * sh);
    total += a.weight * osc * specfun::bessel_j(nu, a.location * ch);
  }
  auto integrand = [&](double xi) {
    double osc = sine ? std::sin(xi * sh) : std::cos(xi * sh);
    return phi.eval(xi) * osc * specfun::bessel_j(nu, xi * ch);
  };
  if (phi.density) {
    double spacing = kPi * std::exp(-std::fabs(x));
    // support bound of the density, for the panel budget decision
    std::vector<double> scan;
    double peak = 0.0;
    for (double xi = 0.0; xi <= 200.0 + 1e-9; xi += 0.25) {
      scan.push_back(std::fabs(phi.eval(xi)));
      peak = std::max(peak, scan.back());
    }
    double support = 0.0;
    for (size_t i = 0; i < scan.size(); ++i)
      if (scan[i] > 1e-14 * peak) support = i * 0.25;
    support += 0.5;
    if (peak == 0.0) {
      // nothing on the scan range
    } else if (support / spacing > 350.0) {
      // the zero-spaced panel budget cannot reach the support end; the
      // integrand is absolutely convergent there, so subdivide directly
      auto r = quadrature::integrate_finite(integrand, 0.0, support, cfg);
      total += require_converged(r, "forward operator");
    } else {
      QuadratureConfig ocfg = cfg;
      ocfg.oscillatory_accel = QuadratureConfig::Accel::shanks;
      auto r = quadrature::integrate_oscillatory(
          integrand, [spacing](int k) { return (k + 1) * spacing; }, ocfg);
      total += require_converged(r, "forward operator");
    }
  } else if (phi.nodes.size() >= 2) {
    auto r = quadrature::integrate_finite(integrand, phi.nodes.front(),
                                          phi.nodes.back(), cfg);
    total += require_converged(r, "forward operator");
  }
  return std::sqrt(kPi / 2.0) * total;
}

// Homogeneous family member: -(1/2) InvMellin[rho(tau)/Gamma(a - i tau)].
double homogeneous_term(const OddSigmaFunction& rho, double a, double xi,
                        const QuadratureConfig& cfg) {
  if (!rho) return 0.0;
  rho.validate({0.25, 0.75, 1.5, 3.0});
  auto line = [&](double tau) -> Complex {
    return rho(tau) / specfun::gamma_cx(Complex(a, -tau));
  };
  return -0.5 * transforms::inv_mellin_line(line, xi, cfg);
}

// x-space particular solution shared by the two simplified routes.
double xspace_particular(const FunctionSpec& f, double nu, bool sine,
                         double xi, const QuadratureConfig& cfg) {
  SechOrder{nu}.validate();
  double half_odd = std::fabs(nu - 0.5 - std::round(nu - 0.5));
  if (nu >= 0.4 && half_odd < 1e-6)
    throw std::domain_error(
        "x-space route: gamma prefactor degenerates at half-odd order");
  SupportScan sup = scan_support(f, nu);
  if (sup.peak == 0.0) return 0.0;
  const double xmax = sup.xmax;
  const double kap = nu - 0.5;

  auto moment = [&](double u) {
    double su = std::sinh(u);
    auto ig = [&](double x) {
      double sx = std::sinh(x), t;
      if (!sine) {
        t = std::pow(std::fabs(su + sx), kap) +
            std::pow(std::fabs(su - sx), kap);
      } else {
        auto sg = [](double v) { return v >= 0.0 ? 1.0 : -1.0; };
        t = sg(sx + su) * std::pow(std::fabs(sx + su), kap) +
            sg(sx - su) * std::pow(std::fabs(sx - su), kap);
      }
      return t * std::pow(std::cosh(x), 1.0 - nu) * f(x);
    };
    double total = 0.0;
    if (u > 1e-12 && u < xmax) {
      total += quadrature::integrate_finite(ig, 0.0, u, cfg).value;
      total += quadrature::integrate_finite(ig, u, xmax, cfg).value;
    } else {
      total += quadrature::integrate_finite(ig, 0.0, xmax, cfg).value;
    }
    return total;
  };

  const double du = 0.02, utab = 8.6;
  std::vector<double> tab;
  tab.reserve(static_cast<size_t>(utab / du) + 2);
  for (double u = 0.0; u <= utab + 1e-9; u += du) tab.push_back(moment(u));
  double tail_exp = sine ? kap - 1.0 : kap;
  auto X = [&](double u) {
    double a = std::fabs(u);
    if (a >= utab)
      return tab.back() * std::pow(std::sinh(a) / std::sinh(utab), tail_exp);
    double t = a / du;
    int i = static_cast<int>(t);
    double fr = t - i;
    return tab[i] * (1.0 - fr) + tab[i + 1] * fr;
  };

  double beta = kPi * (2.0 * nu - 1.0) / 4.0;
  double gam = kPi * (2.0 * nu + 1.0) / 4.0;
  auto bracket = [&](double r) {
    if (!sine) return (nu + 0.5) * std::cos(r - beta) - r * std::sin(r - beta);
    return (nu + 1.5) * std::cos(r - gam) - r * std::sin(r - gam);
  };
  double g12 = specfun::gamma_cx(Complex(0.5 - nu, 0.0)).real();
  double cc = sine ? -4.0 * g12 * std::cos(gam) / (kPi * kPi * (2.0 * nu + 1.0))
                   : -(2.0 / (kPi * kPi)) * g12 *
                         std::sin(kPi * 0.5 * (nu + 0.5));
  double pw = sine ? nu + 1.5 : nu + 0.5;
  double xpw = sine ? 1.0 + nu : nu;

  QuadratureConfig ocfg = cfg;
  ocfg.oscillatory_accel = QuadratureConfig::Accel::shanks;
  ocfg.abs_tol = std::max(cfg.abs_tol, 1e-9);
  ocfg.rel_tol = std::max(cfg.rel_tol, 1e-7);
  auto integ = [&](double w) {
    double u = std::log(w / xi);
    return std::pow(w / xi, pw) * bracket(w) * X(u) / w;
  };
  auto r = quadrature::integrate_oscillatory(
      integ, [](int k) { return (k + 1) * kPi; }, ocfg);
  double val = require_converged(r, "x-space particular solution");
  return cc * std::pow(xi, xpw) * val;
}

}  // namespace

void SechOrder::validate() const {
  if (!(nu > -0.5))
    throw std::domain_error("SechOrder: order must exceed -1/2");
}

void OddSigmaFunction::validate(const std::vector<double>& tau_nodes) const {
  if (!fn) return;
  for (double tau : tau_nodes) {
    Complex plus = fn(tau), minus = fn(-tau);
    double scale = std::max(1.0, std::abs(plus));
    if (std::abs(plus + minus) > 1e-10 * scale)
      throw std::invalid_argument("OddSigmaFunction: rho(s) != -rho(1-s)");
    if (std::fabs(plus.real()) > 1e-10 * scale)
      throw std::invalid_argument("OddSigmaFunction: Re rho != 0");
  }
}

double forward_eqn1(const transforms::SpectralDensity& phi, double nu, double x,
                    const QuadratureConfig& cfg) {
  SechOrder{nu}.validate();
  return forward_kernel_integral(phi, nu, x, false, cfg);
}

double forward_eqn2(const transforms::SpectralDensity& psi, double nu, double x,
                    const QuadratureConfig& cfg) {
  SechOrder{nu}.validate();
  if (x == 0.0) {
    psi.validate();  // still refuse malformed input
    return 0.0;
  }
  return forward_kernel_integral(psi, nu, x, true, cfg);
}

DataProfile::DataProfile(const FunctionSpec& f, double nu, Kind kind,
                         const QuadratureConfig& cfg)
    : nu_(nu), mu_(0.5 - nu), kind_(kind), cfg_(cfg) {
  SechOrder{nu}.validate();
  if (!(nu < 1.5))
    throw std::domain_error(
        "DataProfile: single-subtraction smoothing needs nu < 3/2");
  SupportScan sup = scan_support(f, nu);
  if (sup.peak == 0.0) return;  // empty table marks zero data
  const double vmax = std::sinh(sup.xmax);
  const bool sine = kind_ == Kind::sine;

  // C(y) (cosine) or D(y) (sine) in the variable v = sinh x, where the
  // oscillation frequency is constant.
  auto g = [&](double v) {
    if (v > vmax) return 0.0;
    return std::pow(1.0 + v * v, -nu / 2.0) * f(std::asinh(v));
  };
  auto transform_at = [&](double y) {
    if (y == 0.0) {
      if (sine) return 0.0;
      return quadrature::integrate_finite(g, 0.0, vmax, cfg_).value;
    }
    auto ig = [&](double v) {
      return g(v) * (sine ? std::sin(y * v) : std::cos(y * v));
    };
    double off = sine ? 1.0 : 0.5;
    auto r = quadrature::integrate_oscillatory(
        ig, [&](int k) { return (k + off) * kPi / y; }, cfg_);
    return r.value;
  };

  c0_ = sine ? 0.0 : transform_at(0.0);
  // Gamma(mu) 2^{mu-1} / Gamma(2 mu) by the duplication formula, finite on
  // the whole order range.
  closed_coeff_ =
      c0_ * std::sqrt(kPi) * std::pow(2.0, -mu_) * rgamma_real(1.0 - nu_);

  // Smoothed nodes on the y = w^2 grid.
  const int panels = 60;
  const double wmax = 6.3;
  struct Node {
    double y, amp;
  };
  std::vector<Node> nodes;
  nodes.reserve(panels * 16);
  for (int p = 0; p < panels; ++p) {
    double a = wmax * p / panels, b = wmax * (p + 1) / panels;
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    for (int i = 0; i < 8; ++i)
      for (double sgn : {1.0, -1.0}) {
        double w = c + sgn * h * kGlx[i];
        double y = w * w;
        double cd = transform_at(y) - c0_ * std::exp(-y);
        nodes.push_back({y, kGlw[i] * h * 2.0 *
                                std::pow(w, 2.0 * mu_ + 1.0) * cd / y});
      }
  }
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& l, const Node& r) { return l.y < r.y; });

  auto smoothed = [&](double u) {
    double chu = std::cosh(u), s = 0.0;
    for (const Node& n : nodes) {
      double e = n.y * chu;
      if (e > 745.0) break;  // ascending y: the rest underflow
      s += n.amp * std::exp(-e);
    }
    return s;
  };

  du_ = 0.02;
  double wpeak = 0.0;
  int quiet = 0;
  for (double u = 0.0; u <= 60.0 + 1e-9; u += du_) {
    double v = smoothed(u);
    table_.push_back(v);
    wpeak = std::max(wpeak, std::fabs(v));
    quiet = std::fabs(v) <= 1e-15 * wpeak ? quiet + 1 : 0;
    if (quiet >= 100 && u > 5.0) break;
  }
}

double DataProfile::fourier_table(double tau) const {
  // W(u) is even and smooth, so the trapezoid rule is spectrally accurate.
  double s = 0.0;
  for (size_t i = 0; i < table_.size(); ++i) {
    double w = (i == 0 || i + 1 == table_.size()) ? 0.5 : 1.0;
    s += w * table_[i] * std::cos(tau * i * du_);
  }
  return s * du_;
}

double DataProfile::h(double tau) const {
  if (table_.empty() || tau == 0.0) return 0.0;
  double t = std::fabs(tau);
  double shift = kind_ == Kind::sine ? 1.5 : 0.5;
  double I = fourier_table(t);
  if (closed_coeff_ != 0.0)
    I += closed_coeff_ * std::exp(log_norm_gamma(mu_, t));
  if (I == 0.0) return 0.0;
  double cfam = kind_ == Kind::sine ? 16.0 / (kPi * kPi * (2.0 * nu_ + 1.0))
                                    : 8.0 / (kPi * kPi);
  double L = std::log(t) + ln_sinh(kPi * t) + log_norm_gamma(shift + nu_, t);
  return cfam * std::exp(L) * I;
}

double DataProfile::symbol(double tau) const {
  if (table_.empty()) return 0.0;
  double t = std::fabs(tau);
  double I = fourier_table(t);
  if (closed_coeff_ != 0.0)
    I += closed_coeff_ * std::exp(log_norm_gamma(mu_, t));
  if (I == 0.0) return 0.0;
  if (kind_ == Kind::cosine)
    return (32.0 / kPi) * std::copysign(1.0, I) *
           std::exp(ln_cosh(kPi * t / 2.0) + std::log(std::fabs(I)));
  if (t == 0.0) return 0.0;
  return (32.0 / (kPi * (2.0 * nu_ + 1.0))) * std::copysign(1.0, I) *
         std::exp(std::log(t) + ln_sinh(kPi * t / 2.0) +
                  std::log(std::fabs(I)));
}

Complex DataProfile::line_density(double tau) const {
  double t = std::fabs(tau);
  if (t >= cut_tau_) return Complex(0.0, 0.0);
  double hv = h(t);
  if (hv == 0.0) return Complex(0.0, 0.0);
  hpeak_ = std::max(hpeak_, std::fabs(hv));
  double shift = kind_ == Kind::sine ? 1.5 : 0.5;
  Complex lg = specfun::log_gamma_cx(Complex(shift + nu_, -t));
  double L = std::log(std::fabs(hv) / 2.0) - lg.real();
  if (L > 300.0)
    throw AccuracyError(
        "line density grows on the critical line; data outside the range of "
        "the forward operator",
        L);
  double mag = std::exp(L);
  // once |h| has decayed into the inner-quadrature noise floor the Gamma
  // division amplifies roundoff like e^{pi tau/2}; cut the scan there, but
  // only if the density itself has decayed by then
  if (std::fabs(hv) < std::max(1e-12, 30.0 * cfg_.rel_tol) * hpeak_) {
    if (vpeak_ > 0.0 && mag > 0.05 * vpeak_)
      throw AccuracyError(
          "line density has not decayed when h reaches its noise floor; data "
          "outside the range of the forward operator",
          mag);
    cut_tau_ = t;
    return Complex(0.0, 0.0);
  }
  vpeak_ = std::max(vpeak_, mag);
  Complex val = std::copysign(mag, hv) *
                Complex(std::cos(lg.imag()), -std::sin(lg.imag()));
  return tau < 0.0 ? std::conj(val) : val;
}

double DataProfile::unique_solution(double xi) const {
  if (table_.empty()) return 0.0;
  return transforms::inv_mellin_line(
      [this](double tau) { return line_density(tau); }, xi, cfg_);
}

Complex F_of_s(const FunctionSpec& f, double nu, Complex s,
               const QuadratureConfig& cfg) {
  if (std::fabs(s.real() - 0.5) > 1e-9)
    throw std::invalid_argument("F_of_s: s must lie on the critical line");
  DataProfile profile(f, nu, DataProfile::Kind::cosine, cfg);
  return Complex(profile.symbol(s.imag()), 0.0);
}

Complex G_of_s(const FunctionSpec& f, double nu, Complex s,
               const QuadratureConfig& cfg) {
  if (std::fabs(s.real() - 0.5) > 1e-9)
    throw std::invalid_argument("G_of_s: s must lie on the critical line");
  DataProfile profile(f, nu, DataProfile::Kind::sine, cfg);
  return Complex(profile.symbol(s.imag()), 0.0);
}

double compute_h_c(const FunctionSpec& f, double nu, double tau,
                   const QuadratureConfig& cfg) {
  return DataProfile(f, nu, DataProfile::Kind::cosine, cfg).h(tau);
}

double compute_h_s(const FunctionSpec& f, double nu, double tau,
                   const QuadratureConfig& cfg) {
  return DataProfile(f, nu, DataProfile::Kind::sine, cfg).h(tau);
}

double unique_phi_eqn1(const FunctionSpec& f, double nu, double xi,
                       const QuadratureConfig& cfg) {
  return DataProfile(f, nu, DataProfile::Kind::cosine, cfg).unique_solution(xi);
}

double unique_psi_eqn2(const FunctionSpec& f, double nu, double xi,
                       const QuadratureConfig& cfg) {
  return DataProfile(f, nu, DataProfile::Kind::sine, cfg).unique_solution(xi);
}

double general_phi_eqn1(const FunctionSpec& f, double nu,
                        const OddSigmaFunction& rho, double xi,
                        const QuadratureConfig& cfg) {
  return unique_phi_eqn1(f, nu, xi, cfg) +
         homogeneous_term(rho, 0.5 + nu, xi, cfg);
}

double simplified_phi_eqn1(const FunctionSpec& f, double nu,
                           const OddSigmaFunction& rho, double xi,
                           const QuadratureConfig& cfg) {
  return xspace_particular(f, nu, false, xi, cfg) +
         homogeneous_term(rho, 0.5 + nu, xi, cfg);
}

double general_psi_eqn2(const FunctionSpec& f, double nu,
                        const OddSigmaFunction& rho, double xi,
                        const QuadratureConfig& cfg) {
  return unique_psi_eqn2(f, nu, xi, cfg) +
         homogeneous_term(rho, 1.5 + nu, xi, cfg);
}

double simplified_psi_eqn2(const FunctionSpec& f, double nu,
                           const OddSigmaFunction& rho, double xi,
                           const QuadratureConfig& cfg) {
  return xspace_particular(f, nu, true, xi, cfg) +
         homogeneous_term(rho, 1.5 + nu, xi, cfg);
}

oracle::SolutionField solve_cauchy_sech(const FunctionSpec& f,
                                        const oracle::Grid2D& grid,
                                        const QuadratureConfig& cfg) {
  if (grid.x0 < -1e-12)
    throw std::invalid_argument(
        "solve_cauchy_sech: grid must stay on x >= 0 (even extension)");
  oracle::SolutionField out;
  out.grid = grid;
  out.values.assign(static_cast<size_t>(grid.nx) * grid.nt, 0.0);
  out.method = "sech_boost_kernels";
  out.abs_tol = cfg.abs_tol;
  out.rel_tol = cfg.rel_tol;
  out.potential = symmetry::PotentialSpec::exp_family(0.5, 0.5, 1.0);
  out.has_potential = true;

  const double nu2 = symmetry::kNuSech + 0.5;
  FunctionSpec data = FunctionSpec::from_callable(
      "sech_weighted_datum",
      [f](double x) { return f(x) / std::sqrt(std::cosh(x)); });
  SupportScan sup = scan_support(data, nu2);
  if (sup.peak == 0.0) return out;  // zero datum propagates to zero

  DataProfile profile(data, nu2, DataProfile::Kind::cosine, cfg);

  // Tabulate the inverted density on a log grid, then propagate with the
  // boost-translated kernel pair.
  std::vector<double> xis, psiv;
  for (double l = -4.0; l <= 4.2001; l += 0.04) {
    double xi = std::exp(l);
    xis.push_back(xi);
    psiv.push_back(profile.unique_solution(xi));
  }
  FunctionSpec psi = FunctionSpec::from_samples(xis, psiv, true);
  const double lo = xis.front(), hi = xis.back();

  for (int j = 0; j < grid.nt; ++j) {
    double t = grid.t(j);
    double ep = std::exp(t), em = std::exp(-t);
    double sp = std::sqrt(ep), sm = std::sqrt(em);
    for (int i = 0; i < grid.nx; ++i) {
      double x = grid.x(i);
      double sh = std::sinh(x), ch = std::cosh(x);
      double pre = 0.5 * std::sqrt(kPi / 2.0) * std::sqrt(ch);
      auto ig = [&](double xi) {
        double k1 = sp * std::cos(ep * xi * sh) *
                    specfun::bessel_j(nu2, ep * xi * ch);
        double k2 = sm * std::cos(em * xi * sh) *
                    specfun::bessel_j(nu2, em * xi * ch);
        return psi(xi) * (k1 + k2);
      };
      auto r = quadrature::integrate_finite(ig, lo, hi, cfg);
      out.values[static_cast<size_t>(j) * grid.nx + i] =
          pre * require_converged(r, "solve_cauchy_sech: kernel propagation");
    }
  }
  return out;
}

double forward_general_AB(const transforms::SpectralDensity& phi, double A,
                          double B, double omega, double x,
                          const QuadratureConfig& cfg) {
  phi.validate();
  if (phi.growth_flagged)
    throw std::invalid_argument("forward_general_AB: growth-flagged density");
  double total = 0.0;
  for (const auto& a : phi.atoms) {
    if (a.derivative_order != 0)
      throw std::invalid_argument("forward_general_AB: derivative atoms");
    total += a.weight * symmetry::kernel_K_general(A, B, omega, a.location, x,
                                                   0.0);
  }
  auto integrand = [&](double eps) {
    return phi.eval(eps) * symmetry::kernel_K_general(A, B, omega, eps, x, 0.0);
  };
  double split = A > 0.0 ? std::exp(-omega * x) / (2.0 * A * omega) : -1.0;
  if (phi.density) {
    double head_end = split > 0.0 ? split : 1.0;
    total += require_converged(
        quadrature::integrate_finite(integrand, 0.0, head_end, cfg),
        "forward_general_AB");
    // beyond the crossing the kernel grows like eps^{-beta}; the density's
    // decay must win, which the envelope encodes for the truncation scan
    double growth = A > 0.0 ? 2.0 * A * omega * std::exp(omega * x) : 0.0;
    double beta =
        (1.0 - std::sqrt(1.0 + 1.0 / (A * B * omega * omega))) / 2.0;
    auto envelope = [&, growth, beta](double eps) {
      return std::fabs(phi.eval(eps)) * std::pow(1.0 + growth * eps, -beta);
    };
    total += require_converged(
        quadrature::integrate_semiinf(integrand, cfg, envelope, false,
                                      head_end),
        "forward_general_AB");
  } else if (phi.nodes.size() >= 2) {
    double a = phi.nodes.front(), b = phi.nodes.back();
    if (split > a && split < b) {
      total += require_converged(
          quadrature::integrate_finite(integrand, a, split, cfg),
          "forward_general_AB");
      total += require_converged(
          quadrature::integrate_finite(integrand, split, b, cfg),
          "forward_general_AB");
    } else {
      total += require_converged(
          quadrature::integrate_finite(integrand, a, b, cfg),
          "forward_general_AB");
    }
  }
  return total;
}

bool check_even_condition(const transforms::MellinSample& sample,
                          double rel_tol) {
  sample.validate();
  if (sample.values.empty()) return true;
  double peak = 0.0;
  for (const Complex& v : sample.values) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return true;
  const auto& taus = sample.tau_nodes;
  bool two_sided = taus.front() < -1e-12;
  for (size_t i = 0; i < taus.size(); ++i) {
    if (std::fabs(sample.values[i].imag()) > rel_tol * peak) return false;
    if (!two_sided) continue;
    // locate the mirror node for the tau -> -tau comparison
    double want = -taus[i];
    auto it = std::lower_bound(taus.begin(), taus.end(), want - 1e-12);
    if (it == taus.end() || std::fabs(*it - want) > 1e-9) continue;
    size_t k = static_cast<size_t>(it - taus.begin());
    if (std::abs(sample.values[i] - sample.values[k]) > rel_tol * peak)
      return false;
  }
  return true;
}

double contour_bracket_trig(double nu, double z) {
  double r = 2.0 / std::sqrt(z);
  double beta = kPi * (2.0 * nu - 1.0) / 4.0;
  return -std::pow(z, -(1.0 + nu) / 2.0) / (2.0 * std::sqrt(kPi)) *
         ((nu + 0.5) * std::cos(r - beta) - r * std::sin(r - beta));
}

double contour_bracket_hyp(double nu, double z) {
  double gam = kPi * (2.0 * nu + 1.0) / 4.0;
  double t1 = std::cos(gam) * (1.5 + nu) *
              specfun::hyp_1f2(1.75 + nu / 2.0, 0.75 + nu / 2.0, 1.5,
                               -1.0 / z) /
              (std::sqrt(kPi) * std::pow(z, 1.0 + nu / 2.0));
  double t2 = std::sin(gam) * (0.5 + nu) *
              specfun::hyp_1f2(1.25 + nu / 2.0, 0.25 + nu / 2.0, 0.5,
                               -1.0 / z) /
              (2.0 * std::sqrt(kPi) * std::pow(z, (1.0 + nu) / 2.0));
  return t1 - t2;
}

Complex cos_kernel_mellin(double nu, double b, double c, Complex s) {
  if (!(b > 0.0 && b < c))
    throw std::domain_error("cos_kernel_mellin: needs 0 < b < c");
  double z = (b / c) * (b / c);
  Complex num = specfun::gamma_cx((s + nu) / 2.0);
  Complex den = specfun::gamma_cx(1.0 + (nu - s) / 2.0);
  Complex f = specfun::gauss_2f1((s + nu) / 2.0, (s - nu) / 2.0,
                                 Complex(0.5, 0.0), z);
  return std::exp((s - 1.0) * std::log(2.0) - s * std::log(c)) * num / den * f;
}

Complex sin_kernel_mellin(double nu, double b, double c, Complex s) {
  if (!(b > 0.0 && b < c))
    throw std::domain_error("sin_kernel_mellin: needs 0 < b < c");
  double z = (b / c) * (b / c);
  Complex num = specfun::gamma_cx((s + nu + 1.0) / 2.0);
  Complex den = specfun::gamma_cx((nu - s + 1.0) / 2.0);
  Complex f = specfun::gauss_2f1((s + nu + 1.0) / 2.0, (s - nu + 1.0) / 2.0,
                                 Complex(1.5, 0.0), z);
  return b * std::exp(s * std::log(2.0) - (s + 1.0) * std::log(c)) * num /
         den * f;
}

namespace {

Complex kernel_mellin_quad(double nu, double b, double c, Complex s, bool sine,
                           const QuadratureConfig& cfg) {
  if (!(b > 0.0 && b < c))
    throw std::domain_error("kernel mellin quadrature: needs 0 < b < c");
  QuadratureConfig ocfg = cfg;
  ocfg.oscillatory_accel = QuadratureConfig::Accel::shanks;
  double spacing = kPi / (b + c);
  double sig = s.real(), tau = s.imag();
  auto part = [&](bool imag_part) {
    auto ig = [&](double x) {
      double phase = tau * std::log(x);
      double tr = imag_part ? std::sin(phase) : std::cos(phase);
      double osc = sine ? std::sin(b * x) : std::cos(b * x);
      return std::pow(x, sig - 1.0) * tr * osc * specfun::bessel_j(nu, c * x);
    };
    auto r = quadrature::integrate_oscillatory(
        ig, [spacing](int k) { return (k + 1) * spacing; }, ocfg);
    return require_converged(r, "kernel mellin quadrature");
  };
  return Complex(part(false), part(true));
}

}  // namespace

Complex cos_kernel_mellin_quad(double nu, double b, double c, Complex s,
                               const QuadratureConfig& cfg) {
  return kernel_mellin_quad(nu, b, c, s, false, cfg);
}

Complex sin_kernel_mellin_quad(double nu, double b, double c, Complex s,
                               const QuadratureConfig& cfg) {
  return kernel_mellin_quad(nu, b, c, s, true, cfg);
}

}  // namespace liewave::solver_sech
