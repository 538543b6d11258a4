#include "liewave/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace liewave::transforms {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

using CVec = std::vector<Complex>;  // ascending polynomial coefficients

CVec to_cvec(const std::vector<double>& p) {
  CVec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i];
  return out;
}

void trim(CVec& p) {
  while (p.size() > 1 && std::abs(p.back()) < 1e-14) p.pop_back();
}

CVec mul(const CVec& a, const CVec& b) {
  CVec out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// long division a / b -> (quotient, remainder)
std::pair<CVec, CVec> divmod(CVec a, const CVec& b) {
  CVec q(std::max<std::size_t>(1, a.size() >= b.size() ? a.size() - b.size() + 1 : 1),
         0.0);
  while (a.size() >= b.size()) {
    std::size_t k = a.size() - b.size();
    Complex c = a.back() / b.back();
    q[k] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
    a.pop_back();
    if (a.empty()) a.push_back(0.0);
    while (a.size() > b.size() && std::abs(a.back()) < 1e-12) a.pop_back();
    if (a.size() < b.size()) break;
  }
  return {q, a};
}

// Taylor coefficients of p about r, up to order n-1, by repeated synthetic
// division by (s - r)
CVec taylor_shift(CVec p, Complex r, std::size_t n) {
  CVec out(n, 0.0);
  for (std::size_t k = 0; k < n && !p.empty(); ++k) {
    if (p.size() == 1) {
      out[k] = p[0];
      break;
    }
    CVec q(p.size() - 1);
    Complex rem = p.back();
    for (std::size_t i = p.size() - 1; i-- > 0;) {
      q[i] = rem;
      rem = p[i] + rem * r;
    }
    out[k] = rem;
    p = std::move(q);
  }
  return out;
}

}  // namespace

double SpectralDensity::eval(double lam) const {
  if (density) return density(lam);
  if (nodes.empty()) return 0.0;
  if (lam <= nodes.front() || lam >= nodes.back()) {
    if (lam == nodes.front()) return values.front();
    if (lam == nodes.back()) return values.back();
    return 0.0;
  }
  auto it = std::upper_bound(nodes.begin(), nodes.end(), lam);
  std::size_t i = it - nodes.begin() - 1;
  double t = (lam - nodes[i]) / (nodes[i + 1] - nodes[i]);
  return (1.0 - t) * values[i] + t * values[i + 1];
}

void SpectralDensity::validate() const {
  if (nodes.size() != values.size())
    throw std::invalid_argument("SpectralDensity: node/value size mismatch");
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
    if (!(nodes[i] < nodes[i + 1]) || !(nodes[i] > 0.0))
      throw std::invalid_argument("SpectralDensity: nodes must be ascending, positive");
  for (auto& a : atoms)
    if (a.location < 0.0 || a.derivative_order < 0)
      throw std::invalid_argument("SpectralDensity: bad atom");
}

void MellinSample::validate() const {
  if (tau_nodes.size() != values.size())
    throw std::invalid_argument("MellinSample: size mismatch");
  if (!std::is_sorted(tau_nodes.begin(), tau_nodes.end()))
    throw std::invalid_argument("MellinSample: tau nodes must ascend");
  if (symmetry == Symmetry::none) return;
  // s -> 1-s is tau -> -tau; with real-original conjugate symmetry
  // even_F means Im h = 0 up to tolerance on stored nodes, odd_rho means
  // Re h = 0.
  for (std::size_t i = 0; i < values.size(); ++i) {
    double viol = symmetry == Symmetry::even_F ? std::fabs(values[i].imag())
                                               : std::fabs(values[i].real());
    double scale = std::max(1.0, std::abs(values[i]));
    if (viol > 1e-8 * scale)
      throw std::invalid_argument("MellinSample: declared symmetry violated");
  }
}

bool RationalClosedForm::has_growing() const {
  for (auto& p : pole_terms)
    if (p.root.real() > 1e-12) return true;
  return false;
}

double RationalClosedForm::eval(double lam) const {
  Complex sum = 0.0;
  for (auto& p : pole_terms) {
    Complex e = std::exp(p.root * lam);
    double pw = 1.0, fact = 1.0;
    for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
      if (j > 0) {
        pw *= lam;
        fact *= j;
      }
      sum += p.coeffs[j] * pw / fact * e;
    }
  }
  return sum.real();
}

Complex RationalClosedForm::laplace_at(Complex s) const {
  Complex out = 0.0;
  Complex pw = 1.0;
  for (double c : polynomial_part) {
    out += c * pw;
    pw *= s;
  }
  for (auto& p : pole_terms)
    for (std::size_t j = 0; j < p.coeffs.size(); ++j)
      out += p.coeffs[j] * std::pow(s - p.root, -(double)(j + 1));
  return out;
}

RationalClosedForm inv_laplace_rational_factored(
    const std::vector<double>& num,
    const std::vector<std::pair<Complex, int>>& den_roots, double den_leading) {
  if (den_roots.empty() || den_leading == 0.0)
    throw std::invalid_argument("inv_laplace_rational: degenerate denominator");
  CVec n = to_cvec(num);
  trim(n);
  // build denominator
  CVec d{den_leading};
  for (auto& [r, m] : den_roots) {
    if (m < 1) throw std::invalid_argument("inv_laplace_rational: multiplicity < 1");
    for (int i = 0; i < m; ++i) d = mul(d, CVec{-r, 1.0});
  }
  RationalClosedForm out;
  if (n.size() >= d.size()) {
    auto [q, rem] = divmod(n, d);
    out.polynomial_part.resize(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (std::fabs(q[i].imag()) > 1e-9 * (1.0 + std::abs(q[i])))
        throw std::invalid_argument("inv_laplace_rational: complex polynomial part");
      out.polynomial_part[i] = q[i].real();
    }
    n = rem;
    trim(n);
  }
  for (auto& [r, m] : den_roots) {
    // cofactor: denominator with this root's factor removed
    CVec cof{den_leading};
    for (auto& [r2, m2] : den_roots) {
      if (&r2 == &r) continue;
      for (int i = 0; i < m2; ++i) cof = mul(cof, CVec{-r2, 1.0});
    }
    CVec ns = taylor_shift(n, r, (std::size_t)m);
    CVec ds = taylor_shift(cof, r, (std::size_t)m);
    if (std::abs(ds[0]) < 1e-300)
      throw std::invalid_argument("inv_laplace_rational: repeated root collision");
    // power-series division to order m-1
    CVec q(m, 0.0);
    for (int j = 0; j < m; ++j) {
      Complex acc = j < (int)ns.size() ? ns[j] : Complex(0.0);
      for (int i = 0; i < j; ++i) acc -= q[i] * ds[j - i];
      q[j] = acc / ds[0];
    }
    PoleTerm pt;
    pt.root = r;
    pt.order = m;
    pt.coeffs.resize(m);
    for (int j = 0; j < m; ++j) pt.coeffs[j] = q[m - 1 - j];
    out.pole_terms.push_back(std::move(pt));
  }
  return out;
}

RationalClosedForm inv_laplace_rational(const std::vector<double>& num,
                                        const std::vector<double>& den) {
  CVec d = to_cvec(den);
  trim(d);
  if (d.size() < 2) throw std::invalid_argument("inv_laplace_rational: constant denominator");
  std::size_t deg = d.size() - 1;
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(deg, deg);
  for (std::size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -d[i] / d[deg];
  for (std::size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<Complex> roots;
  for (std::size_t i = 0; i < deg; ++i) {
    auto e = es.eigenvalues()(i);
    roots.push_back(Complex(e.real(), e.imag()));
  }
  // cluster near-identical roots into multiplicities
  std::vector<std::pair<Complex, int>> grouped;
  for (auto r : roots) {
    bool merged = false;
    for (auto& [g, m] : grouped) {
      if (std::abs(g - r) < 1e-7 * (1.0 + std::abs(g))) {
        g = (g * (double)m + r) / (double)(m + 1);
        ++m;
        merged = true;
        break;
      }
    }
    if (!merged) grouped.emplace_back(r, 1);
  }
  // snap real roots
  for (auto& [g, m] : grouped)
    if (std::fabs(g.imag()) < 1e-9 * (1.0 + std::abs(g))) g = Complex(g.real(), 0.0);
  return inv_laplace_rational_factored(num, grouped, d.back().real());
}

double inv_laplace_numeric(const std::function<Complex(Complex)>& F, double lam,
                           const quadrature::QuadratureConfig&) {
  if (!(lam > 0.0)) throw std::invalid_argument("inv_laplace_numeric: lam > 0");
  // fixed-Talbot contour; e^{r lam} = e^{2M/5} amplifies roundoff, so keep M
  // moderate and accumulate in long double
  const int M = 32;
  double r = 2.0 * M / (5.0 * lam);
  long double sum = 0.5L * (F(Complex(r, 0.0)) * std::exp(r * lam)).real();
  for (int k = 1; k < M; ++k) {
    double th = k * kPi / M;
    double cot = std::cos(th) / std::sin(th);
    Complex s(r * th * cot, r * th);
    double sigma = th + (th * cot - 1.0) * cot;
    Complex val = std::exp(s * lam) * F(s) * Complex(1.0, sigma);
    // F may overflow far down the contour tail (e.g. originals with jumps);
    // the remaining nodes sit deeper in the same regime, so stop here
    if (!std::isfinite(val.real())) break;
    sum += val.real();
  }
  return static_cast<double>(sum) * r / M;
}

double hankel(double nu, const FunctionSpec& f, double lam,
              const quadrature::QuadratureConfig& cfg) {
  if (!(lam > 0.0)) throw std::invalid_argument("hankel: lam > 0");
  auto res = quadrature::integrate_oscillatory(
      [&](double y) {
        return f(y) * std::sqrt(lam * y) * specfun::bessel_j(nu, lam * y);
      },
      [=](int k) { return quadrature::mcmahon_zero(nu, k + 1) / lam; }, cfg);
  if (!res.converged)
    throw specfun::AccuracyError("hankel: oscillatory quadrature did not converge",
                                 res.error_estimate);
  return res.value;
}

double laplace(const FunctionSpec& f, double s,
               const quadrature::QuadratureConfig& cfg) {
  if (!(s > 0.0)) throw std::invalid_argument("laplace: s > 0");
  auto res = quadrature::integrate_semiinf(
      [&](double y) { return f(y) * std::exp(-s * y); }, cfg);
  if (!res.converged)
    throw specfun::AccuracyError("laplace: did not converge", res.error_estimate);
  return res.value;
}

Complex mellin_line(const FunctionSpec& f, double tau,
                    const quadrature::QuadratureConfig& cfg) {
  // substitute x = e^u: the integrand becomes f(e^u) e^{u/2} (cos/sin)(tau u)
  // on the whole line, which decays exponentially in u whenever f decays
  // algebraically faster than x^{-1/2}
  auto part = [&](auto kernel) {
    auto upper = quadrature::integrate_semiinf(
        [&](double u) { return f(std::exp(u)) * std::exp(0.5 * u) * kernel(u); },
        cfg);
    auto lower = quadrature::integrate_semiinf(
        [&](double u) {
          return f(std::exp(-u)) * std::exp(-0.5 * u) * kernel(-u);
        },
        cfg);
    return upper.value + lower.value -
           0.0;  // u = 0 shared endpoint has measure zero
  };
  double re = part([&](double u) { return std::cos(tau * u); });
  double im = part([&](double u) { return std::sin(tau * u); });
  return Complex(re, im);
}

double inv_mellin_line(const MellinSample& h, double x) {
  if (!(x > 0.0)) throw std::invalid_argument("inv_mellin_line: x > 0");
  h.validate();
  double lx = std::log(x);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < h.tau_nodes.size(); ++i) {
    double t0 = h.tau_nodes[i], t1 = h.tau_nodes[i + 1];
    double v0 = (h.values[i] * std::exp(Complex(0.0, -t0 * lx))).real();
    double v1 = (h.values[i + 1] * std::exp(Complex(0.0, -t1 * lx))).real();
    acc += 0.5 * (v0 + v1) * (t1 - t0);
  }
  return acc / (kPi * std::sqrt(x));
}

double inv_mellin_line(const std::function<Complex(double)>& h, double x,
                       const quadrature::QuadratureConfig& cfg) {
  if (!(x > 0.0)) throw std::invalid_argument("inv_mellin_line: x > 0");
  double lx = std::log(x);
  double dt = std::min(0.25, kPi / (4.0 * std::max(1.0, std::fabs(lx))));
  double acc = 0.0;
  Complex prev = h(0.0);
  double hmax = std::abs(prev);
  int quiet = 0;
  const int need = 20;
  double tau = 0.0;
  const double tau_cap = 600.0;
  while (tau < tau_cap) {
    double t1 = tau + dt;
    Complex mid = h(tau + 0.5 * dt);
    Complex cur = h(t1);
    double v0 = (prev * std::exp(Complex(0.0, -tau * lx))).real();
    double vm = (mid * std::exp(Complex(0.0, -(tau + 0.5 * dt) * lx))).real();
    double v1 = (cur * std::exp(Complex(0.0, -t1 * lx))).real();
    acc += dt / 6.0 * (v0 + 4.0 * vm + v1);  // composite Simpson
    prev = cur;
    tau = t1;
    hmax = std::max(hmax, std::abs(cur));
    // decay threshold is relative to the observed peak: the samples come from
    // quadrature and bottom out at its noise floor, not at zero
    double thresh = std::max(cfg.truncation_tail_tol, 1e-8 * hmax);
    if (std::abs(cur) < thresh)
      ++quiet;
    else
      quiet = 0;
    if (quiet >= need) return acc / (kPi * std::sqrt(x));
  }
  throw specfun::AccuracyError("inv_mellin_line: no decay detected on the line",
                               std::abs(prev));
}

namespace {

double fourier_kernel(const FunctionSpec& f, double x, bool sine,
                      const quadrature::QuadratureConfig& cfg) {
  double norm = std::sqrt(2.0 / kPi);
  if (std::fabs(x) < 1e-8) {
    if (sine) return 0.0;
    auto r = quadrature::integrate_semiinf([&](double y) { return f(y); }, cfg);
    return norm * r.value;
  }
  auto res = quadrature::integrate_oscillatory(
      [&](double y) {
        return f(y) * (sine ? std::sin(x * y) : std::cos(x * y));
      },
      [=](int k) {
        return sine ? (k + 1) * kPi / x : (k + 0.5) * kPi / x;
      },
      cfg);
  if (!res.converged)
    throw specfun::AccuracyError("fourier transform did not converge",
                                 res.error_estimate);
  return norm * res.value;
}

}  // namespace

double fourier_cos(const FunctionSpec& f, double x,
                   const quadrature::QuadratureConfig& cfg) {
  return fourier_kernel(f, x, false, cfg);
}

double fourier_sin(const FunctionSpec& f, double x,
                   const quadrature::QuadratureConfig& cfg) {
  return fourier_kernel(f, x, true, cfg);
}

double kl_forward(const FunctionSpec& g, double tau,
                  const quadrature::QuadratureConfig& cfg) {
  auto res = quadrature::integrate_semiinf(
      [&](double y) { return g(y) * specfun::macdonald_k_it(tau, y) / y; }, cfg,
      [&](double y) { return 2.0 * std::fabs(g(y) / y) * std::exp(-y); });
  if (!res.converged)
    throw specfun::AccuracyError("kl_forward: did not converge",
                                 res.error_estimate);
  return res.value;
}

double kl_inverse(const std::function<double(double)>& H, double x,
                  const quadrature::QuadratureConfig& cfg) {
  if (!(x > 0.0)) throw std::invalid_argument("kl_inverse: x > 0");
  auto integrand = [&](double tau) {
    return tau * std::sinh(kPi * tau) * specfun::macdonald_k_it(tau, x) * H(tau);
  };
  // Choose the truncation point by scanning |integrand|. Errors in H are
  // amplified by sinh(pi tau), so past some tau the samples are pure noise
  // floor and must be cut at the minimum rather than integrated.
  double T = -1.0;
  double vmin = std::numeric_limits<double>::max(), argmin = 0.0, vmax = 0.0;
  int quiet = 0, rising = 0;
  for (double tau = 0.5; tau <= 48.0; tau += 0.5) {
    double v = std::fabs(integrand(tau));
    vmax = std::max(vmax, v);
    if (tau >= 2.0 && v < vmin) {
      vmin = v;
      argmin = tau;
    }
    if (v < cfg.truncation_tail_tol) {
      if (++quiet >= 3) {
        T = tau;
        break;
      }
    } else {
      quiet = 0;
    }
    if (vmin < 1e-5 * std::max(1.0, vmax) && v > 100.0 * vmin) {
      if (++rising >= 3) {
        T = argmin;  // noise floor reached
        break;
      }
    } else {
      rising = 0;
    }
  }
  if (T < 0.0) {
    if (vmin > 1e-3 * std::max(1.0, vmax))
      throw specfun::AccuracyError("kl_inverse: integrand not decaying", vmin);
    T = argmin;
  }
  auto res = quadrature::integrate_finite(integrand, 0.0, T, cfg);
  return 2.0 / (kPi * kPi * x) * res.value;
}

}  // namespace liewave::transforms
