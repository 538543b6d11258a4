#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "doctest.h"
#include "liewave/specfun.hpp"
#include "liewave/symmetry.hpp"

using namespace liewave;
using namespace liewave::symmetry;

namespace {

// RK4 flow of the generator ODE system, used as an independent oracle for
// the closed-form map
std::pair<double, double> flow_rk4(double A, double B, double w, double x0,
                                   double t0, double eps, int steps) {
  auto fx = [&](double x, double t) {
    return std::exp(w * t) * (A * std::exp(w * x) + B * std::exp(-w * x));
  };
  auto ft = [&](double x, double t) {
    return std::exp(w * t) * (A * std::exp(w * x) - B * std::exp(-w * x));
  };
  double h = eps / steps, x = x0, t = t0;
  for (int i = 0; i < steps; ++i) {
    double k1x = fx(x, t), k1t = ft(x, t);
    double k2x = fx(x + 0.5 * h * k1x, t + 0.5 * h * k1t);
    double k2t = ft(x + 0.5 * h * k1x, t + 0.5 * h * k1t);
    double k3x = fx(x + 0.5 * h * k2x, t + 0.5 * h * k2t);
    double k3t = ft(x + 0.5 * h * k2x, t + 0.5 * h * k2t);
    double k4x = fx(x + h * k3x, t + h * k3t);
    double k4t = ft(x + h * k3x, t + h * k3t);
    x += h * (k1x + 2 * k2x + 2 * k3x + k4x) / 6.0;
    t += h * (k1t + 2 * k2t + 2 * k3t + k4t) / 6.0;
  }
  return {x, t};
}

// discrete wave-operator residual u_tt - u_xx - f(x) u at (x, t)
template <typename U, typename F>
double wave_residual(U&& u, F&& f, double x, double t, double h) {
  double utt = (u(x, t + h) - 2.0 * u(x, t) + u(x, t - h)) / (h * h);
  double uxx = (u(x + h, t) - 2.0 * u(x, t) + u(x - h, t)) / (h * h);
  return utt - uxx - f(x) * u(x, t);
}

double sech2(double x) {
  double c = std::cosh(x);
  return 1.0 / (c * c);
}

}  // namespace

TEST_CASE("potential_value: family formulas and domains") {
  auto sech = PotentialSpec::exp_family(0.5, 0.5, 1.0);
  CHECK(potential_value(sech, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(potential_value(sech, 0.7) == doctest::Approx(sech2(0.7)).epsilon(1e-14));

  auto e2x = PotentialSpec::exp_family(0.0, 1.0, 1.0);
  CHECK(potential_value(e2x, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(potential_value(e2x, 1.3) ==
        doctest::Approx(std::exp(2.6)).epsilon(1e-14));

  auto trig = PotentialSpec::trig_family(1.0, 0.0, 1.0);
  CHECK(potential_value(trig, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  auto trig_sin = PotentialSpec::trig_family(0.0, 1.0, 1.0);
  CHECK_THROWS_AS(potential_value(trig_sin, 0.0), std::domain_error);

  auto invsq = PotentialSpec::inverse_square(2.0);
  CHECK(potential_value(invsq, 2.0) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK_THROWS_AS(potential_value(invsq, -1.0), std::domain_error);
}

TEST_CASE("exp_symmetry_map: identity, squared-coordinate form, flow oracle") {
  SymmetryParams p{0.3, -0.2, 1.4, 0.0};
  auto [x0, t0] = exp_symmetry_map(p, 0.37, -0.81);
  CHECK(x0 == doctest::Approx(0.37).epsilon(1e-14));
  CHECK(t0 == doctest::Approx(-0.81).epsilon(1e-14));

  // A = 0, B = 1, w = 1: in y = e^x the map squares to y^2 + 2 eps y e^t
  SymmetryParams q{0.0, 1.0, 1.0, 0.25};
  double x = 0.4, t = 0.6;
  auto [xt, tt] = exp_symmetry_map(q, x, t);
  double y = std::exp(x);
  CHECK(std::exp(2.0 * xt) ==
        doctest::Approx(y * y + 2.0 * q.eps * y * std::exp(t)).epsilon(1e-13));

  // closed form vs RK4 integration of the generator ODEs
  SymmetryParams r{0.4, 0.7, 1.1, 0.0};
  double em = symmetry_domain(r, 0.2, -0.3);
  r.eps = 0.5 * em;
  auto [xc, tc] = exp_symmetry_map(r, 0.2, -0.3);
  auto [xo, to] = flow_rk4(r.A, r.B, r.omega, 0.2, -0.3, r.eps, 4000);
  CHECK(xc == doctest::Approx(xo).epsilon(1e-9));
  CHECK(tc == doctest::Approx(to).epsilon(1e-9));
}

TEST_CASE("exp_symmetry_map: one-parameter group law") {
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  int done = 0;
  while (done < 100) {
    SymmetryParams p;
    p.A = U(rng);
    p.B = U(rng);
    p.omega = 0.75 + 0.5 * std::fabs(U(rng));
    double x = U(rng), t = U(rng);
    double em = symmetry_domain(p, x, t);
    if (!std::isfinite(em)) em = 2.0;
    double e1 = 0.2 * std::fabs(U(rng)) * em;
    double e2 = 0.2 * std::fabs(U(rng)) * em;
    SymmetryParams p12 = p;
    p12.eps = e1 + e2;
    SymmetryParams pa = p, pb = p;
    pa.eps = e2;
    pb.eps = e1;
    try {
      auto [xm, tm] = exp_symmetry_map(pa, x, t);
      auto [x2, t2] = exp_symmetry_map(pb, xm, tm);
      auto [xs, ts] = exp_symmetry_map(p12, x, t);
      CHECK(std::fabs(x2 - xs) < 1e-10);
      CHECK(std::fabs(t2 - ts) < 1e-10);
      ++done;
    } catch (const std::domain_error&) {
      // composite left the validity domain; draw again
    }
  }
}

TEST_CASE("exp_symmetry_map: monotone in eps up to the boundary") {
  SymmetryParams p{0.5, 0.3, 1.0, 0.0};
  double x = 0.1, t = 0.2;
  double em = symmetry_domain(p, x, t);
  double prev = -1e300;
  for (double f = 0.05; f < 0.95; f += 0.05) {
    p.eps = f * em;
    auto [xt, tt] = exp_symmetry_map(p, x, t);
    CHECK(xt > prev);
    prev = xt;
  }
}

TEST_CASE("exp_symmetry_map_v2: satisfies the second generator ODE") {
  SymmetryParams p{0.35, 0.55, 1.2, 0.08};
  double x = 0.3, t = 0.5, d = 1e-6;
  auto [xt, tt] = exp_symmetry_map_v2(p, x, t);
  SymmetryParams pp = p, pm = p;
  pp.eps += d;
  pm.eps -= d;
  auto [xp, tp] = exp_symmetry_map_v2(pp, x, t);
  auto [xm, tm] = exp_symmetry_map_v2(pm, x, t);
  double dx = (xp - xm) / (2.0 * d), dt = (tp - tm) / (2.0 * d);
  double w = p.omega;
  double vx = std::exp(-w * tt) *
              (p.A * std::exp(w * xt) + p.B * std::exp(-w * xt));
  double vt = -std::exp(-w * tt) *
              (p.A * std::exp(w * xt) - p.B * std::exp(-w * xt));
  CHECK(dx == doctest::Approx(vx).epsilon(1e-8));
  CHECK(dt == doctest::Approx(vt).epsilon(1e-8));
}

TEST_CASE("symmetry_domain: closed-form limits and boundary behavior") {
  SymmetryParams free{-1.0, 2.0, 1.0, 0.0};
  CHECK(std::isinf(symmetry_domain(free, 0.3, -0.4)));

  SymmetryParams half{0.5, 0.0, 1.0, 0.0};
  CHECK(symmetry_domain(half, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));

  SymmetryParams p{0.6, -0.4, 1.3, 0.0};
  double em = symmetry_domain(p, 0.15, 0.25);
  p.eps = 0.99 * em;
  CHECK_NOTHROW(exp_symmetry_map(p, 0.15, 0.25));
  p.eps = 1.01 * em;
  CHECK_THROWS_AS(exp_symmetry_map(p, 0.15, 0.25), std::domain_error);
}

TEST_CASE("stationary_solution_exp: ODE residual and Legendre cross-check") {
  double A = 0.5, B = 0.5, w = 1.0;
  CHECK(std::isfinite(stationary_solution_exp(A, B, w, 0.0)));

  // u'' + sech^2(x) u = 0 residual shrinks at second order
  auto u = [&](double x) { return stationary_solution_exp(A, B, w, x); };
  auto resid = [&](double x, double h) {
    return (u(x + h) - 2.0 * u(x) + u(x - h)) / (h * h) + sech2(x) * u(x);
  };
  double r1 = resid(0.3, 2e-2), r2 = resid(0.3, 1e-2);
  CHECK(std::fabs(r2) < 1e-3);
  CHECK(std::fabs(r1 / r2) == doctest::Approx(4.0).epsilon(0.25));

  // same ODE is solved by P_nu(tanh x), Q_nu(tanh x); fit the stationary
  // solution in that basis at two points and predict a third
  auto P = [&](double x) {
    return specfun::legendre(specfun::LegendreKind::P, kNuSech, std::tanh(x));
  };
  auto Q = [&](double x) {
    return specfun::legendre(specfun::LegendreKind::Q, kNuSech, std::tanh(x));
  };
  double x1 = -0.4, x2 = 0.5, x3 = 1.1;
  double det = P(x1) * Q(x2) - P(x2) * Q(x1);
  double c1 = (u(x1) * Q(x2) - u(x2) * Q(x1)) / det;
  double c2 = (P(x1) * u(x2) - P(x2) * u(x1)) / det;
  CHECK(c1 * P(x3) + c2 * Q(x3) == doctest::Approx(u(x3)).epsilon(1e-8));
}

TEST_CASE("kernel_K_general: identity element and wave-operator residual") {
  double A = 0.5, B = 0.5, w = 1.0, eps = 0.12;
  CHECK(kernel_K_general(A, B, w, 0.0, 0.45, 0.3) ==
        doctest::Approx(stationary_solution_exp(A, B, w, 0.45)).epsilon(1e-12));

  auto K = [&](double x, double t) { return kernel_K_general(A, B, w, eps, x, t); };
  auto Kr = [&](double x, double t) {
    return kernel_K_general(A, B, w, eps, x, -t);
  };
  double r1 = wave_residual(K, sech2, 0.2, 0.1, 2e-2);
  double r2 = wave_residual(K, sech2, 0.2, 0.1, 1e-2);
  CHECK(std::fabs(r2) < 1e-3);
  CHECK(std::fabs(r1 / r2) == doctest::Approx(4.0).epsilon(0.25));
  // time reversal gives the second independent kernel
  double rr = wave_residual(Kr, sech2, 0.2, 0.1, 1e-2);
  CHECK(std::fabs(rr) < 1e-3);

  // asymmetric family member
  double A2 = 0.8, B2 = 0.45, w2 = 1.3;
  auto f2 = [&](double x) {
    double d = A2 * std::exp(w2 * x) + B2 * std::exp(-w2 * x);
    return 1.0 / (d * d);
  };
  auto K2 = [&](double x, double t) {
    return kernel_K_general(A2, B2, w2, 0.07, x, t);
  };
  double s2 = wave_residual(K2, f2, -0.15, 0.22, 1e-2);
  CHECK(std::fabs(s2) < 1e-3);
}

TEST_CASE("kernel_Q_sech: argument reduction and PDE residual") {
  // eps = 0, t = 0 reduces the argument to tanh x
  double v = kernel_Q_sech(1.0, 0.0, 0.0);
  CHECK(v == doctest::Approx(specfun::legendre(specfun::LegendreKind::Q, kNuSech,
                                               std::tanh(1.0)))
                 .epsilon(1e-13));

  auto u = [&](double x, double t) { return kernel_Q_sech(x, t, 0.15); };
  double r1 = wave_residual(u, sech2, 0.4, 0.2, 2e-2);
  double r2 = wave_residual(u, sech2, 0.4, 0.2, 1e-2);
  CHECK(std::fabs(r2) < 1e-3);
  CHECK(std::fabs(r1 / r2) == doctest::Approx(4.0).epsilon(0.25));

  // argument crossing 1 is singular
  double x = 0.3, t = 0.2;
  double eps_sing = std::exp(-(t + x));
  CHECK_THROWS_AS(kernel_Q_sech(x, t, eps_sing), std::domain_error);
}

TEST_CASE("kernel_Q_sech_laplace: agrees with the Legendre evaluation") {
  // absolutely convergent regime (argument > 1)
  double d1 = kernel_Q_sech_laplace(0.5, 0.2, 0.7) - kernel_Q_sech(0.5, 0.2, 0.7);
  CHECK(std::fabs(d1) < 1e-8);
  // continued (Ferrers) regime
  double d2 = kernel_Q_sech_laplace(0.5, 0.2, 0.3) - kernel_Q_sech(0.5, 0.2, 0.3);
  CHECK(std::fabs(d2) < 1e-8);
  double d3 = kernel_Q_sech_laplace(0.0, 0.0, 2.0) - kernel_Q_sech(0.0, 0.0, 2.0);
  CHECK(std::fabs(d3) < 1e-8);
}

TEST_CASE("wave_kernels_w: structure and PDE residual") {
  auto [w1a, w2a] = wave_kernels_w(0.0, 0.3, 1.7);
  CHECK(w2a == 0.0);
  CHECK(std::isfinite(w1a));
  CHECK_THROWS_AS(wave_kernels_w(0.1, 0.1, 0.0), std::invalid_argument);

  double xi = 1.3;
  auto u1 = [&](double x, double t) { return wave_kernels_w(x, t, xi).first; };
  auto u2 = [&](double x, double t) { return wave_kernels_w(x, t, xi).second; };
  double r1 = wave_residual(u1, sech2, 0.5, 0.2, 2e-2);
  double r2 = wave_residual(u1, sech2, 0.5, 0.2, 1e-2);
  CHECK(std::fabs(r2) < 1e-3);
  CHECK(std::fabs(r1 / r2) == doctest::Approx(4.0).epsilon(0.25));
  CHECK(std::fabs(wave_residual(u2, sech2, 0.5, 0.2, 1e-2)) < 1e-3);
}
