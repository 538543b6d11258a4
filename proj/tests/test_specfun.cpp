#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "liewave/specfun.hpp"

using namespace liewave::specfun;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("gamma: closed forms") {
  CHECK(gamma_cx({1.0, 0.0}).real() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(gamma_cx({0.5, 0.0}).real() ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(gamma_cx({6.3, 0.0}).real() ==
        doctest::Approx(201.813275184747503659998988362).epsilon(1e-13));
  // reflection-formula identity |Gamma(1/2 + i)|^2 = pi / cosh(pi)
  auto g = gamma_cx({0.5, 1.0});
  CHECK(std::norm(g) == doctest::Approx(kPi / std::cosh(kPi)).epsilon(1e-12));
}

TEST_CASE("gamma: reference values off the real axis") {
  auto g = gamma_cx({0.5, 3.0});
  CHECK(g.real() == doctest::Approx(0.0214456705524306460595528).epsilon(1e-12));
  CHECK(g.imag() == doctest::Approx(0.0068653648372616779142385).epsilon(1e-12));
  auto h = gamma_cx({-2.5, 1.5});
  CHECK(h.real() == doctest::Approx(0.0034121395642391490285708).epsilon(1e-11));
  CHECK(h.imag() == doctest::Approx(-0.0240534904346647359844263).epsilon(1e-11));
}

TEST_CASE("gamma: recurrence property and poles") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> re(-15.0, 15.0), im(-15.0, 15.0);
  int tested = 0;
  while (tested < 50) {
    Complex s{re(rng), im(rng)};
    if (std::fabs(s.imag()) < 0.1 &&
        std::fabs(s.real() - std::round(s.real())) < 0.1)
      continue;  // keep away from the pole line
    Complex lhs = gamma_cx(s + Complex{1.0, 0.0});
    Complex rhs = s * gamma_cx(s);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    ++tested;
  }
  CHECK_THROWS_AS((void)gamma_cx({0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS((void)gamma_cx({-3.0, 0.0}), std::domain_error);
}

TEST_CASE("bessel_j: closed forms and references") {
  CHECK(bessel_j(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(bessel_j(0.5, 1.0) ==
        doctest::Approx(std::sqrt(2.0 / kPi) * std::sin(1.0)).epsilon(1e-12));
  CHECK(std::fabs(bessel_j(0.0, 2.404825557695773)) < 1e-9);
  CHECK(bessel_j(0.618, 7.3) ==
        doctest::Approx(0.220115917577589767263772).epsilon(1e-11));
  CHECK(bessel_j(1.2, 30.0) ==
        doctest::Approx(-0.0877160098264392548316380).epsilon(1e-10));
  CHECK(bessel_j(1.2, 50.0) ==
        doctest::Approx(-0.110188795213010229820792).epsilon(1e-10));
  // just above the series/asymptotic switch
  CHECK(bessel_j(0.618, 16.001) ==
        doctest::Approx(-0.0222560745675923909598985).epsilon(1e-10));
  // higher order stays on the series branch at x = 14
  CHECK(bessel_j(3.0, 14.0) ==
        doctest::Approx(-0.176809406865096002506667).epsilon(1e-11));
  CHECK_THROWS_AS((void)bessel_j(0.0, -1.0), std::domain_error);
  CHECK_THROWS_AS((void)bessel_j(-0.8, 1.0), std::domain_error);
}

TEST_CASE("bessel_i: closed forms, references, inequality") {
  CHECK(bessel_i(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(bessel_i(0.618, 2.5) ==
        doctest::Approx(2.94642879303941455249868).epsilon(1e-12));
  CHECK(bessel_i(0.0, 30.0) ==
        doctest::Approx(781672297823.977489717).epsilon(1e-12));
  CHECK(bessel_i(1.0, 2.0) == doctest::Approx(bessel_i(-1.0, 2.0)));
  // 1 < Gamma(nu+1) (2/x)^nu I_nu(x) < cosh x at (nu, x) = (1, 1.5)
  double v = std::tgamma(2.0) * (2.0 / 1.5) * bessel_i(1.0, 1.5);
  CHECK(v > 1.0);
  CHECK(v < std::cosh(1.5));
  CHECK_THROWS_AS((void)bessel_i(0.0, 1000.0), std::overflow_error);
}

TEST_CASE("bessel ODE residuals under central differences") {
  // x^2 y'' + x y' + (x^2 - nu^2) y = 0 for J; minus sign for I
  auto resid = [](auto f, double nu, double x, double h, int sign) {
    double y = f(nu, x);
    double d1 = (f(nu, x + h) - f(nu, x - h)) / (2 * h);
    double d2 = (f(nu, x + h) - 2 * y + f(nu, x - h)) / (h * h);
    return x * x * d2 + x * d1 + (sign * x * x - nu * nu) * y;
  };
  for (double nu : {0.0, 0.618, 1.2}) {
    for (double x : {0.7, 3.3, 18.0}) {
      double r1 = resid([](double n, double t) { return bessel_j(n, t); }, nu, x,
                        1e-3, +1);
      CHECK(std::fabs(r1) < 5e-4 * (1.0 + x * x));
    }
    double r2 = resid([](double n, double t) { return bessel_i(n, t); }, nu, 2.0,
                      1e-3, -1);
    CHECK(std::fabs(r2) < 1e-4 * bessel_i(nu, 2.0) * 10.0);
  }
}

TEST_CASE("macdonald_k_it: references and properties") {
  CHECK(macdonald_k_it(0.0, 1.0) ==
        doctest::Approx(0.421024438240708333336).epsilon(1e-9));
  CHECK(macdonald_k_it(1.0, 1.0) ==
        doctest::Approx(0.289428037025992127635).epsilon(1e-9));
  CHECK(macdonald_k_it(2.0, 0.5) ==
        doctest::Approx(0.0165020189494814426565).epsilon(1e-7));
  // tau -> -tau symmetry
  CHECK(macdonald_k_it(1.5, 0.8) == doctest::Approx(macdonald_k_it(-1.5, 0.8)));
  // decay in y on [1, 4]
  double prev = macdonald_k_it(1.0, 1.0);
  for (double y : {2.0, 3.0, 4.0}) {
    double cur = macdonald_k_it(1.0, y);
    CHECK(std::fabs(cur) < std::fabs(prev));
    prev = cur;
  }
  // uniform bound |K_{i tau}(y)| <= e^{-delta tau / 2} K_0(y cos delta)
  double d = kPi / 4.0;
  CHECK(std::fabs(macdonald_k_it(2.0, 1.0)) <=
        std::exp(-d * 2.0 / 2.0) * macdonald_k_it(0.0, std::cos(d)) + 1e-12);
  CHECK_THROWS_AS((void)macdonald_k_it(1.0, 0.0), std::domain_error);
}

TEST_CASE("legendre: polynomials and closed forms") {
  CHECK(legendre(LegendreKind::P, 0.0, 0.4) == doctest::Approx(1.0));
  CHECK(legendre(LegendreKind::P, 0.0, 7.5) == doctest::Approx(1.0));
  CHECK(legendre(LegendreKind::P, 2.0, 0.5) ==
        doctest::Approx(0.5 * (3 * 0.25 - 1)).epsilon(1e-14));
  CHECK(legendre(LegendreKind::Q, 0.0, 2.0) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-13));
  CHECK(legendre(LegendreKind::Q, 0.0, 0.5) ==
        doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-13));
  CHECK_THROWS_AS((void)legendre(LegendreKind::Q, 0.618, 1.0), std::domain_error);
}

TEST_CASE("legendre: real-degree references") {
  CHECK(legendre(LegendreKind::P, 0.618, 0.3) ==
        doctest::Approx(0.61147993804927647948256).epsilon(1e-10));
  CHECK(legendre(LegendreKind::P, 0.618, -0.7) ==
        doctest::Approx(-0.28558383337075528930617).epsilon(1e-10));
  CHECK(legendre(LegendreKind::Q, 0.618, 0.3) ==
        doctest::Approx(-0.66121230849003464210391).epsilon(1e-10));
  CHECK(legendre(LegendreKind::Q, 0.618, -0.7) ==
        doctest::Approx(-1.24778288053663716201787).epsilon(1e-10));
  CHECK(legendre(LegendreKind::P, 0.618, 3.7) ==
        doctest::Approx(2.07661896645441017693392).epsilon(1e-10));
  CHECK(legendre(LegendreKind::Q, 0.618, 1.5) ==
        doctest::Approx(0.33633709468122743738285).epsilon(1e-10));
  CHECK(legendre(LegendreKind::Q, 1.2, 7.0) ==
        doctest::Approx(0.0038564123746624074637431).epsilon(1e-10));
}

TEST_CASE("gauss_2f1: series, references, Boltz identity") {
  CHECK(gauss_2f1({0.3, 0}, {0.7, 0}, {1.1, 0}, 0.0).real() ==
        doctest::Approx(1.0));
  CHECK(gauss_2f1({0.3, 0}, {0.7, 0}, {1.1, 0}, -2.0).real() ==
        doctest::Approx(0.798281722557234378372378).epsilon(1e-11));
  CHECK(gauss_2f1({0.25, 0}, {1.5, 0}, {2.5, 0}, 0.87).real() ==
        doctest::Approx(1.25337716741960116635711).epsilon(1e-11));
  CHECK(gauss_2f1({0.4, 0}, {0.8, 0}, {1.3, 0}, -99.5).real() ==
        doctest::Approx(0.232566651207526885043758).epsilon(1e-10));
  auto c = gauss_2f1({0.3, 0.4}, {0.7, -0.1}, {1.1, 0.2}, -5.5);
  CHECK(c.real() == doctest::Approx(0.527356873204592694391462).epsilon(1e-10));
  CHECK(c.imag() == doctest::Approx(-0.227494933106128677634027).epsilon(1e-10));
  // Boltz: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1))
  double z = -2.0;
  auto lhs = gauss_2f1({0.3, 0}, {0.7, 0}, {1.1, 0}, z);
  auto rhs = std::pow(1.0 - z, -0.3) *
             gauss_2f1({0.3, 0}, {1.1 - 0.7, 0}, {1.1, 0}, z / (z - 1.0));
  CHECK(std::abs(lhs - rhs) < 1e-10);
  CHECK_THROWS_AS((void)gauss_2f1({1, 0}, {1, 0}, {-2.0, 0}, 0.5),
                  std::domain_error);
}

TEST_CASE("hyp_1f2: references") {
  CHECK(hyp_1f2(0.5, 1.5, 2.0, 0.0) == doctest::Approx(1.0));
  CHECK(hyp_1f2(1.75, 0.75, 1.5, -0.25) ==
        doctest::Approx(0.640691865514725313818125).epsilon(1e-12));
  CHECK(hyp_1f2(0.5, 1.5, 2.0, -25.0) ==
        doctest::Approx(0.204707711557575084172677).epsilon(1e-11));
  CHECK(hyp_1f2(0.5, 1.5, 2.0, -100.0) ==
        doctest::Approx(0.0991545697245277712908947).epsilon(1e-10));
  CHECK_THROWS_AS((void)hyp_1f2(0.5, -1.0, 2.0, 1.0), std::domain_error);
}

TEST_CASE("lommel_u: references and consistency") {
  // U_0(0, z) = J_0(z)
  auto u = lommel_u(0, {0.0, 0.0}, 1.0);
  CHECK(u.real() == doctest::Approx(bessel_j(0.0, 1.0)).epsilon(1e-13));
  CHECK(u.imag() == doctest::Approx(0.0));
  auto u1 = lommel_u(1, {0.5, 0.25}, 2.0);
  CHECK(u1.real() == doctest::Approx(0.143669376915193578977134).epsilon(1e-10));
  CHECK(u1.imag() == doctest::Approx(0.069329146371603311499399).epsilon(1e-10));
  auto u0 = lommel_u(0, {3.0, 0.0}, 1.0);
  CHECK(u0.real() == doctest::Approx(-0.0829870412150903613497865).epsilon(1e-10));
  // truncation self-consistency at 40 vs 80 terms
  AccuracySpec a40;
  a40.max_terms = 40;
  a40.abs_tol = 1e-14;
  AccuracySpec a80 = a40;
  a80.max_terms = 80;
  auto w = Complex{2.0 * std::exp(0.5), 0.0};
  auto v40 = lommel_u(0, w, 2.0, a40);
  auto v80 = lommel_u(0, w, 2.0, a80);
  CHECK(std::abs(v40 - v80) < 1e-12);
  CHECK_THROWS_AS((void)lommel_u(-1, {0, 0}, 1.0), std::domain_error);
}
