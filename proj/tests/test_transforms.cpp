#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "liewave/transforms.hpp"

using namespace liewave;
using namespace liewave::transforms;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("hankel: half-integer order reduces to Fourier sine") {
  auto f = FunctionSpec::exp_decay(1.0);
  for (double lam : {0.5, 1.0, 2.0}) {
    double expect = std::sqrt(2.0 / kPi) * lam / (1.0 + lam * lam);
    CHECK(hankel(0.5, f, lam) == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("hankel: order-0 self-reciprocal function") {
  auto f = FunctionSpec::from_callable(
      "selfrec", [](double y) { return std::sqrt(y) * std::exp(-0.5 * y * y); });
  for (double lam : {0.7, 1.3}) {
    CHECK(hankel(0.0, f, lam) ==
          doctest::Approx(std::sqrt(lam) * std::exp(-0.5 * lam * lam))
              .epsilon(1e-7));
  }
}

TEST_CASE("hankel: double application returns the input") {
  auto f = FunctionSpec::from_callable("bump", [](double y) {
    return y * std::exp(-y * y);
  });
  double nu = 0.618, x = 1.1;
  // sample the first transform on a grid, interpolate, transform back
  std::vector<double> lams, vals;
  for (double l = 0.05; l < 12.0; l += 0.05) {
    lams.push_back(l);
    vals.push_back(hankel(nu, f, l));
  }
  auto g = FunctionSpec::from_samples(lams, vals, true);
  CHECK(hankel(nu, g, x) == doctest::Approx(f(x)).epsilon(2e-5));
}

TEST_CASE("laplace: table entries") {
  auto one = FunctionSpec::from_callable("one", [](double) { return 1.0; });
  CHECK(laplace(one, 2.0) == doctest::Approx(0.5).epsilon(1e-9));
  double lam = 1.0, s = 1.0;
  auto f = FunctionSpec::from_callable("j0shift", [=](double y) {
    return specfun::bessel_j(0.0, std::sqrt(y * y + 2.0 * lam * y));
  });
  double r2 = std::sqrt(s * s + 1.0);
  CHECK(laplace(f, s) ==
        doctest::Approx(std::exp(-lam * (r2 - s)) / r2).epsilon(1e-8));
  auto g = FunctionSpec::from_callable("j1shift", [=](double y) {
    double a = std::sqrt(y * y + 2.0 * lam * y);
    return a == 0.0 ? 0.5 : specfun::bessel_j(1.0, a) / a;
  });
  CHECK(laplace(g, s) ==
        doctest::Approx((1.0 - std::exp(-lam * (r2 - s))) / lam).epsilon(1e-8));
}

TEST_CASE("inv_laplace_rational: simple pole") {
  auto r = inv_laplace_rational({1.0}, {1.0, 1.0});  // 1/(1+s)
  CHECK(r.polynomial_part.empty());
  REQUIRE(r.pole_terms.size() == 1);
  CHECK(r.eval(0.7) == doctest::Approx(std::exp(-0.7)).epsilon(1e-10));
  CHECK_FALSE(r.has_growing());
}

TEST_CASE("inv_laplace_rational: improper rational produces a delta atom") {
  // (s^2+1)/(1-s^2) = -1 + e^{-lam} - e^{lam} after inversion
  auto r = inv_laplace_rational_factored({1.0, 0.0, 1.0},
                                         {{{1.0, 0.0}, 1}, {{-1.0, 0.0}, 1}},
                                         -1.0);
  REQUIRE(r.polynomial_part.size() == 1);
  CHECK(r.polynomial_part[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(r.has_growing());
  for (double lam : {0.3, 1.1}) {
    CHECK(r.eval(lam) ==
          doctest::Approx(std::exp(-lam) - std::exp(lam)).epsilon(1e-10));
  }
}

TEST_CASE("inv_laplace_rational: repeated real root") {
  auto r = inv_laplace_rational_factored({1.0}, {{{-1.0, 0.0}, 2}});
  CHECK(r.eval(0.9) == doctest::Approx(0.9 * std::exp(-0.9)).epsilon(1e-10));
}

TEST_CASE("inv_laplace_rational: complex pair via coefficient form") {
  auto r = inv_laplace_rational({1.0}, {1.0, 0.0, 1.0});  // 1/(s^2+1)
  for (double lam : {0.5, 1.0, 2.5}) {
    CHECK(r.eval(lam) == doctest::Approx(std::sin(lam)).epsilon(1e-8));
  }
}

TEST_CASE("inv_laplace_rational: realization transforms back to N/D") {
  std::vector<double> num{2.0, 1.0}, den{2.0, 3.0, 1.0};  // (s+2)(s+1)
  auto r = inv_laplace_rational(num, den);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.5, 10.0);
  for (int i = 0; i < 10; ++i) {
    double s = dist(rng);
    double expect = (num[0] + num[1] * s) / (den[0] + den[1] * s + den[2] * s * s);
    CHECK(r.laplace_at({s, 0.0}).real() == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("inv_laplace_numeric: table pairs") {
  CHECK(inv_laplace_numeric([](Complex s) { return 1.0 / s; }, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(inv_laplace_numeric([](Complex s) { return 1.0 / (s * s + 1.0); }, 1.0) ==
        doctest::Approx(std::sin(1.0)).epsilon(1e-9));
  // delayed step: accurate past the jump; at the jump itself the contour sum
  // is bounded but not meaningful, so only finiteness is required there
  auto step = [](Complex s) { return std::exp(-s) / s; };
  CHECK(inv_laplace_numeric(step, 2.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::isfinite(inv_laplace_numeric(step, 1.0)));
}

TEST_CASE("mellin_line: gamma values and conjugate parity") {
  auto f = FunctionSpec::exp_decay(1.0);
  CHECK(mellin_line(f, 0.0).real() ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-8));
  auto g = FunctionSpec::from_callable("cauchy", [](double x) {
    return 1.0 / (1.0 + x);
  });
  // Mellin of 1/(1+x) at s: pi / sin(pi s); on the line at tau = 1 this is
  // pi / cosh(pi), real
  auto v = mellin_line(g, 1.0);
  CHECK(v.real() == doctest::Approx(kPi / std::cosh(kPi)).epsilon(1e-7));
  CHECK(std::fabs(v.imag()) < 1e-7);
  auto a = mellin_line(f, 0.8);
  auto b = mellin_line(f, -0.8);
  CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-9));
  CHECK(a.imag() == doctest::Approx(-b.imag()).epsilon(1e-9));
}

TEST_CASE("inv_mellin_line: gamma sample reproduces e^{-x}") {
  auto h = [](double tau) { return specfun::gamma_cx({0.5, tau}); };
  CHECK(inv_mellin_line(h, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  CHECK(inv_mellin_line(h, 0.4) == doctest::Approx(std::exp(-0.4)).epsilon(1e-6));
}

TEST_CASE("inv_mellin_line: round trip through mellin_line") {
  auto f = FunctionSpec::exp_decay(1.0);
  auto h = [&](double tau) { return mellin_line(f, tau); };
  CHECK(inv_mellin_line(h, 0.9) == doctest::Approx(std::exp(-0.9)).epsilon(1e-6));
}

TEST_CASE("inv_mellin_line: sampled even input gives real trapezoid value") {
  MellinSample s;
  for (double tau = 0.0; tau <= 30.0; tau += 0.05) {
    s.tau_nodes.push_back(tau);
    Complex g = specfun::gamma_cx({0.5, tau});
    s.values.push_back({std::abs(g) * std::abs(g), 0.0});  // even, real
  }
  s.symmetry = MellinSample::Symmetry::even_F;
  // (1/2 pi) int |Gamma(1/2+i tau)|^2 dtau over R = 1/2 at x = 1
  CHECK(inv_mellin_line(s, 1.0) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("mellin-Parseval on a synthetic pair") {
  // int_0^inf e^{-x} e^{-x} dx = 1/2 equals the critical-line pairing of the
  // two Gamma transforms
  double acc = -0.5 * std::norm(specfun::gamma_cx({0.5, 0.0})), dt = 0.02;
  for (double tau = 0.0; tau < 30.0; tau += dt) {
    auto g1 = specfun::gamma_cx({0.5, tau});
    acc += std::norm(g1);  // f*(1/2+i tau) g*(1/2-i tau), g = f
  }
  double rhs = acc * dt / kPi;  // symmetric half-line doubling / 2 pi
  CHECK(rhs == doctest::Approx(0.5).epsilon(1e-4));
}

TEST_CASE("fourier transforms: table pairs and round trip") {
  auto f = FunctionSpec::exp_decay(1.0);
  CHECK(fourier_cos(f, 1.0) ==
        doctest::Approx(std::sqrt(2.0 / kPi) * 0.5).epsilon(1e-8));
  CHECK(fourier_sin(f, 1.0) ==
        doctest::Approx(std::sqrt(2.0 / kPi) * 0.5).epsilon(1e-8));
  auto gss = FunctionSpec::from_callable("halfgauss", [](double y) {
    return std::exp(-0.5 * y * y);
  });
  // Gaussian is self-reciprocal under F_c
  CHECK(fourier_cos(gss, 0.8) == doctest::Approx(std::exp(-0.5 * 0.64)).epsilon(1e-8));
}

TEST_CASE("kl_forward: closed-form pair and evenness") {
  auto g = FunctionSpec::from_callable("coshdecay", [](double y) {
    return y * std::exp(-y * std::cosh(1.0));
  });
  CHECK(kl_forward(g, 1.0) ==
        doctest::Approx(0.1947790370110507456547).epsilon(1e-7));
  CHECK(kl_forward(g, 1.3) == doctest::Approx(kl_forward(g, -1.3)));
  CHECK(kl_forward(FunctionSpec::zero(), 1.0) == doctest::Approx(0.0));
}

TEST_CASE("kl_inverse: zero and round trip") {
  CHECK(kl_inverse([](double) { return 0.0; }, 1.0) == doctest::Approx(0.0));
  auto g = FunctionSpec::from_callable("ye2y", [](double y) {
    return y * std::exp(-2.0 * y);
  });
  // the inner forward transform needs to be close to machine accuracy (its
  // absolute error is amplified by sinh(pi tau) in the inversion weight) but
  // must not chase tolerances below its own noise floor
  quadrature::QuadratureConfig cfg_h;
  cfg_h.abs_tol = 5e-12;
  cfg_h.rel_tol = 1e-9;
  cfg_h.max_subdivisions = 400;
  quadrature::QuadratureConfig cfg_out;
  cfg_out.abs_tol = 1e-8;
  cfg_out.rel_tol = 1e-6;
  cfg_out.max_subdivisions = 100;
  double x = 0.7;
  double rec =
      kl_inverse([&](double tau) { return kl_forward(g, tau, cfg_h); }, x,
                 cfg_out) *
      x;
  CHECK(std::fabs(rec - g(x)) < 1e-5);
}

TEST_CASE("spectral density: validation and atom bookkeeping") {
  SpectralDensity d;
  d.nodes = {0.5, 1.0, 2.0};
  d.values = {1.0, 2.0, 0.5};
  d.validate();
  CHECK(d.eval(1.5) == doctest::Approx(1.25));
  CHECK(d.eval(3.0) == doctest::Approx(0.0));
  d.nodes = {1.0, 0.5};
  d.values = {1.0, 2.0};
  CHECK_THROWS_AS(d.validate(), std::invalid_argument);
}

TEST_CASE("mellin sample symmetry validation") {
  MellinSample s;
  s.tau_nodes = {0.0, 1.0};
  s.values = {{1.0, 0.0}, {0.5, 0.0}};
  s.symmetry = MellinSample::Symmetry::even_F;
  CHECK_NOTHROW(s.validate());
  s.values[1] = {0.5, 0.3};
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}
