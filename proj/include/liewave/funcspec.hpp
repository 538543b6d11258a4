#pragma once

// Initial-datum descriptions: named presets, power series, or sampled grids.
// A FunctionSpec is a callable plus optional analytic metadata (power-series
// coefficients) that the series-based solver routes consume.

#include <functional>
#include <string>
#include <vector>

namespace liewave {

struct FunctionSpec {
  std::string name = "custom";
  std::function<double(double)> fn;
  // power-series coefficients c_n with f(y) = sum c_n y^n, when known
  std::vector<double> series;
  bool has_series = false;

  double operator()(double x) const { return fn(x); }
  explicit operator bool() const { return static_cast<bool>(fn); }

  // f^(n)(0) = n! c_n for the first `n` orders (requires has_series)
  std::vector<double> derivatives_at_zero(int n) const;

  static FunctionSpec zero();
  static FunctionSpec gaussian(double mu, double sigma);
  // (1/4) y^2 1F2(1/2; 3/2, 2; -y^2/4) - y/2
  static FunctionSpec example1_g();
  static FunctionSpec y_j0();  // y J_0(y)
  static FunctionSpec exp_decay(double a);
  static FunctionSpec from_series(std::vector<double> coeffs);
  static FunctionSpec from_samples(std::vector<double> xs, std::vector<double> ys,
                                   bool cubic);
  static FunctionSpec from_callable(std::string name,
                                    std::function<double(double)> f);

  // CLI syntax: "zero" | "gaussian:mu=0,sigma=1" | "example1_g" | "yJ0" |
  // "exp_decay:a=1" | "series:[c0,c1,...]" | "csv:path[:cubic]"
  static FunctionSpec parse(const std::string& text);
};

}  // namespace liewave
