#include "liewave/funcspec.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "liewave/specfun.hpp"

namespace liewave {

std::vector<double> FunctionSpec::derivatives_at_zero(int n) const {
  if (!has_series)
    throw std::logic_error("FunctionSpec: no power series available for " + name);
  std::vector<double> d(n, 0.0);
  double fact = 1.0;
  for (int k = 0; k < n; ++k) {
    if (k > 0) fact *= k;
    d[k] = (k < (int)series.size() ? series[k] : 0.0) * fact;
  }
  return d;
}

FunctionSpec FunctionSpec::zero() {
  FunctionSpec s;
  s.name = "zero";
  s.fn = [](double) { return 0.0; };
  s.series = {};
  s.has_series = true;
  return s;
}

FunctionSpec FunctionSpec::gaussian(double mu, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian: sigma > 0");
  FunctionSpec s;
  s.name = "gaussian";
  s.fn = [=](double x) {
    double z = (x - mu) / sigma;
    return std::exp(-0.5 * z * z);
  };
  return s;
}

FunctionSpec FunctionSpec::example1_g() {
  FunctionSpec s;
  s.name = "example1_g";
  s.fn = [](double y) {
    return 0.25 * y * y * specfun::hyp_1f2(0.5, 1.5, 2.0, -0.25 * y * y) -
           0.5 * y;
  };
  // expand termwise: (1/4) y^2 sum_k (1/2)_k (-1/4)^k y^{2k} / ((3/2)_k (2)_k k!)
  std::vector<double> c(40, 0.0);
  double poch_a = 1.0, poch_b1 = 1.0, poch_b2 = 1.0, fact = 1.0, pw = 1.0;
  for (int k = 0; 2 * k + 2 < (int)c.size(); ++k) {
    if (k > 0) {
      poch_a *= 0.5 + (k - 1);
      poch_b1 *= 1.5 + (k - 1);
      poch_b2 *= 2.0 + (k - 1);
      fact *= k;
      pw *= -0.25;
    }
    c[2 * k + 2] = 0.25 * poch_a * pw / (poch_b1 * poch_b2 * fact);
  }
  c[1] = -0.5;
  s.series = c;
  s.has_series = true;
  return s;
}

FunctionSpec FunctionSpec::y_j0() {
  FunctionSpec s;
  s.name = "yJ0";
  s.fn = [](double y) { return y * specfun::bessel_j(0.0, y); };
  std::vector<double> c(42, 0.0);
  double term = 1.0;  // (-1)^k / (4^k (k!)^2)
  for (int k = 0; 2 * k + 1 < (int)c.size(); ++k) {
    if (k > 0) term *= -1.0 / (4.0 * k * k);
    c[2 * k + 1] = term;
  }
  s.series = c;
  s.has_series = true;
  return s;
}

FunctionSpec FunctionSpec::exp_decay(double a) {
  FunctionSpec s;
  s.name = "exp_decay";
  s.fn = [=](double x) { return std::exp(-a * x); };
  std::vector<double> c(60, 0.0);
  double t = 1.0;
  for (int k = 0; k < (int)c.size(); ++k) {
    if (k > 0) t *= -a / k;
    c[k] = t;
  }
  s.series = c;
  s.has_series = true;
  return s;
}

FunctionSpec FunctionSpec::from_series(std::vector<double> coeffs) {
  FunctionSpec s;
  s.name = "series";
  auto c = coeffs;
  s.fn = [c](double x) {
    double sum = 0.0, pw = 1.0;
    for (double ck : c) {
      sum += ck * pw;
      pw *= x;
    }
    return sum;
  };
  s.series = std::move(coeffs);
  s.has_series = true;
  return s;
}

FunctionSpec FunctionSpec::from_samples(std::vector<double> xs,
                                        std::vector<double> ys, bool cubic) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::invalid_argument("from_samples: need >= 2 matching samples");
  if (!std::is_sorted(xs.begin(), xs.end()))
    throw std::invalid_argument("from_samples: abscissae must be ascending");
  FunctionSpec s;
  s.name = cubic ? "sampled_cubic" : "sampled_linear";
  if (!cubic) {
    s.fn = [xs, ys](double x) {
      if (x <= xs.front()) return ys.front();
      if (x >= xs.back()) return ys.back();
      auto it = std::upper_bound(xs.begin(), xs.end(), x);
      std::size_t i = it - xs.begin() - 1;
      double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
      return (1.0 - t) * ys[i] + t * ys[i + 1];
    };
    return s;
  }
  // natural cubic spline second derivatives
  std::size_t n = xs.size();
  std::vector<double> m(n, 0.0), diag(n, 0.0), rhs(n, 0.0), sub(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double h0 = xs[i] - xs[i - 1], h1 = xs[i + 1] - xs[i];
    diag[i] = 2.0 * (h0 + h1);
    rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
    sub[i] = h0;
  }
  for (std::size_t i = 2; i + 1 < n; ++i) {
    double h = xs[i] - xs[i - 1];
    double w = h / diag[i - 1];
    diag[i] -= w * h;
    rhs[i] -= w * rhs[i - 1];
  }
  for (std::size_t i = n - 2; i >= 1; --i) {
    double h1 = xs[i + 1] - xs[i];
    m[i] = (rhs[i] - h1 * (i + 2 < n ? m[i + 1] : 0.0)) / diag[i];
    if (i == 1) break;
  }
  s.fn = [xs, ys, m](double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    std::size_t i = it - xs.begin() - 1;
    double h = xs[i + 1] - xs[i];
    double a = (xs[i + 1] - x) / h, b = (x - xs[i]) / h;
    return a * ys[i] + b * ys[i + 1] +
           ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
  };
  return s;
}

FunctionSpec FunctionSpec::from_callable(std::string name,
                                         std::function<double(double)> f) {
  FunctionSpec s;
  s.name = std::move(name);
  s.fn = std::move(f);
  return s;
}

namespace {

std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("FunctionSpec: expected key=value in " + s);
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

}  // namespace

FunctionSpec FunctionSpec::parse(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "zero") return zero();
  if (head == "example1_g") return example1_g();
  if (head == "yJ0") return y_j0();
  if (head == "gaussian") {
    double mu = 0.0, sigma = 1.0;
    for (auto& [k, v] : parse_kv(rest)) {
      if (k == "mu") mu = std::stod(v);
      else if (k == "sigma") sigma = std::stod(v);
      else throw std::invalid_argument("gaussian: unknown key " + k);
    }
    return gaussian(mu, sigma);
  }
  if (head == "exp_decay") {
    double a = 1.0;
    for (auto& [k, v] : parse_kv(rest)) {
      if (k == "a") a = std::stod(v);
      else throw std::invalid_argument("exp_decay: unknown key " + k);
    }
    return exp_decay(a);
  }
  if (head == "series") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']')
      throw std::invalid_argument("series: expected series:[c0,c1,...]");
    std::vector<double> c;
    std::stringstream ss(rest.substr(1, rest.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) c.push_back(std::stod(item));
    return from_series(std::move(c));
  }
  if (head == "csv") {
    bool cubic = false;
    std::string path = rest;
    auto c2 = rest.rfind(':');
    if (c2 != std::string::npos && rest.substr(c2 + 1) == "cubic") {
      cubic = true;
      path = rest.substr(0, c2);
    } else if (c2 != std::string::npos && rest.substr(c2 + 1) == "linear") {
      path = rest.substr(0, c2);
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("csv: cannot open " + path);
    std::vector<double> xs, ys;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ls(line);
      std::string a, b;
      if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',')) continue;
      try {
        double x = std::stod(a), y = std::stod(b);
        xs.push_back(x);
        ys.push_back(y);
      } catch (const std::exception&) {
        // header row
      }
    }
    return from_samples(std::move(xs), std::move(ys), cubic);
  }
  throw std::invalid_argument("FunctionSpec: unknown preset " + head);
}

}  // namespace liewave
