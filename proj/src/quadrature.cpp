#include "liewave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace liewave::quadrature {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Gauss-Kronrod 7-15 nodes/weights (QUADPACK qk15).
const double kXgk[8] = {0.991455371120812639206854697526329,
                        0.949107912342758524526189684047851,
                        0.864864423359769072789712788640926,
                        0.741531185599394439863864773280788,
                        0.586087235467691130294144838258730,
                        0.405845151377397166906606412076961,
                        0.207784955007898467600689403773245,
                        0.0};
const double kWgk[8] = {0.022935322010529224963732008058970,
                        0.063092092629978553290700663189204,
                        0.104790010322250183839876322541518,
                        0.140653259715525918745189590510238,
                        0.169004726639267902826583426598550,
                        0.190350578064785409913256402421014,
                        0.204432940075298892414161999234649,
                        0.209482141084727828012999174891714};
const double kWg[4] = {0.129484966168869693270611432679082,
                       0.279705391489276667901467771423780,
                       0.381830050505118944950369775488975,
                       0.417959183673469387755102040816327};

struct PanelEval {
  double integral;     // Kronrod
  double error;        // scaled |K - G|
  long evaluations;
};

PanelEval gk15(const Integrand& f, double a, double b) {
  double hl = 0.5 * (b - a);
  double c = 0.5 * (a + b);
  double fv[15];
  double fc = f(c);
  double resg = kWg[3] * fc;
  double resk = kWgk[7] * fc;
  double resabs = std::fabs(resk);
  for (int j = 0; j < 7; ++j) {
    double x = hl * kXgk[j];
    double f1 = f(c - x), f2 = f(c + x);
    fv[j] = f1;
    fv[14 - j] = f2;
    double fsum = f1 + f2;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
    resk += kWgk[j] * fsum;
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
  }
  double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::fabs(fc - mean);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::fabs(fv[j] - mean) + std::fabs(fv[14 - j] - mean));
  resk *= hl;
  resg *= hl;
  resabs *= std::fabs(hl);
  resasc *= std::fabs(hl);
  double err = std::fabs(resk - resg);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * resabs);
  return {resk, err, 15};
}

struct Segment {
  double err, a, b, val;
  bool operator<(const Segment& o) const { return err < o.err; }
};

}  // namespace

QuadratureConfig tighten(const QuadratureConfig& cfg, double factor) {
  QuadratureConfig t = cfg;
  t.abs_tol *= factor;
  t.rel_tol *= factor;
  return t;
}

IntegralResult integrate_finite(const Integrand& f, double a, double b,
                                const QuadratureConfig& cfg) {
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
    throw std::invalid_argument("quadrature: tolerances must be positive");
  if (cfg.max_subdivisions < 1 || cfg.max_subdivisions > 1000000)
    throw std::invalid_argument("quadrature: bad max_subdivisions");
  IntegralResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  if (!(a < b)) throw std::invalid_argument("integrate_finite: requires a <= b");

  std::priority_queue<Segment> heap;
  PanelEval first = gk15(f, a, b);
  out.evaluations = first.evaluations;
  heap.push({first.error, a, b, first.integral});
  double total = first.integral, toterr = first.error;
  int nseg = 1;
  double eps = std::numeric_limits<double>::epsilon();
  while (toterr > std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total))) {
    if (nseg >= cfg.max_subdivisions) break;
    Segment worst = heap.top();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b ||
        (worst.b - worst.a) < 4.0 * eps * (std::fabs(worst.a) + std::fabs(worst.b)))
      break;  // rounding-limited: cannot refine further
    heap.pop();
    PanelEval l = gk15(f, worst.a, mid);
    PanelEval r = gk15(f, mid, worst.b);
    out.evaluations += l.evaluations + r.evaluations;
    total += l.integral + r.integral - worst.val;
    toterr += l.error + r.error - worst.err;
    heap.push({l.error, worst.a, mid, l.integral});
    heap.push({r.error, mid, worst.b, r.integral});
    ++nseg;
  }
  out.value = total;
  out.error_estimate = toterr;
  out.converged = toterr <= std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(total));
  return out;
}

IntegralResult integrate_semiinf(const Integrand& f, const QuadratureConfig& cfg,
                                 const Integrand& envelope,
                                 bool oscillatory_flagged, double start) {
  if (oscillatory_flagged)
    throw std::invalid_argument(
        "integrate_semiinf: oscillatory integrand; use integrate_oscillatory");
  const Integrand& env = envelope ? envelope : [&](double x) { return std::fabs(f(x)); };
  double T = std::max(1.0, start + 1.0);
  bool found = false;
  for (int i = 0; i < 48; ++i) {
    if (env(T) < cfg.truncation_tail_tol && env(1.29 * T) < cfg.truncation_tail_tol &&
        env(1.63 * T) < cfg.truncation_tail_tol) {
      found = true;
      break;
    }
    T *= 2.0;
  }
  IntegralResult out;
  if (!found) {
    out.converged = false;
    return out;
  }
  out = integrate_finite(f, start, 1.63 * T, cfg);
  out.error_estimate += cfg.truncation_tail_tol * std::max(1.0, T);
  return out;
}

namespace {

double euler_accel(const std::vector<double>& s) {
  std::vector<double> t = s;
  for (std::size_t k = 1; k < s.size(); ++k)
    for (std::size_t i = 0; i + k < s.size(); ++i)
      t[i] = 0.5 * (t[i] + t[i + 1]);
  return t[0];
}

double wynn_epsilon(const std::vector<double>& s) {
  std::size_t n = s.size();
  std::vector<double> e0(n + 1, 0.0), e1 = s;
  double best = s.back();
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> e2(n - k);
    for (std::size_t i = 0; i < n - k; ++i) {
      double d = e1[i + 1] - e1[i];
      // a vanishing difference in an estimate column means the sequence has
      // already converged; recursing would divide by zero and emit garbage
      double scale =
          std::max({std::fabs(e1[i]), std::fabs(e1[i + 1]), 1e-280});
      if (std::fabs(d) <= 1e-15 * scale) return k % 2 == 1 ? e1[i + 1] : best;
      e2[i] = e0[i + 1] + 1.0 / d;
    }
    if (k % 2 == 0 && !e2.empty()) best = e2.back();
    e0 = e1;
    e1 = e2;
  }
  return best;
}

}  // namespace

IntegralResult integrate_oscillatory(const Integrand& f,
                                     const std::function<double(int)>& zero,
                                     const QuadratureConfig& cfg) {
  QuadratureConfig pcfg = tighten(cfg, 0.1);
  IntegralResult out;
  std::vector<double> partial;
  double sum = 0.0, panel_err = 0.0;
  double prev_est = std::numeric_limits<double>::quiet_NaN();
  double lo = 0.0;
  const int max_panels = 400;
  int stable = 0;
  for (int k = 0; k < max_panels; ++k) {
    double hi = zero(k);
    if (!(hi > lo)) continue;  // skip spurious/unsorted boundaries near 0
    IntegralResult p = integrate_finite(f, lo, hi, pcfg);
    out.evaluations += p.evaluations;
    panel_err += p.error_estimate;
    sum += p.value;
    partial.push_back(sum);
    lo = hi;
    if (partial.size() < 4) continue;
    // accelerate over a window of trailing partial sums (the early panels are
    // typically outside the asymptotic regime)
    // epsilon extrapolation can exploit a longer history (it models several
    // oscillatory modes at once); the averaging triangle cannot
    std::size_t win = std::min<std::size_t>(
        partial.size(),
        cfg.oscillatory_accel == QuadratureConfig::Accel::shanks ? 40 : 16);
    std::vector<double> tail(partial.end() - win, partial.end());
    double est;
    switch (cfg.oscillatory_accel) {
      case QuadratureConfig::Accel::euler:
        est = euler_accel(tail);
        break;
      case QuadratureConfig::Accel::shanks:
        est = wynn_epsilon(tail);
        break;
      default:
        est = sum;
    }
    if (!std::isfinite(est)) {
      out.value = sum;
      out.converged = false;
      return out;  // acceleration divergence
    }
    double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::fabs(est));
    if (std::isfinite(prev_est) && std::fabs(est - prev_est) < 0.5 * tol &&
        (cfg.oscillatory_accel != QuadratureConfig::Accel::none ||
         std::fabs(p.value) < tol)) {
      if (++stable >= 2) {
        out.value = est;
        out.error_estimate = std::fabs(est - prev_est) + panel_err;
        out.converged = true;
        return out;
      }
    } else {
      stable = 0;
    }
    prev_est = est;
  }
  out.value = std::isfinite(prev_est) ? prev_est : sum;
  out.error_estimate = panel_err;
  out.converged = false;
  return out;
}

IntegralResult integrate_oscillatory(const Integrand& f,
                                     const std::vector<double>& zeros,
                                     const QuadratureConfig& cfg) {
  return integrate_oscillatory(
      f,
      [&zeros](int k) -> double {
        if (k < (int)zeros.size()) return zeros[k];
        // extrapolate with the last spacing so long tails stay available
        if (zeros.size() >= 2) {
          double d = zeros.back() - zeros[zeros.size() - 2];
          return zeros.back() + d * (k - (int)zeros.size() + 1);
        }
        return zeros.empty() ? (double)(k + 1) : zeros[0] * (k + 1);
      },
      cfg);
}

IntegralResult integrate_iterated(
    const std::function<double(double, const QuadratureConfig&)>& inner,
    double a, double b, const QuadratureConfig& cfg) {
  QuadratureConfig icfg = tighten(cfg, 0.1);
  return integrate_finite([&](double y) { return inner(y, icfg); }, a, b, cfg);
}

IntegralResult integrate_iterated_semiinf(
    const std::function<double(double, const QuadratureConfig&)>& inner,
    const QuadratureConfig& cfg, const Integrand& envelope) {
  QuadratureConfig icfg = tighten(cfg, 0.1);
  return integrate_semiinf([&](double y) { return inner(y, icfg); }, cfg,
                           envelope);
}

double mcmahon_zero(double nu, int k) {
  if (k < 1) throw std::invalid_argument("mcmahon_zero: k >= 1");
  double beta = (k + 0.5 * nu - 0.25) * kPi;
  double mu = 4.0 * nu * nu;
  return beta - (mu - 1.0) / (8.0 * beta);
}

}  // namespace liewave::quadrature
