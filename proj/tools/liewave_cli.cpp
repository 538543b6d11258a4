// Command-line front end: classify potentials, run the Cauchy solvers,
// verify solution fields against the discrete wave operator, and apply the
// integral transforms to tabulated or preset data.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liewave/funcspec.hpp"
#include "liewave/oracle.hpp"
#include "liewave/quadrature.hpp"
#include "liewave/solver_exp.hpp"
#include "liewave/solver_invsq.hpp"
#include "liewave/solver_sech.hpp"
#include "liewave/specfun.hpp"
#include "liewave/symmetry.hpp"
#include "liewave/transforms.hpp"

namespace {

using nlohmann::json;
using namespace liewave;

constexpr const char* kVersion = "0.1.0";

// shortest decimal that round-trips to the same double
std::string fmt_double(double v) {
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

int thread_cap() {
  const char* e = std::getenv("LIEWAVE_THREADS");
  if (!e) return 0;  // unlimited
  int n = std::atoi(e);
  return n > 0 ? n : 1;
}

// potential strings: "exp:A=..,B=..,omega=.." | "invsq:A=.." |
// "trig:A=..,B=..,omega=.."
symmetry::PotentialSpec parse_potential(const std::string& text) {
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::map<std::string, double> kv;
  if (colon != std::string::npos) {
    std::stringstream ss(text.substr(colon + 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("potential: expected key=value, got " + item);
      size_t used = 0;
      double v = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1)
        throw std::invalid_argument("potential: bad number in " + item);
      kv[item.substr(0, eq)] = v;
    }
  }
  auto get = [&](const char* k, double dflt, bool required) {
    auto it = kv.find(k);
    if (it != kv.end()) return it->second;
    if (required)
      throw std::invalid_argument(std::string("potential: missing ") + k);
    return dflt;
  };
  if (head == "exp")
    return symmetry::PotentialSpec::exp_family(get("A", 0, true),
                                               get("B", 0, true),
                                               get("omega", 1, false));
  if (head == "trig")
    return symmetry::PotentialSpec::trig_family(get("A", 0, true),
                                                get("B", 0, true),
                                                get("omega", 1, false));
  if (head == "invsq")
    return symmetry::PotentialSpec::inverse_square(get("A", 0, true));
  throw std::invalid_argument("potential: unknown family " + head);
}

oracle::Grid2D parse_grid(const std::string& text) {
  std::stringstream ss(text);
  std::vector<double> v;
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
  if (v.size() != 6)
    throw std::invalid_argument("grid: expected x0,x1,nx,t0,t1,nt");
  return oracle::Grid2D::make(v[0], v[1], int(v[2]), v[3], v[4], int(v[5]));
}

struct Manifest {
  std::string command;
  json parameters = json::object();
  json outputs = json::array();
  double abs_tol = 0, rel_tol = 0;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();

  void write(const std::string& path) const {
    json m;
    m["command"] = command;
    m["parameters"] = parameters;
    m["tolerances"] = {{"abs_tol", abs_tol}, {"rel_tol", rel_tol}};
    m["versions"] = {{"liewave", kVersion}, {"manifest", 1}};
    m["timing_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - start)
            .count();
    m["outputs"] = outputs;
    m["threads"] = thread_cap();
    std::ofstream os(path);
    os << m.dump(2) << "\n";
  }
};

// flags win over config-file values; a manifest's "parameters" block is
// accepted directly so a run can be replayed from its manifest
void apply_config(CLI::App* cmd, const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("config: cannot open " + path);
  json j = json::parse(is);
  if (j.contains("parameters")) j = j["parameters"];
  for (auto& [key, val] : j.items()) {
    CLI::Option* opt = cmd->get_option_no_throw("--" + key);
    if (!opt || !opt->empty()) continue;  // unknown key or flag already set
    opt->add_result(val.is_string() ? val.get<std::string>() : val.dump());
  }
}

void write_field_csv(const std::string& path, const oracle::SolutionField& u) {
  std::ofstream os(path);
  os << "x,t,u\n";
  for (int j = 0; j < u.grid.nt; ++j)
    for (int i = 0; i < u.grid.nx; ++i)
      os << fmt_double(u.grid.x(i)) << "," << fmt_double(u.grid.t(j)) << ","
         << fmt_double(u.at(i, j)) << "\n";
}

oracle::SolutionField read_field_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("verify: cannot open " + path);
  std::string line;
  std::getline(is, line);
  if (line != "x,t,u")
    throw std::invalid_argument("verify: expected header x,t,u");
  std::vector<double> xs, ts, us;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    double x, t, u;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &t, &u) != 3)
      throw std::invalid_argument("verify: bad row: " + line);
    xs.push_back(x);
    ts.push_back(t);
    us.push_back(u);
  }
  if (xs.size() < 4) throw std::invalid_argument("verify: too few rows");
  // infer the row-major grid: nx = index where x wraps around
  int nx = 1;
  while (nx < (int)xs.size() && xs[nx] > xs[nx - 1]) ++nx;
  if (nx < 2 || xs.size() % nx != 0)
    throw std::invalid_argument("verify: rows do not form a grid");
  int nt = int(xs.size()) / nx;
  oracle::SolutionField f;
  f.grid.x0 = xs[0];
  f.grid.dx = xs[1] - xs[0];
  f.grid.nx = nx;
  f.grid.t0 = ts[0];
  f.grid.dt = nt > 1 ? ts[nx] - ts[0] : 1.0;
  f.grid.nt = nt;
  f.values = us;
  f.method = "csv";
  f.validate();
  return f;
}

void write_density_csv(const std::string& path,
                       const std::vector<double>& lam,
                       const std::vector<double>& phi,
                       const std::vector<transforms::DeltaAtom>& atoms,
                       Manifest& man) {
  std::ofstream os(path);
  os << "lambda,phi\n";
  for (size_t i = 0; i < lam.size(); ++i)
    os << fmt_double(lam[i]) << "," << fmt_double(phi[i]) << "\n";
  man.outputs.push_back(path);
  if (!atoms.empty()) {
    json ja = json::array();
    for (const auto& a : atoms)
      ja.push_back({{"location", a.location}, {"weight", a.weight}});
    std::ofstream as(path + ".atoms.json");
    as << ja.dump(2) << "\n";
    man.outputs.push_back(path + ".atoms.json");
  }
}

int cmd_classify(const std::string& pot_text) {
  symmetry::PotentialSpec p = parse_potential(pot_text);
  using Family = symmetry::PotentialSpec::Family;
  switch (p.family) {
    case Family::ExpFamily: {
      std::printf("family: exp\n");
      std::printf("f(x) = 1/(%s e^{%s x} + %s e^{-%s x})^2\n",
                  fmt_double(p.A).c_str(), fmt_double(p.omega).c_str(),
                  fmt_double(p.B).c_str(), fmt_double(p.omega).c_str());
      std::printf("f(0) = %s\n",
                  fmt_double(symmetry::potential_value(p, 0.0)).c_str());
      std::printf("symmetry basis:\n");
      std::printf(
          "  v1 = e^{wt}(A e^{wx} + B e^{-wx}) dx + e^{wt}(A e^{wx} - B "
          "e^{-wx}) dt\n");
      std::printf(
          "  v2 = e^{-wt}(A e^{wx} + B e^{-wx}) dx - e^{-wt}(A e^{wx} - B "
          "e^{-wx}) dt\n");
      std::printf("  v3 = dt,  v4 = u du  (plus the additive ideal b du)\n");
      break;
    }
    case Family::TrigFamily:
      std::printf("family: trig\n");
      std::printf("f(x) = 1/(%s cos(%s x) + %s sin(%s x))^2\n",
                  fmt_double(p.A).c_str(), fmt_double(p.omega).c_str(),
                  fmt_double(p.B).c_str(), fmt_double(p.omega).c_str());
      std::printf("f(0) = %s\n",
                  fmt_double(symmetry::potential_value(p, 0.0)).c_str());
      std::printf("symmetry basis: trigonometric analogue of the exp family\n");
      break;
    case Family::InverseSquare: {
      std::printf("family: invsq\n");
      std::printf("f(x) = -%s/x^2 on x > 0\n", fmt_double(p.A).c_str());
      std::printf("nu = %s\n",
                  fmt_double(0.5 * std::sqrt(4.0 * p.A + 1.0)).c_str());
      std::printf("symmetry basis: scaling x dx + t dt and time translation\n");
      break;
    }
  }
  return 0;
}

int cmd_solve(const std::string& family, const std::string& preset,
              std::string f_text, std::string g_text,
              const std::string& grid_text, const std::string& route_text,
              double A, const std::string& out, Manifest& man) {
  quadrature::QuadratureConfig cfg;
  man.abs_tol = cfg.abs_tol;
  man.rel_tol = cfg.rel_tol;
  oracle::Grid2D grid = parse_grid(grid_text);
  oracle::SolutionField u;
  std::vector<transforms::DeltaAtom> atoms;
  if (preset == "example1") {
    f_text = "zero";
    g_text = "example1_g";
  } else if (!preset.empty()) {
    throw std::invalid_argument("solve: unknown preset " + preset);
  }
  FunctionSpec f = FunctionSpec::parse(f_text);
  FunctionSpec g = FunctionSpec::parse(g_text);
  if (family == "exp") {
    solver_exp::ExpProblem prob;
    prob.f = f;
    prob.g = g;
    prob.coordinate = solver_exp::Coordinate::y_direct;
    auto route = route_text == "series" ? solver_exp::Route::series
                                        : solver_exp::Route::integral;
    if (!route_text.empty() && route_text != "series" &&
        route_text != "integral")
      throw std::invalid_argument("solve: route must be integral|series");
    u = solver_exp::solve_exp(prob, grid, route, cfg);
    if (preset == "example1") atoms = solver_exp::example1_psi().atoms;
  } else if (family == "invsq") {
    solver_invsq::InvsqProblem prob;
    prob.A = A;
    prob.f = f;
    prob.g = g;
    u = solver_invsq::solve_invsq(prob, grid, cfg);
  } else if (family == "sech") {
    u = solver_sech::solve_cauchy_sech(f, grid, cfg);
  } else {
    throw std::invalid_argument("solve: family must be exp|invsq|sech");
  }
  write_field_csv(out, u);
  man.outputs.push_back(out);
  if (!atoms.empty()) {
    json ja = json::array();
    for (const auto& a : atoms)
      ja.push_back({{"location", a.location}, {"weight", a.weight}});
    std::ofstream as(out + ".atoms.json");
    as << ja.dump(2) << "\n";
    man.outputs.push_back(out + ".atoms.json");
  }
  return 0;
}

int cmd_verify(const std::string& in, const std::string& pot_text, double tol) {
  oracle::SolutionField u = read_field_csv(in);
  symmetry::PotentialSpec pot = parse_potential(pot_text);
  oracle::ResidualNorms r = oracle::pde_residual(u, pot);
  double peak = 0.0;
  for (double v : u.values) peak = std::max(peak, std::fabs(v));
  double rel = peak > 0.0 ? r.max_norm / peak : r.max_norm;
  std::printf("interior stencil points: %d\n", r.count);
  std::printf("residual max norm: %s\n", fmt_double(r.max_norm).c_str());
  std::printf("residual l2 norm:  %s\n", fmt_double(r.l2_norm).c_str());
  std::printf("field peak:        %s\n", fmt_double(peak).c_str());
  std::printf("relative residual: %s (tolerance %s)\n", fmt_double(rel).c_str(),
              fmt_double(tol).c_str());
  if (r.count == 0) {
    std::printf("verdict: FAIL (no interior points to check)\n");
    return 1;
  }
  bool ok = rel <= tol;
  std::printf("verdict: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_transform(const std::string& op, const std::string& f_text, double nu,
                  const std::string& points_text, const std::string& out,
                  Manifest& man) {
  quadrature::QuadratureConfig cfg;
  man.abs_tol = cfg.abs_tol;
  man.rel_tol = cfg.rel_tol;
  FunctionSpec f = FunctionSpec::parse(f_text);
  std::stringstream ss(points_text);
  std::vector<double> spec;
  std::string item;
  while (std::getline(ss, item, ',')) spec.push_back(std::stod(item));
  if (spec.size() != 3 || spec[2] < 1 || spec[0] <= 0 || spec[1] < spec[0])
    throw std::invalid_argument("transform: points must be lo,hi,n with lo>0");
  std::vector<double> lam, val;
  int n = int(spec[2]);
  for (int i = 0; i < n; ++i) {
    double x = n == 1 ? spec[0]
                      : spec[0] + (spec[1] - spec[0]) * i / double(n - 1);
    lam.push_back(x);
    if (op == "hankel")
      val.push_back(transforms::hankel(nu, f, x, cfg));
    else if (op == "laplace")
      val.push_back(transforms::laplace(f, x, cfg));
    else if (op == "identity")
      val.push_back(f(x));
    else
      throw std::invalid_argument(
          "transform: op must be hankel|laplace|identity");
  }
  write_density_csv(out, lam, val, {}, man);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie-symmetry solvers for u_tt = u_xx + f(x)u"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;

  auto* classify = app.add_subcommand("classify", "identify a potential family");
  std::string cl_pot;
  classify->add_option("potential", cl_pot, "family spec, e.g. exp:A=0.5,B=0.5,omega=1")
      ->required();

  auto* solve = app.add_subcommand("solve", "run a Cauchy solver");
  std::string so_family, so_preset, so_f = "zero", so_g = "zero", so_grid,
              so_route, so_out = "solution.csv";
  double so_A = 0.0;
  solve->add_option("--family", so_family, "exp|invsq|sech");
  solve->add_option("--preset", so_preset, "example1");
  solve->add_option("--f", so_f, "initial position data spec");
  solve->add_option("--g", so_g, "initial velocity data spec");
  solve->add_option("--grid", so_grid, "x0,x1,nx,t0,t1,nt");
  solve->add_option("--route", so_route, "integral|series (exp family)");
  solve->add_option("--A", so_A, "inverse-square strength");
  solve->add_option("--out", so_out, "output CSV path");
  solve->add_option("--config", config_path, "JSON config mirroring the flags");

  auto* verify = app.add_subcommand("verify", "check a solution CSV");
  std::string ve_in, ve_pot;
  double ve_tol = 1e-3;
  verify->add_option("--in", ve_in, "solution CSV")->required();
  verify->add_option("--potential", ve_pot, "potential spec")->required();
  verify->add_option("--tol", ve_tol, "relative residual tolerance");

  auto* transform = app.add_subcommand("transform", "apply an integral transform");
  std::string tr_op, tr_f, tr_points, tr_out = "transform.csv";
  double tr_nu = 0.0;
  transform->add_option("--op", tr_op, "hankel|laplace|identity");
  transform->add_option("--f", tr_f, "input function spec");
  transform->add_option("--nu", tr_nu, "hankel order");
  transform->add_option("--points", tr_points, "lo,hi,n evaluation grid");
  transform->add_option("--out", tr_out, "output CSV path");
  transform->add_option("--config", config_path, "JSON config mirroring the flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      if (solve->parsed()) apply_config(solve, config_path);
      if (transform->parsed()) apply_config(transform, config_path);
    }
    if (classify->parsed()) return cmd_classify(cl_pot);
    if (verify->parsed()) return cmd_verify(ve_in, ve_pot, ve_tol);
    if (solve->parsed()) {
      if (so_grid.empty())
        throw std::invalid_argument("solve: --grid is required");
      if (so_family.empty())
        throw std::invalid_argument("solve: --family is required");
      Manifest man;
      man.command = "solve";
      man.parameters = {{"family", so_family}, {"preset", so_preset},
                        {"f", so_f},           {"g", so_g},
                        {"grid", so_grid},     {"route", so_route},
                        {"A", so_A},           {"out", so_out}};
      int rc = cmd_solve(so_family, so_preset, so_f, so_g, so_grid, so_route,
                         so_A, so_out, man);
      man.write(so_out + ".manifest.json");
      return rc;
    }
    if (transform->parsed()) {
      if (tr_op.empty() || tr_f.empty() || tr_points.empty())
        throw std::invalid_argument(
            "transform: --op, --f and --points are required");
      Manifest man;
      man.command = "transform";
      man.parameters = {{"op", tr_op},
                        {"f", tr_f},
                        {"nu", tr_nu},
                        {"points", tr_points},
                        {"out", tr_out}};
      int rc = cmd_transform(tr_op, tr_f, tr_nu, tr_points, tr_out, man);
      man.write(tr_out + ".manifest.json");
      return rc;
    }
  } catch (const specfun::AccuracyError& e) {
    std::fprintf(stderr, "non-convergence: %s\n", e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 2;
}
