// Command-line experiment driver: reproduces the convergence studies as
// deterministic CSV tables and offers one-shot evaluation utilities.

#include "fracsolve/analysis.hpp"
#include "fracsolve/convolution.hpp"
#include "fracsolve/mittag_leffler.hpp"
#include "fracsolve/oracles.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace fracsolve;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string problem;
  double gamma = 0.5;
  double beta = 0.5;
  double t_final = 0.5;
  std::vector<int> levels;
  int N = 0;
  std::vector<int> calN_list;
  double d = kPi / 8.0;
  double b = 1.0;
  std::string output_path;
  std::string contour_sign = "minus";
  std::string reference = "exact";
};

// Optional overrides collected from the command line; applied on top of the
// config file, which is applied on top of the subcommand defaults.
struct Overrides {
  std::optional<std::string> config_path;
  std::optional<double> gamma, beta, t, d, b;
  std::optional<std::string> levels, calN, problem, out, sign, reference;
};

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError(what + ": bad integer list entry '" + item + "'");
    }
  }
  if (vals.empty()) throw ConfigError(what + ": empty list");
  return vals;
}

double parse_real(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": bad real value '" + text + "'");
  }
}

void apply_config_file(RunConfig& rc, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos || line[start] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = line.substr(start, eq - start);
    std::string val = line.substr(eq + 1);
    key.erase(key.find_last_not_of(" \t") + 1);
    size_t vs = val.find_first_not_of(" \t");
    val = vs == std::string::npos ? "" : val.substr(vs);
    val.erase(val.find_last_not_of(" \t\r") + 1);
    if (key == "problem")
      rc.problem = val;
    else if (key == "gamma")
      rc.gamma = parse_real(val, key);
    else if (key == "beta")
      rc.beta = parse_real(val, key);
    else if (key == "t_final")
      rc.t_final = parse_real(val, key);
    else if (key == "levels")
      rc.levels = parse_int_list(val, key);
    else if (key == "N")
      rc.N = static_cast<int>(parse_real(val, key));
    else if (key == "calN_list")
      rc.calN_list = parse_int_list(val, key);
    else if (key == "d")
      rc.d = parse_real(val, key);
    else if (key == "b")
      rc.b = parse_real(val, key);
    else if (key == "output_path")
      rc.output_path = val;
    else
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
}

void apply_overrides(RunConfig& rc, const Overrides& ov) {
  if (ov.config_path) apply_config_file(rc, *ov.config_path);
  if (ov.gamma) rc.gamma = *ov.gamma;
  if (ov.beta) rc.beta = *ov.beta;
  if (ov.t) rc.t_final = *ov.t;
  if (ov.d) rc.d = *ov.d;
  if (ov.b) rc.b = *ov.b;
  if (ov.levels) rc.levels = parse_int_list(*ov.levels, "--levels");
  if (ov.calN) rc.calN_list = parse_int_list(*ov.calN, "--calN");
  if (ov.problem) rc.problem = *ov.problem;
  if (ov.out) rc.output_path = *ov.out;
  if (ov.sign) rc.contour_sign = *ov.sign;
  if (ov.reference) rc.reference = *ov.reference;
}

ContourSign sign_of(const RunConfig& rc) {
  if (rc.contour_sign == "minus") return ContourSign::minus;
  if (rc.contour_sign == "plus") return ContourSign::plus;
  throw ConfigError("contour-sign must be 'minus' or 'plus'");
}

std::string g15(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

std::string join_ints(const std::vector<int>& vals) {
  std::string s;
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(vals[i]);
  }
  return s;
}

std::ofstream open_output(const RunConfig& rc) {
  if (rc.output_path.empty()) throw ConfigError("no output path given (--out)");
  std::ofstream out(rc.output_path);
  if (!out) throw ConfigError("cannot open output file '" + rc.output_path + "'");
  return out;
}

void write_provenance(std::ostream& out, const char* cmd, const RunConfig& rc) {
  out << "# fracsolve " << cmd << "\n";
  out << "# problem=" << rc.problem << " gamma=" << g15(rc.gamma) << " beta=" << g15(rc.beta)
      << " t_final=" << g15(rc.t_final) << " levels=" << join_ints(rc.levels)
      << " N=" << rc.N << " calN_list=" << join_ints(rc.calN_list) << " d=" << g15(rc.d)
      << " b=" << g15(rc.b) << " contour_sign=" << rc.contour_sign
      << " reference=" << rc.reference << "\n";
}

void write_header(std::ostream& out) { out << "abscissa,error_l2,error_h1,oroc_l2,oroc_h1\n"; }

// One table block: abscissae + errors, with pairwise rates; blank h1/rate
// fields where a column does not apply.
void write_rows(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& el2,
                const std::vector<double>& eh1) {
  std::vector<double> r2 = xs.size() > 1 ? oroc(el2, xs) : std::vector<double>{};
  std::vector<double> r1;
  if (!eh1.empty() && xs.size() > 1) r1 = oroc(eh1, xs);
  for (size_t i = 0; i < xs.size(); ++i) {
    out << g15(xs[i]) << "," << g15(el2[i]) << ",";
    if (!eh1.empty()) out << g15(eh1[i]);
    out << ",";
    if (i > 0) out << g15(r2[i - 1]);
    out << ",";
    if (i > 0 && !r1.empty()) out << g15(r1[i - 1]);
    out << "\n";
  }
}

int cmd_ml_eval(double gamma, double mu, double re, double im) {
  cplx v = ml(gamma, mu, cplx(re, im));
  if (std::fabs(v.imag()) <= 1e-14 * std::max(1.0, std::fabs(v.real())))
    std::printf("%.12f\n", v.real());
  else
    std::printf("%.12f%+.12fi\n", v.real(), v.imag());
  return 0;
}

int cmd_convergence_space(RunConfig rc) {
  if (rc.problem.empty()) rc.problem = "hom-1d";
  if (rc.levels.empty()) rc.levels = {3, 4, 5, 6, 7};
  std::vector<double> hs, el2, eh1;
  if (rc.problem == "hom-1d") {
    if (std::fabs(rc.gamma - 0.5) > 1e-12)
      throw ConfigError("hom-1d closed-form reference requires gamma=0.5");
    validate_params(FracParams{rc.gamma, rc.beta});
    ExactSolution1D exact(rc.t_final, rc.beta);
    auto value = [&](double x, double) { return exact.value(x); };
    auto grad = [&](double x, double) { return std::array<double, 2>{exact.deriv(x), 0.0}; };
    for (int level : rc.levels) {
      FemSystem fs = build_system(1, level);
      Eigen::VectorXd uh = discrete_spectral_1d(fs, rc.t_final, rc.beta, rc.gamma);
      ErrorNorms en = error_norms(fs, uh, value, grad);
      hs.push_back(fs.h);
      el2.push_back(en.l2);
      eh1.push_back(en.h1);
    }
  } else if (rc.problem == "hom-2d") {
    if (rc.N == 0) rc.N = 400;
    FracParams p{rc.gamma, rc.beta};
    validate_params(p);
    ContourConfig cfg{rc.b, rc.d, rc.N, 2.0 * kPi * kPi};
    Eigen2DReference ref = exact_solution_2d_eigen(rc.t_final, rc.beta, rc.gamma);
    auto sinsin = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    for (int level : rc.levels) {
      FemSystem fs = build_system(2, level);
      Eigen::VectorXd v = l2_project(fs, sinsin);
      Eigen::VectorXd u = propagate_homogeneous(fs, p, cfg, rc.t_final, v, sign_of(rc));
      ErrorNorms en = error_norms(fs, u, ref.profile, ref.gradient);
      hs.push_back(fs.h);
      el2.push_back(en.l2);
      eh1.push_back(en.h1);
    }
  } else {
    throw ConfigError("convergence-space expects problem hom-1d or hom-2d");
  }
  std::ofstream out = open_output(rc);
  write_provenance(out, "convergence-space", rc);
  write_header(out);
  write_rows(out, hs, el2, eh1);
  return 0;
}

int cmd_sinc_decay(RunConfig rc) {
  if (rc.problem.empty()) rc.problem = "sinc-probe";
  if (rc.problem != "sinc-probe") throw ConfigError("sinc-decay expects problem sinc-probe");
  FracParams p{rc.gamma, rc.beta};
  validate_params(p);
  std::vector<double> grid = log_lambda_grid();
  std::vector<double> xs, sups;
  for (int N : {25, 50, 100, 200, 400}) {
    ContourConfig cfg{rc.b, rc.d, N, kPi * kPi};
    xs.push_back(N);
    sups.push_back(probe_sup(grid, rc.t_final, p, cfg));
  }
  rc.N = 0;
  std::ofstream out = open_output(rc);
  write_provenance(out, "sinc-decay", rc);
  write_header(out);
  write_rows(out, xs, sups, {});
  return 0;
}

int cmd_time_singularity(RunConfig rc) {
  if (rc.problem.empty()) rc.problem = "sinc-probe";
  if (rc.problem != "sinc-probe")
    throw ConfigError("time-singularity expects problem sinc-probe");
  if (rc.N == 0) rc.N = 100;
  FracParams p{rc.gamma, rc.beta};
  validate_params(p);
  ContourConfig cfg{rc.b, rc.d, rc.N, kPi * kPi};
  std::vector<double> grid = log_lambda_grid();
  std::vector<double> xs, sups;
  for (int m = 1; m <= 10; ++m) {
    double t = std::ldexp(1.0, -m);
    xs.push_back(t);
    sups.push_back(probe_sup(grid, t, p, cfg));
  }
  std::ofstream out = open_output(rc);
  write_provenance(out, "time-singularity", rc);
  write_header(out);
  write_rows(out, xs, sups, {});
  return 0;
}

int cmd_convergence_time(RunConfig rc) {
  if (rc.problem.empty()) rc.problem = "nonhom-2d";
  if (rc.problem != "nonhom-2d") throw ConfigError("convergence-time expects problem nonhom-2d");
  if (rc.levels.empty()) rc.levels = {5};
  if (rc.N == 0) rc.N = 400;
  if (rc.calN_list.empty()) rc.calN_list = {2, 4, 8, 16, 32};
  if (rc.reference != "exact" && rc.reference != "semidiscrete")
    throw ConfigError("reference must be 'exact' or 'semidiscrete'");
  FracParams p{rc.gamma, rc.beta};
  validate_params(p);
  ContourConfig cfg{rc.b, rc.d, rc.N, 2.0 * kPi * kPi};
  FemSystem fs = build_system(2, rc.levels.front());
  double T = rc.t_final;
  TimeSpaceFn f = manufactured_rhs_2d(rc.beta, rc.gamma);
  auto sinsin = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };

  double t3 = T * T * T;
  auto profile = [&](double x, double y) { return t3 * sinsin(x, y); };
  auto gradient = [&](double x, double y) {
    return std::array<double, 2>{t3 * kPi * std::cos(kPi * x) * std::sin(kPi * y),
                                 t3 * kPi * std::sin(kPi * x) * std::cos(kPi * y)};
  };
  Eigen::VectorXd semi_ref;
  if (rc.reference == "semidiscrete") {
    auto amplitude = [&](double t) { return manufactured_time_factor(t, rc.beta, rc.gamma); };
    semi_ref = semidiscrete_nonhomogeneous(fs, p, T, amplitude, sinsin);
  }
  auto measure = [&](const GeometricPartition& part, std::vector<double>& el2,
                     std::vector<double>& eh1) {
    Eigen::VectorXd u = solve_nonhomogeneous(fs, p, cfg, part, f, sign_of(rc));
    if (rc.reference == "exact") {
      ErrorNorms en = error_norms(fs, u, profile, gradient);
      el2.push_back(en.l2);
      eh1.push_back(en.h1);
    } else {
      el2.push_back(l2_norm(fs, u - semi_ref));
      eh1.push_back(h1_seminorm(fs, u - semi_ref));
    }
  };

  std::vector<double> gx, gl2, gh1;
  for (int calN : rc.calN_list) {
    gx.push_back(calN);
    measure(geometric_partition(T, calN, rc.gamma), gl2, gh1);
  }
  std::vector<double> ux, ul2, uh1;
  for (int steps : {8, 16, 32, 64, 128}) {
    ux.push_back(steps);
    measure(uniform_partition(T, steps), ul2, uh1);
  }

  std::ofstream out = open_output(rc);
  write_provenance(out, "convergence-time", rc);
  write_header(out);
  out << "# section=geometric abscissa=calN\n";
  write_rows(out, gx, gl2, gh1);
  out << "# section=uniform abscissa=steps\n";
  write_rows(out, ux, ul2, uh1);
  return 0;
}

int cmd_solve(RunConfig rc) {
  if (rc.problem.empty()) rc.problem = "hom-1d";
  if (rc.levels.empty()) rc.levels = {5};
  FracParams p{rc.gamma, rc.beta};
  validate_params(p);
  Eigen::VectorXd u;
  FemSystem fs = build_system(rc.problem == "hom-1d" ? 1 : 2, rc.levels.front());
  if (rc.problem == "hom-1d") {
    if (rc.N == 0) rc.N = 200;
    ContourConfig cfg{rc.b, rc.d, rc.N, kPi * kPi};
    u = propagate_homogeneous(fs, p, cfg, rc.t_final,
                              l2_project(fs, [](double, double) { return 1.0; }), sign_of(rc));
  } else if (rc.problem == "hom-2d") {
    if (rc.N == 0) rc.N = 400;
    ContourConfig cfg{rc.b, rc.d, rc.N, 2.0 * kPi * kPi};
    auto sinsin = [](double x, double y) { return std::sin(kPi * x) * std::sin(kPi * y); };
    u = propagate_homogeneous(fs, p, cfg, rc.t_final, l2_project(fs, sinsin), sign_of(rc));
  } else if (rc.problem == "nonhom-2d") {
    if (rc.N == 0) rc.N = 400;
    if (rc.calN_list.empty()) rc.calN_list = {32};
    ContourConfig cfg{rc.b, rc.d, rc.N, 2.0 * kPi * kPi};
    GeometricPartition part = geometric_partition(rc.t_final, rc.calN_list.front(), rc.gamma);
    u = solve_nonhomogeneous(fs, p, cfg, part, manufactured_rhs_2d(rc.beta, rc.gamma),
                             sign_of(rc));
  } else {
    throw ConfigError("solve expects problem hom-1d, hom-2d or nonhom-2d");
  }
  std::ofstream out = open_output(rc);
  write_provenance(out, "solve", rc);
  out << "dof,x,y,value\n";
  std::vector<std::array<double, 2>> pts = dof_points(fs);
  for (int i = 0; i < fs.n_dofs; ++i)
    out << i << "," << g15(pts[i][0]) << "," << g15(pts[i][1]) << "," << g15(u[i]) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"space-time fractional diffusion solver"};
  app.require_subcommand(1);

  double ml_gamma = 0, ml_mu = 0, ml_re = 0, ml_im = 0;
  CLI::App* ml_cmd = app.add_subcommand("ml-eval", "evaluate the two-parameter kernel function");
  ml_cmd->add_option("gamma", ml_gamma)->required();
  ml_cmd->add_option("mu", ml_mu)->required();
  ml_cmd->add_option("re", ml_re)->required();
  ml_cmd->add_option("im", ml_im)->required();

  Overrides ov;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", ov.config_path, "flat key=value config file");
    sub->add_option("--gamma", ov.gamma);
    sub->add_option("--beta", ov.beta);
    sub->add_option("--t", ov.t, "final time");
    sub->add_option("--levels", ov.levels, "comma-separated mesh levels");
    sub->add_option("--calN", ov.calN, "comma-separated block subdivision counts");
    sub->add_option("--d", ov.d);
    sub->add_option("--b", ov.b);
    sub->add_option("--out", ov.out, "output CSV path");
    sub->add_option("--problem", ov.problem);
    sub->add_option("--contour-sign", ov.sign)->check(CLI::IsMember({"minus", "plus"}));
    sub->add_option("--reference", ov.reference)->check(CLI::IsMember({"exact", "semidiscrete"}));
  };

  std::optional<int> ov_N;
  CLI::App* sp = app.add_subcommand("convergence-space", "spatial convergence study");
  CLI::App* sd = app.add_subcommand("sinc-decay", "quadrature error vs node count");
  CLI::App* ts = app.add_subcommand("time-singularity", "quadrature error vs time");
  CLI::App* ct = app.add_subcommand("convergence-time", "time-quadrature convergence study");
  CLI::App* sv = app.add_subcommand("solve", "one-shot field dump");
  for (CLI::App* sub : {sp, sd, ts, ct, sv}) {
    add_common(sub);
    sub->add_option("--N", ov_N, "contour node parameter (2N+1 nodes)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (ml_cmd->parsed()) return cmd_ml_eval(ml_gamma, ml_mu, ml_re, ml_im);
    RunConfig rc;
    apply_overrides(rc, ov);
    if (ov_N) rc.N = *ov_N;
    if (sp->parsed()) return cmd_convergence_space(rc);
    if (sd->parsed()) return cmd_sinc_decay(rc);
    if (ts->parsed()) return cmd_time_singularity(rc);
    if (ct->parsed()) return cmd_convergence_time(rc);
    if (sv->parsed()) return cmd_solve(rc);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "solver error: %s\n", e.what());
    return 3;
  }
  return 0;
}
