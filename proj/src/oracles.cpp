#include "fracsolve/oracles.hpp"

#include "fracsolve/mittag_leffler.hpp"
#include "parallel_util.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace fracsolve {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double ml_real(double gamma, double mu, double x) {
  cplx v = ml(gamma, mu, cplx(x, 0.0));
  return v.real();
}
}  // namespace

ExactSolution1D::ExactSolution1D(double t, double beta, SpectralTruncation trunc) {
  if (!(t >= 0.0)) throw std::domain_error("exact_solution_1d: t must be nonnegative");
  if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("exact_solution_1d: beta out of range");
  if (trunc.num_terms < 1) throw std::domain_error("exact_solution_1d: truncation too small");
  double st = std::sqrt(t);
  coef_.reserve(trunc.num_terms / 2 + 1);
  for (int l = 1; l <= trunc.num_terms; l += 2) {
    double lam_b = std::pow(kPi * l, 2.0 * beta);
    double factor = t == 0.0 ? 1.0 : ml_real(0.5, 1.0, -st * lam_b);
    coef_.push_back(4.0 / (kPi * l) * factor);
  }
}

double ExactSolution1D::value(double x) const {
  double s = 0.0;
  for (size_t i = 0; i < coef_.size(); ++i) {
    int l = 2 * static_cast<int>(i) + 1;
    s += coef_[i] * std::sin(kPi * l * x);
  }
  return s;
}

double ExactSolution1D::deriv(double x) const {
  double s = 0.0;
  for (size_t i = 0; i < coef_.size(); ++i) {
    int l = 2 * static_cast<int>(i) + 1;
    s += coef_[i] * kPi * l * std::cos(kPi * l * x);
  }
  return s;
}

double exact_solution_1d(double t, double x, double beta, SpectralTruncation trunc) {
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("exact_solution_1d: x out of [0,1]");
  return ExactSolution1D(t, beta, trunc).value(x);
}

double pencil_eigenvalue_1d(double h, int ell) {
  double c = std::cos(kPi * ell * h);
  return 6.0 / (h * h) * (1.0 - c) / (2.0 + c);
}

Eigen::VectorXd discrete_spectral_1d(const FemSystem& fs, double t, double beta, double gamma) {
  if (fs.dim != 1) throw std::domain_error("discrete_spectral_1d: 1D system required");
  if (!(t >= 0.0)) throw std::domain_error("discrete_spectral_1d: t must be nonnegative");
  if (!(beta > 0.0 && beta < 1.0) || !(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("discrete_spectral_1d: order out of range");
  int m = fs.cells_per_side;
  double h = fs.hx;
  double tg = std::pow(t, gamma);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(fs.n_dofs);
  for (int l = 1; l < m; ++l) {
    // data coefficient of v = 1 against the M-normalized mode, times the mode
    double sl = sinpi(0.5 * l * (m - 1) / m) * sinpi(0.5 * l) / sinpi(0.5 * l / m);
    if (sl == 0.0) continue;
    double c = std::cos(kPi * l * h);
    double lam = 6.0 / (h * h) * (1.0 - c) / (2.0 + c);
    double factor = t == 0.0 ? 1.0 : ml_real(gamma, 1.0, -tg * std::pow(lam, beta));
    double amp = 6.0 * h * sl / (2.0 + c) * factor;
    for (int k = 1; k < m; ++k)
      u[k - 1] += amp * sinpi(static_cast<double>(l) * k / m);
  }
  return u;
}

Eigen2DReference exact_solution_2d_eigen(double t, double beta, double gamma) {
  if (!(t >= 0.0)) throw std::domain_error("exact_solution_2d_eigen: t must be nonnegative");
  if (!(beta > 0.0 && beta < 1.0) || !(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("exact_solution_2d_eigen: order out of range");
  double lam_b = std::pow(2.0 * kPi * kPi, beta);
  double factor = t == 0.0 ? 1.0 : ml_real(gamma, 1.0, -std::pow(t, gamma) * lam_b);
  Eigen2DReference ref;
  ref.factor = factor;
  ref.profile = [factor](double x, double y) {
    return factor * std::sin(kPi * x) * std::sin(kPi * y);
  };
  ref.gradient = [factor](double x, double y) {
    return std::array<double, 2>{factor * kPi * std::cos(kPi * x) * std::sin(kPi * y),
                                 factor * kPi * std::sin(kPi * x) * std::cos(kPi * y)};
  };
  return ref;
}

double manufactured_time_factor(double t, double beta, double gamma) {
  double drv = gamma_fn(4.0) / gamma_fn(4.0 - gamma) * std::pow(t, 3.0 - gamma);
  return drv + std::pow(t, 3.0) * std::pow(2.0 * kPi * kPi, beta);
}

TimeSpaceFn manufactured_rhs_2d(double beta, double gamma) {
  if (!(beta > 0.0 && beta < 1.0) || !(gamma > 0.0 && gamma < 1.0))
    throw std::domain_error("manufactured_rhs_2d: order out of range");
  return [beta, gamma](double x, double y, double t) {
    return manufactured_time_factor(t, beta, gamma) * std::sin(kPi * x) * std::sin(kPi * y);
  };
}

double caputo_derivative(const std::function<double(double)>& f_prime, double gamma, double t) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw std::domain_error("caputo_derivative: gamma range");
  if (!(t > 0.0)) throw std::domain_error("caputo_derivative: t must be positive");
  // substitute w = (t-s)^{1-gamma}; the kernel singularity cancels exactly
  double p = 1.0 / (1.0 - gamma);
  auto integrand = [&](double w) { return f_prime(t - std::pow(w, p)); };
  double integral = GK::integrate(integrand, 0.0, std::pow(t, 1.0 - gamma), 12, 1e-11);
  return integral * p / gamma_fn(1.0 - gamma);
}

namespace {

cplx probe_integrand(double y, double tg, const FracParams& p, const ContourConfig& cfg,
                     double lambda) {
  cplx z = contour_point(cfg, y);
  cplx zp = contour_derivative(cfg, y);
  cplx e = ml(p.gamma, 1.0, -tg * std::pow(z, p.beta));
  return e * zp / (z - lambda);
}

}  // namespace

cplx quad_error_probe_complex(double lambda, double t, const FracParams& p,
                              const ContourConfig& cfg) {
  validate_params(p);
  validate_contour(cfg, p.beta);
  if (!(t > 0.0)) throw std::domain_error("quad_error_probe: t must be positive");
  if (!(lambda >= cfg.lambda1_hint))
    throw std::domain_error("quad_error_probe: lambda below the spectral hint");
  if (!(lambda > cfg.b * std::sqrt(2.0) * (1.0 + 1e-9)))
    throw std::domain_error("quad_error_probe: lambda too close to the contour");
  double tg = std::pow(t, p.gamma);

  // window from the tail bound C t^{-gamma} e^{-beta |y|} <= 1e-14
  double c_scan = 0.0;
  for (int i = 0; i <= 30; ++i) {
    double y = static_cast<double>(i);
    double mag = std::abs(probe_integrand(y, tg, p, cfg, lambda));
    c_scan = std::max(c_scan, mag * std::exp(p.beta * y) * tg);
  }
  c_scan = std::max(c_scan, 1e-300);
  double Y = std::log(c_scan / (tg * 1e-14)) / p.beta;
  Y = std::min(std::max(Y, 10.0), 300.0);

  // Re of the integral vanishes by oddness; integrate the imaginary part
  auto im_part = [&](double y) { return probe_integrand(y, tg, p, cfg, lambda).imag(); };
  double integral_im = GK::integrate(im_part, -Y, Y, 12, 1e-13);
  cplx reference(0.0, integral_im);

  double k = sinc_step(cfg, p.beta);
  cplx s = 0.0;
  for (int j = -cfg.N; j <= cfg.N; ++j) s += probe_integrand(j * k, tg, p, cfg, lambda);
  return reference - k * s;
}

double quad_error_probe(double lambda, double t, const FracParams& p, const ContourConfig& cfg) {
  return std::abs(quad_error_probe_complex(lambda, t, p, cfg));
}

double probe_sup(const std::vector<double>& lambdas, double t, const FracParams& p,
                 const ContourConfig& cfg) {
  if (lambdas.empty()) throw std::domain_error("probe_sup: empty grid");
  for (double lam : lambdas)
    if (!(lam >= cfg.lambda1_hint))
      throw std::domain_error("probe_sup: grid extends below the spectral hint");
  std::vector<double> vals(lambdas.size());
  detail::ordered_parallel(
      static_cast<int>(lambdas.size()), 256,
      [&](int i) {
        Eigen::VectorXcd v(1);
        v[0] = quad_error_probe(lambdas[i], t, p, cfg);
        return v;
      },
      [&](int i, const Eigen::VectorXcd& v) { vals[i] = v[0].real(); });
  double sup = 0.0;
  for (double v : vals) sup = std::max(sup, v);
  return sup;
}

std::vector<double> log_lambda_grid(double lo, double hi, int n) {
  if (!(lo > 0.0 && hi > lo) || n < 1) throw std::domain_error("log_lambda_grid: bad range");
  std::vector<double> grid(n);
  if (n == 1) {
    grid[0] = lo;
    return grid;
  }
  double step = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) grid[i] = lo * std::exp(step * i);
  return grid;
}

Eigen::VectorXd semidiscrete_nonhomogeneous(const FemSystem& fs, const FracParams& p, double T,
                                            const std::function<double(double)>& amplitude,
                                            const SpaceFn& profile) {
  validate_params(p);
  if (!(T > 0.0)) throw std::domain_error("semidiscrete_nonhomogeneous: T must be positive");
  Eigen::MatrixXd Ad(fs.stiffness);
  Eigen::MatrixXd Md(fs.mass);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(Ad, Md);
  if (ges.info() != Eigen::Success)
    throw std::runtime_error("semidiscrete_nonhomogeneous: eigensolver failed");
  const Eigen::VectorXd& lam = ges.eigenvalues();
  const Eigen::MatrixXd& V = ges.eigenvectors();  // M-orthonormal columns
  Eigen::VectorXd d = V.transpose() * load_vector(fs, profile);

  double Tg = std::pow(T, p.gamma);
  double inv_g = 1.0 / p.gamma;
  Eigen::VectorXd S(fs.n_dofs);
  detail::ordered_parallel(
      fs.n_dofs, 256,
      [&](int m) {
        double lb = std::pow(lam[m], p.beta);
        auto integrand = [&](double rho) {
          double kern = ml_real(p.gamma, p.gamma, -rho * lb);
          return kern * amplitude(T - std::pow(rho, inv_g));
        };
        Eigen::VectorXcd v(1);
        v[0] = inv_g * GK::integrate(integrand, 0.0, Tg, 15, 1e-11);
        return v;
      },
      [&](int m, const Eigen::VectorXcd& v) { S[m] = v[0].real(); });
  return V * d.cwiseProduct(S);
}

}  // namespace fracsolve
