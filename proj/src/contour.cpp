#include "fracsolve/contour.hpp"

#include "fracsolve/mittag_leffler.hpp"
#include "parallel_util.hpp"

#include <cmath>
#include <stdexcept>

namespace fracsolve {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr int kNodeChunk = 64;
}  // namespace

void validate_params(const FracParams& p) {
  if (!(p.gamma > 0.0 && p.gamma < 1.0))
    throw std::domain_error("params: gamma must lie in (0,1)");
  if (!(p.beta > 0.0 && p.beta < 1.0))
    throw std::domain_error("params: beta must lie in (0,1)");
}

void validate_contour(const ContourConfig& cfg, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::domain_error("contour: beta out of range");
  if (!(cfg.d > 0.0 && cfg.d < kPi / 4.0))
    throw std::domain_error("contour: d must lie in (0, pi/4)");
  if (!(cfg.b > 0.0 && cfg.b < cfg.lambda1_hint / std::sqrt(2.0)))
    throw std::domain_error("contour: require 0 < b < lambda1_hint/sqrt(2)");
  if (cfg.N < 1) throw std::domain_error("contour: N must be positive");
}

double sinc_step(const ContourConfig& cfg, double beta) {
  validate_contour(cfg, beta);
  return std::sqrt(kPi * cfg.d / (beta * cfg.N));
}

SincGrid sinc_grid(double beta, int N, double d) {
  ContourConfig cfg;
  cfg.d = d;
  cfg.N = N;
  SincGrid g;
  g.k = sinc_step(cfg, beta);
  g.nodes.resize(2 * N + 1);
  for (int j = -N; j <= N; ++j) g.nodes[j + N] = j * g.k;
  return g;
}

cplx contour_point(const ContourConfig& cfg, double y) {
  return cfg.b * cplx(std::cosh(y), std::sinh(y));
}

cplx contour_derivative(const ContourConfig& cfg, double y) {
  return cfg.b * cplx(std::sinh(y), std::cosh(y));
}

Eigen::VectorXd realify(const Eigen::VectorXcd& field) {
  double max_re = field.real().cwiseAbs().maxCoeff();
  double max_im = field.imag().cwiseAbs().maxCoeff();
  if (max_im > 1e-11 * (1.0 + max_re))
    throw std::logic_error("realify: imaginary residue exceeds bound");
  return field.real();
}

Eigen::VectorXcd contour_sum(const FemSystem& fs, double beta, const ContourConfig& cfg,
                             const std::function<cplx(int, cplx)>& node_weight,
                             const std::function<Eigen::VectorXcd(int, cplx)>& node_rhs,
                             ContourSign sign) {
  validate_contour(cfg, beta);
  double k = sinc_step(cfg, beta);
  int N = cfg.N;
  double shift_sign = sign == ContourSign::minus ? -1.0 : 1.0;

  auto compute = [&](int idx) -> Eigen::VectorXcd {
    int j = idx - N;
    double y = j * k;
    cplx z = contour_point(cfg, y);
    if (!(z.real() > 0.0))
      throw std::logic_error("contour_sum: contour point left the right half-plane");
    cplx zp = contour_derivative(cfg, y);
    cplx w = node_weight(j, z);
    Eigen::VectorXcd u = shifted_solve(fs, shift_sign * z, node_rhs(j, z));
    return (w * zp) * u;
  };

  detail::KahanVec acc(fs.n_dofs);
  detail::ordered_parallel(2 * N + 1, kNodeChunk, compute,
                           [&](int, const Eigen::VectorXcd& term) { acc.add(term); });
  return acc.sum * (k / cplx(0.0, 2.0 * kPi));
}

Eigen::VectorXd propagate_homogeneous(const FemSystem& fs, const FracParams& p,
                                      const ContourConfig& cfg, double t,
                                      const Eigen::VectorXd& v_coeffs, ContourSign sign) {
  validate_params(p);
  if (!(t > 0.0)) throw std::domain_error("propagate_homogeneous: t must be positive");
  if (v_coeffs.size() != fs.n_dofs)
    throw std::domain_error("propagate_homogeneous: field size mismatch");
  Eigen::VectorXcd mv = (fs.mass * v_coeffs).cast<cplx>();
  double tg = std::pow(t, p.gamma);
  auto weight = [&](int, cplx z) { return ml(p.gamma, 1.0, -tg * std::pow(z, p.beta)); };
  auto rhs = [&](int, cplx) { return mv; };
  return realify(contour_sum(fs, p.beta, cfg, weight, rhs, sign));
}

Eigen::VectorXd interval_average_apply(const FemSystem& fs, const FracParams& p,
                                       const ContourConfig& cfg, double t, double tau,
                                       const Eigen::VectorXd& g_coeffs, ContourSign sign) {
  validate_params(p);
  if (!(t > 0.0)) throw std::domain_error("interval_average_apply: t must be positive");
  if (!(tau > 0.0)) throw std::domain_error("interval_average_apply: tau must be positive");
  if (g_coeffs.size() != fs.n_dofs)
    throw std::domain_error("interval_average_apply: field size mismatch");
  Eigen::VectorXcd mg = (fs.mass * g_coeffs).cast<cplx>();
  double ta = std::pow(t, p.gamma);
  double tb = std::pow(t + tau, p.gamma);
  auto weight = [&](int, cplx z) {
    cplx zb = std::pow(z, p.beta);
    cplx ea = ml(p.gamma, 1.0, -ta * zb);
    cplx eb = ml(p.gamma, 1.0, -tb * zb);
    return std::pow(z, -p.beta) * (ea - eb);
  };
  auto rhs = [&](int, cplx) { return mg; };
  return realify(contour_sum(fs, p.beta, cfg, weight, rhs, sign));
}

}  // namespace fracsolve
