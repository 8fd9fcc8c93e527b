#pragma once

#include "fracsolve/fem.hpp"

#include <functional>
#include <vector>

namespace fracsolve {

// Fractional orders: gamma for the time derivative, beta for the operator
// power; both in (0,1).
struct FracParams {
  double gamma = 0.5;
  double beta = 0.5;
};

void validate_params(const FracParams& p);

// Hyperbolic contour z(y) = b(cosh y + i sinh y) with sinc nodes y_j = j*k,
// j = -N..N, k = sqrt(pi*d/(beta*N)).
struct ContourConfig {
  double b = 1.0;
  double d = 0.3926990816987241;  // pi/8
  int N = 200;
  double lambda1_hint = 9.869604401089358;  // pi^2; use 2*pi^2 on the square
};

// Which resolvent the quadrature weights multiply: minus solves
// (stiffness - z*mass), plus solves (stiffness + z*mass). Exactly one of
// them reproduces the propagator; see the space convergence experiment.
enum class ContourSign { minus, plus };

void validate_contour(const ContourConfig& cfg, double beta);
double sinc_step(const ContourConfig& cfg, double beta);

struct SincGrid {
  double k;
  std::vector<double> nodes;  // 2N+1 symmetric abscissae
};
SincGrid sinc_grid(double beta, int N, double d);

cplx contour_point(const ContourConfig& cfg, double y);
cplx contour_derivative(const ContourConfig& cfg, double y);

// Assert the field is real up to max|Im| <= 1e-11*(1+max|Re|) and strip the
// imaginary part. Violation indicates a broken conjugate-symmetric sum.
Eigen::VectorXd realify(const Eigen::VectorXcd& field);

// Shared quadrature kernel: (k/2pi i) * sum_j w(j,z_j) * z'(y_j) * U_j with
// U_j the shifted solve of rhs(j,z_j). Nodes are processed concurrently;
// the reduction is a compensated sweep in ascending j, so results are
// deterministic. Every node performs one shifted_solve.
Eigen::VectorXcd contour_sum(const FemSystem& fs, double beta, const ContourConfig& cfg,
                             const std::function<cplx(int j, cplx z)>& node_weight,
                             const std::function<Eigen::VectorXcd(int j, cplx z)>& node_rhs,
                             ContourSign sign = ContourSign::minus);

// u_h(t) for the homogeneous problem with initial coefficients v: applies
// e_{gamma,1}(-t^gamma L_h^beta) through the contour quadrature. Rejects
// t <= 0; the exact limit at t = 0 is the projection itself.
Eigen::VectorXd propagate_homogeneous(const FemSystem& fs, const FracParams& p,
                                      const ContourConfig& cfg, double t,
                                      const Eigen::VectorXd& v_coeffs,
                                      ContourSign sign = ContourSign::minus);

// Integral of the convolution kernel over [t, t+tau] applied to g: the
// node weights are z^{-beta} * (e_{gamma,1}(-t^gamma z^beta) -
// e_{gamma,1}(-(t+tau)^gamma z^beta)).
Eigen::VectorXd interval_average_apply(const FemSystem& fs, const FracParams& p,
                                       const ContourConfig& cfg, double t, double tau,
                                       const Eigen::VectorXd& g_coeffs,
                                       ContourSign sign = ContourSign::minus);

}  // namespace fracsolve
