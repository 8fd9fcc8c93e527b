#pragma once

#include "fracsolve/contour.hpp"
#include "fracsolve/convolution.hpp"

namespace fracsolve {

struct SpectralTruncation {
  int num_terms = 50000;
};

// Closed-form series solution on the interval for v = 1, time order fixed
// at 1/2: u(t,x) = sum over odd l of e_{1/2,1}(-sqrt(t)*lambda_l^beta) *
// (4/(pi*l)) * sin(pi*l*x), lambda_l = (pi*l)^2. The Mittag-Leffler factors
// are cached at construction, so pointwise evaluation is cheap.
class ExactSolution1D {
 public:
  ExactSolution1D(double t, double beta, SpectralTruncation trunc = {});
  double value(double x) const;
  double deriv(double x) const;

 private:
  std::vector<double> coef_;  // (4/(pi*l)) * ml factor, odd l ascending
};

double exact_solution_1d(double t, double x, double beta, SpectralTruncation trunc = {});

// Pencil eigenvalue of the uniform 1D discretization:
// lambda_{l,h} = (6/h^2) (1-cos(l*pi*h)) / (2+cos(l*pi*h)).
double pencil_eigenvalue_1d(double h, int ell);

// Semi-discrete solution for v = 1 via the closed-form eigenpairs of the
// 1D pencil; exact in time up to Mittag-Leffler accuracy.
Eigen::VectorXd discrete_spectral_1d(const FemSystem& fs, double t, double beta, double gamma);

// Separable reference on the square: u = factor * sin(pi x) sin(pi y) with
// factor = e_{gamma,1}(-t^gamma (2 pi^2)^beta); profile and gradient are the
// full scaled solution, ready for error_norms.
struct Eigen2DReference {
  double factor;
  SpaceFn profile;
  SpaceGrad gradient;
};
Eigen2DReference exact_solution_2d_eigen(double t, double beta, double gamma);

// Forcing that makes u = t^3 sin(pi x) sin(pi y) the exact solution:
// f = (Gamma(4)/Gamma(4-gamma) t^{3-gamma} + t^3 (2 pi^2)^beta) * profile.
TimeSpaceFn manufactured_rhs_2d(double beta, double gamma);
double manufactured_time_factor(double t, double beta, double gamma);

// Caputo derivative of order gamma of a scalar function given its classical
// derivative, by adaptive quadrature after removing the kernel singularity.
double caputo_derivative(const std::function<double(double)>& f_prime, double gamma, double t);

// Sinc quadrature error probe: the discrepancy between the adaptive
// reference integral of g_lambda(y) = e_{gamma,1}(-t^gamma z(y)^beta) z'(y)
// / (z(y) - lambda) over a window [-Y, Y] (tail below 1e-14) and the sinc
// sum k * sum_j g_lambda(j k). The complex variant returns the signed
// discrepancy; the probe itself is its modulus.
cplx quad_error_probe_complex(double lambda, double t, const FracParams& p,
                              const ContourConfig& cfg);
double quad_error_probe(double lambda, double t, const FracParams& p, const ContourConfig& cfg);

// Maximum of the probe over a lambda grid (grid points evaluated
// concurrently, deterministic reduction).
double probe_sup(const std::vector<double>& lambdas, double t, const FracParams& p,
                 const ContourConfig& cfg);

std::vector<double> log_lambda_grid(double lo = 10.0, double hi = 1e8, int n = 200);

// Semi-discrete (exact-in-time) non-homogeneous solution at t = T for
// separable forcing amplitude(t) * profile(x,y), via the dense generalized
// eigendecomposition of the pencil and per-mode adaptive quadrature. Serves
// as the reference that isolates the time-quadrature error.
Eigen::VectorXd semidiscrete_nonhomogeneous(const FemSystem& fs, const FracParams& p, double T,
                                            const std::function<double(double)>& amplitude,
                                            const SpaceFn& profile);

}  // namespace fracsolve
