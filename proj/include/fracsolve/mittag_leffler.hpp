#pragma once

#include <complex>

namespace fracsolve {

using cplx = std::complex<double>;

// Parameters of the two-parameter Mittag-Leffler function e_{gamma,mu}.
struct MlParams {
  double gamma;
  double mu;
};

// Radii separating the three evaluation regimes, and the vertex of the
// fallback integration parabola.
struct MlOptions {
  double taylor_radius = 1.0;
  double asym_radius = 15.0;
  double parabola_vertex = 4.0;
};

struct MlResult {
  cplx value;
  bool certified;
};

// Gamma function for positive real arguments, accurate to at least 12
// significant digits. Throws std::domain_error for x <= 0.
double gamma_fn(double x);

// sin(pi*x) with argument reduction: exact zeros at integers.
double sinpi(double x);

// Reciprocal gamma on the real line: entire, zero at non-positive integers.
double rgamma(double x);

// Evaluate e_{gamma,mu}(z). The certificate reports whether the internal
// error control met its target; uncertified values are still returned.
MlResult ml_ex(double gamma, double mu, cplx z, const MlOptions& opt = {});

// Convenience wrappers. Throw std::runtime_error when evaluation cannot be
// certified to the documented accuracy.
cplx ml(double gamma, double mu, cplx z);
cplx ml(const MlParams& p, cplx z);

}  // namespace fracsolve
