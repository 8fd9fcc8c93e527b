#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracsolve {

// Observed rates of convergence: for each successive pair,
// ln(e_{i-1}/e_i) / |ln(a_i/a_{i-1})|. Positive when errors shrink along
// the sweep, whether the abscissa halves (mesh size) or doubles (step
// counts). Abscissae must be strictly monotone, errors strictly positive.
inline std::vector<double> oroc(const std::vector<double>& errors,
                                const std::vector<double>& abscissae) {
  if (errors.size() != abscissae.size())
    throw std::domain_error("oroc: length mismatch");
  if (errors.size() < 2) throw std::domain_error("oroc: need at least two points");
  bool inc = abscissae[1] > abscissae[0];
  for (size_t i = 1; i < abscissae.size(); ++i) {
    double prev = abscissae[i - 1], cur = abscissae[i];
    if (!(inc ? cur > prev : cur < prev))
      throw std::domain_error("oroc: abscissae not strictly monotone");
  }
  for (double e : errors)
    if (!(e > 0.0)) throw std::domain_error("oroc: errors must be positive");
  std::vector<double> rates;
  rates.reserve(errors.size() - 1);
  for (size_t i = 1; i < errors.size(); ++i) {
    double denom = std::fabs(std::log(abscissae[i] / abscissae[i - 1]));
    rates.push_back(std::log(errors[i - 1] / errors[i]) / denom);
  }
  return rates;
}

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

inline LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw std::domain_error("linear_fit: need matching lists of length >= 2");
  size_t n = xs.size();
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < n; ++i) {
    double dx = xs[i] - mx, dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw std::domain_error("linear_fit: degenerate abscissae");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

}  // namespace fracsolve
