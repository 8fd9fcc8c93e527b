#include "fracsolve/mittag_leffler.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracsolve {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kGammaOverflow = 171.624;  // largest x with finite Gamma(x)

double pos_gamma(double x) {
  if (x > kGammaOverflow) return std::numeric_limits<double>::infinity();
  return boost::math::tgamma(x);
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  return pos_gamma(x);
}

double sinpi(double x) {
  double m = std::nearbyint(x);
  double r = x - m;
  double s = std::sin(kPi * r);
  bool odd = std::fmod(std::fabs(m), 2.0) == 1.0;
  return odd ? -s : s;
}

double rgamma(double x) {
  if (x > 0.5) {
    if (x > kGammaOverflow) return 0.0;
    return 1.0 / boost::math::tgamma(x);
  }
  double s = sinpi(x);
  if (s == 0.0) return 0.0;
  if (1.0 - x > kGammaOverflow) {
    double inf = std::numeric_limits<double>::infinity();
    return s > 0.0 ? inf : -inf;
  }
  return boost::math::tgamma(1.0 - x) * s / kPi;
}

namespace {

MlResult ml_taylor(double g, double mu, cplx z) {
  cplx s = 0.0;
  cplx zp = 1.0;
  for (int k = 0; k < 200; ++k) {
    double c = rgamma(mu + g * k);
    cplx t = zp * c;
    s += t;
    zp *= z;
    if (std::abs(t) <= 1e-16 * std::max(std::abs(s), 1e-300) && k > 3) break;
  }
  return {s, true};
}

MlResult ml_asymptotic(double g, double mu, cplx z) {
  cplx s = 0.0;
  cplx zi = 1.0 / z;
  cplx term = zi;
  double smallest = std::numeric_limits<double>::infinity();
  double err_bound = 0.0;
  double last_t = 0.0;
  bool exhausted = true;
  for (int k = 1; k < 600; ++k) {
    double c = rgamma(mu - g * k);
    if (c != 0.0) {
      if (!std::isfinite(c)) {
        err_bound = last_t;
        exhausted = false;
        break;
      }
      cplx t = term * c;
      if (std::abs(t) >= smallest) {
        err_bound = std::abs(t);
        exhausted = false;
        break;
      }
      s -= t;
      smallest = std::min(smallest, std::abs(t));
      last_t = std::abs(t);
    }
    term *= zi;
    if (std::abs(term) < 1e-320) {
      exhausted = false;
      break;
    }
  }
  if (exhausted) err_bound = last_t;

  double arg = std::fabs(std::arg(z));
  cplx E = 0.0;
  bool overflow = false;
  if (arg <= g * kPi) {
    cplx w = std::pow(z, 1.0 / g);
    if (w.real() > 700.0) {
      overflow = true;
    } else {
      E = (1.0 / g) * std::exp(w) * std::pow(z, (1.0 - mu) / g);
      s += E;
    }
  }
  double scale = std::max(std::abs(s), 1e-300);
  bool certified = (err_bound <= 1e-11 * scale) && !overflow;
  if (g * kPi - 0.05 < arg && arg < g * kPi + 0.05 && std::abs(E) > 1e-12 * scale)
    certified = false;
  if (overflow) {
    double inf = std::numeric_limits<double>::infinity();
    s = cplx(inf, inf);
  }
  return {s, certified};
}

// Inverse-transform evaluation over a parabolic path s(u) = v*(1+iu)^2.
// The vertex is widened when the kernel pole z^{1/g} sits too close to
// the path for the trapezoid rule to resolve it.
MlResult ml_contour(double g, double mu, cplx z, double vertex) {
  double v = vertex;
  for (int bump = 0; bump < 14; ++bump) {
    cplx residue = 0.0;
    bool path_ok = true;
    if (std::fabs(std::arg(z)) <= g * kPi) {
      cplx sstar = std::pow(z, 1.0 / g);
      if (sstar.real() > 700.0) {
        double inf = std::numeric_limits<double>::infinity();
        return {cplx(inf, inf), false};
      }
      cplx w = std::sqrt(sstar / v);
      if (std::fabs(w.real() - 1.0) < 0.25) {
        path_ok = false;
      } else if (w.real() > 1.0) {
        residue = (1.0 / g) * std::exp(sstar) * std::pow(sstar, 1.0 - mu);
      }
    }
    if (path_ok) {
      double umax = std::sqrt(1.0 + 50.0 / v);
      cplx prev = 0.0;
      bool have_prev = false;
      for (int n = 128; n <= 8192; n *= 2) {
        double h = umax / n;
        cplx acc = 0.0;
        for (int i = 0; i <= 2 * n; ++i) {
          double u = -umax + i * h;
          cplx su = v * (cplx(1.0, u) * cplx(1.0, u));
          cplx sp = cplx(0.0, 2.0 * v) * cplx(1.0, u);
          acc += std::exp(su) * std::pow(su, g - mu) / (std::pow(su, g) - z) * sp;
        }
        cplx T = h * acc / cplx(0.0, 2.0 * kPi);
        if (have_prev) {
          double scale = std::max(std::abs(T + residue), 1e-300);
          double floor = std::exp(v) * 4e-16 * h * (2 * n + 1);
          if (std::abs(T - prev) <= std::max(4e-13 * scale, floor))
            return {T + residue, true};
        }
        prev = T;
        have_prev = true;
      }
      return {prev + residue, false};
    }
    v *= 1.4;
  }
  return {cplx(0.0, 0.0), false};
}

}  // namespace

MlResult ml_ex(double gamma, double mu, cplx z, const MlOptions& opt) {
  if (!(gamma > 0.0) || !(mu > 0.0))
    throw std::domain_error("ml: parameters must be positive");
  if (gamma == 1.0 && mu == 1.0) return {std::exp(z), true};
  if (std::abs(z) <= opt.taylor_radius) return ml_taylor(gamma, mu, z);
  if (std::abs(z) >= opt.asym_radius) {
    MlResult r = ml_asymptotic(gamma, mu, z);
    if (r.certified) return r;
  }
  return ml_contour(gamma, mu, z, opt.parabola_vertex);
}

cplx ml(double gamma, double mu, cplx z) {
  MlResult r = ml_ex(gamma, mu, z);
  if (!r.certified)
    throw std::runtime_error("ml: evaluation not certified to target accuracy");
  return r.value;
}

cplx ml(const MlParams& p, cplx z) { return ml(p.gamma, p.mu, z); }

}  // namespace fracsolve
