#include "fracsolve/mittag_leffler.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace fracsolve;

namespace {

// reference for e_{1/2,1}(-x): exp(x^2) erfc(x), stable via the asymptotic
// continued-fraction-free form at large x using std::erfc in double.
double half_order_reference(double x) {
  if (x < 26.0) return std::exp(x * x) * std::erfc(x);
  // avoid overflow: erfc(x)*exp(x^2) ~ 1/(x sqrt(pi)) * (1 - 1/(2x^2) + 3/(4x^4))
  double ix2 = 1.0 / (x * x);
  return (1.0 - 0.5 * ix2 + 0.75 * ix2 * ix2) / (x * std::sqrt(M_PI));
}

std::vector<cplx> sample_args(double radius) {
  std::vector<cplx> out;
  for (double frac : {0.999, 0.75, 0.6}) {
    double a = frac * M_PI;
    out.push_back(radius * cplx(std::cos(a), std::sin(a)));
    out.push_back(radius * cplx(std::cos(a), -std::sin(a)));
  }
  return out;
}

}  // namespace

TEST_SUITE("mittag_leffler") {
  TEST_CASE("gamma function values and domain") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(4.0) == doctest::Approx(6.0).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(std::fabs(gamma_fn(3.5) - 3.3233509704478426) < 1e-8);
    CHECK_THROWS_AS(gamma_fn(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma_fn(-2.5), std::domain_error);
  }

  TEST_CASE("sinpi and reciprocal gamma") {
    CHECK(sinpi(3.0) == 0.0);
    CHECK(sinpi(-14.0) == 0.0);
    CHECK(sinpi(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sinpi(2.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sinpi(-0.25) == doctest::Approx(-std::sin(M_PI * 0.25)).epsilon(1e-15));
    CHECK(rgamma(-3.0) == 0.0);
    CHECK(rgamma(5.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
    CHECK(rgamma(-0.5) == doctest::Approx(1.0 / (-2.0 * std::sqrt(M_PI))).epsilon(1e-13));
  }

  TEST_CASE("trivial values") {
    CHECK(ml(0.5, 1.0, cplx(0.0, 0.0)).real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ml(1.0, 1.0, cplx(1.0, 0.0)).real() == doctest::Approx(M_E).epsilon(1e-13));
    CHECK(ml(1.0, 1.0, cplx(-300.0, 0.0)).real() ==
          doctest::Approx(std::exp(-300.0)).epsilon(1e-12));
  }

  TEST_CASE("half-order identity on the negative axis") {
    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
      double x = 5.0 * i / 500.0;
      double ref = half_order_reference(x);
      double got = ml(0.5, 1.0, cplx(-x, 0.0)).real();
      worst = std::max(worst, std::fabs(got - ref) / std::fabs(ref));
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("frozen spot value") {
    double v = ml(0.5, 1.0, cplx(-1.0, 0.0)).real();
    CHECK(std::fabs(v - 0.42758357615580705) < 1e-9);
    CHECK(std::fabs(v - std::exp(1.0) * std::erfc(1.0)) < 1e-12);
  }

  TEST_CASE("recurrence identity across the parameter grid") {
    // e_{g,mu}(z) = 1/Gamma(mu) + z * e_{g,mu+g}(z)
    double worst = 0.0;
    for (double g : {0.3, 0.5, 0.7, 0.9})
      for (double mu : {1.0, 0.5, 1.3})
        for (double r : {0.25, 0.9, 1.1, 4.0, 10.0})
          for (const cplx& z : sample_args(r)) {
            cplx lhs = ml(g, mu, z);
            cplx rhs = 1.0 / gamma_fn(mu) + z * ml(g, mu + g, z);
            worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-30));
          }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("conjugate symmetry") {
    for (double g : {0.3, 0.5, 0.7})
      for (double r : {0.5, 1.1, 14.0, 40.0, 1e4})
        for (const cplx& z : sample_args(r)) {
          cplx a = ml(g, 1.0, z);
          cplx b = std::conj(ml(g, 1.0, std::conj(z)));
          CHECK(std::abs(a - b) <= 1e-13 * std::max(1.0, std::abs(a)));
        }
  }

  TEST_CASE("sector decay envelope") {
    // (1+|z|) |e_{g,mu}(z)| stays bounded along rays near the negative axis
    for (double g : {0.4, 0.7})
      for (double theta : {0.0, M_PI / 8.0, -M_PI / 4.0}) {
        double envelope = 0.0;
        bool first = true;
        for (int i = 0; i <= 60; ++i) {
          double r = std::pow(10.0, 6.0 * i / 60.0);
          cplx w = -r * cplx(std::cos(theta), std::sin(theta));
          double val = (1.0 + std::abs(w)) * std::abs(ml(g, 1.0, w));
          if (!first) CHECK(val <= 1.05 * envelope);
          envelope = std::max(envelope, val);
          first = false;
        }
      }
  }

  TEST_CASE("regime seams agree") {
    MlOptions wide_taylor;
    wide_taylor.taylor_radius = 2.0;
    MlOptions early_asym;
    early_asym.asym_radius = 12.0;
    for (double g : {0.4, 0.6})
      for (double r : {0.9, 1.1, 14.0, 16.0})
        for (const cplx& z : sample_args(r)) {
          MlResult base = ml_ex(g, 0.8, z);
          REQUIRE(base.certified);
          if (r < 2.0) {
            MlResult alt = ml_ex(g, 0.8, z, wide_taylor);
            REQUIRE(alt.certified);
            CHECK(std::abs(base.value - alt.value) <=
                  1e-10 * std::max(1.0, std::abs(base.value)));
          } else {
            MlResult alt = ml_ex(g, 0.8, z, early_asym);
            REQUIRE(alt.certified);
            CHECK(std::abs(base.value - alt.value) <=
                  1e-10 * std::max(1.0, std::abs(base.value)));
          }
        }
  }

  TEST_CASE("solver sector stays certified to 1e8") {
    for (double g : {0.3, 0.5, 0.7})
      for (double mag : {1.0, 15.0, 1e3, 1e6, 1e8})
        for (const cplx& z : sample_args(mag)) {
          if (std::fabs(std::arg(z)) < 3.0 * M_PI / 4.0) continue;
          MlResult r = ml_ex(g, 1.0, z);
          CHECK(r.certified);
        }
  }

  TEST_CASE("uncertified evaluation throws through the strict interface") {
    CHECK_THROWS_AS(ml(-0.5, 1.0, cplx(1.0, 0.0)), std::domain_error);
  }
}
