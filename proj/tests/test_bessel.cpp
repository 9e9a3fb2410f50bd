#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>

#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"
#include "doctest.h"

using namespace conewave;

namespace {

double logspace(double a, double b, int k, int count) {
  return a * std::pow(b / a, static_cast<double>(k) / (count - 1));
}

}  // namespace

TEST_CASE("agreement with Boost across orders and regimes") {
  for (double nu : {0.0, 0.3, 0.5, 1.0, 1.5, 2.7, 5.0, 10.0, 25.5, -0.3}) {
    double worst = 0.0;
    for (int k = 0; k < 600; ++k) {
      const double r = logspace(1e-3, 300.0, k, 600);
      const double ref = boost::math::cyl_bessel_j(nu, r);
      const double env = std::max(std::abs(ref), 1e-3 * std::min(1.0, std::sqrt(2.0 / (std::numbers::pi * r))));
      worst = std::max(worst, std::abs(bessel_j(nu, r) - ref) / env);
    }
    INFO("nu = " << nu);
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("half-integer closed form") {
  for (int k = 0; k < 400; ++k) {
    const double r = logspace(0.01, 100.0, k, 400);
    const double exact = std::sqrt(2.0 / (std::numbers::pi * r)) * std::sin(r);
    CHECK(std::abs(bessel_j(0.5, r) - exact) <= 1e-10 * std::abs(exact));
    const double exact15 = std::sqrt(2.0 / (std::numbers::pi * r)) * (std::sin(r) / r - std::cos(r));
    CHECK(std::abs(bessel_j(1.5, r) - exact15) <= 1e-10 * std::abs(exact15) + 1e-15);
  }
}

TEST_CASE("evaluation paths agree at the crossovers") {
  for (double nu : {0.0, 0.5, 1.5, 2.7, 10.0}) {
    const auto b = detail::regime_bounds(nu);
    for (double r : {b.series_max, b.integral_min, b.asymptotic_min}) {
      const double lo = std::nextafter(r, 0.0);
      const double hi = std::nextafter(r, 1e300);
      CHECK(std::abs(bessel_j(nu, hi) - bessel_j(nu, lo)) < 1e-12);
    }
    const double r = b.asymptotic_min;
    CHECK(std::abs(detail::integral(nu, r) - detail::asymptotic(nu, r)) < 1e-12);
    if (b.integral_min > b.series_max) {
      const double x = b.integral_min;
      CHECK(std::abs(detail::recurrence(nu, x) - detail::integral(nu, x)) < 1e-12);
    }
  }
}

TEST_CASE("regime labels") {
  CHECK(bessel_eval(1.0, 0.1).regime == BesselRegime::series);
  CHECK(bessel_eval(1.0, 10.0).regime == BesselRegime::integral);
  CHECK(bessel_eval(1.0, 100.0).regime == BesselRegime::asymptotic);
  CHECK(std::string(to_string(BesselRegime::asymptotic)) == "asymptotic");
}

TEST_CASE("small-argument remainder") {
  for (double nu : {0.0, 0.3, 1.5, 4.0}) {
    for (double r : {1e-6, 1e-3, 0.1, 0.7, 2.0}) {
      const double S = bessel_remainder(nu, r);
      CHECK(std::abs(S) <= bessel_remainder_bound(nu, r) * (1 + 1e-12));
      // S is the tail of the series: -r^{ν+2}/(2^{ν+2} Γ(ν+2)) to leading order.
      if (r <= 1e-3) {
        const double lead = -std::pow(r / 2, nu + 2) / std::tgamma(nu + 2);
        CHECK(S == doctest::Approx(lead).epsilon(1e-5));
      }
      if (r >= 0.1) {
        CHECK(S == doctest::Approx(bessel_j(nu, r) - bessel_leading(nu, r)).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("small-argument envelope") {
  for (double nu : {0.5, 2.0, 7.5}) {
    double ratio = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double r = logspace(1e-4, nu + 1, k, 100);
      ratio = std::max(ratio, std::abs(bessel_j(nu, r)) / bessel_small_argument_envelope(nu, r));
    }
    CHECK(ratio < 10.0);
  }
}

TEST_CASE("order and argument domain") {
  CHECK_THROWS_AS(bessel_j(-0.5, 1.0), UnsupportedOrder);
  CHECK_THROWS_AS(bessel_j(-0.7, 1.0), UnsupportedOrder);
  CHECK_THROWS_AS(bessel_j(-0.2, 0.0), UnsupportedOrder);
  CHECK(bessel_j(0.0, 0.0) == 1.0);
  CHECK(bessel_j(1.5, 0.0) == 0.0);
}
