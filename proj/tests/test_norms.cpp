#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "conewave/bumps.hpp"
#include "conewave/calculus.hpp"
#include "conewave/errors.hpp"
#include "conewave/norms.hpp"
#include "doctest.h"

using namespace conewave;
using boost::math::quadrature::gauss_kronrod;

namespace {

ModelPtr model(double nu = 0.5, int N = 2048) {
  const auto g = share(make_radial_grid(1e-3, 1e3, N, 3));
  return make_model(build_sphere_spectrum(3, 1.0, nu * nu - 0.25, 0), g);
}

double bump(double r) { return gaussian_bump(r, 2.0, 0.5); }

}  // namespace

TEST_CASE("Lebesgue norms against quadrature") {
  const auto m = model();
  const auto f = ModeField::y_independent(m, sample(m->space(), bump));
  const double vol = m->spec().volume();
  CHECK(vol == doctest::Approx(4 * std::numbers::pi));
  for (double p : {1.0, 1.5, 2.0, 4.0, 10.0}) {
    const double I = gauss_kronrod<double, 61>::integrate(
        [p](double r) { return std::pow(bump(r), p) * r * r; }, 0.0, 8.0, 10, 1e-14);
    const auto rep = spatial_norm(p, f);
    CHECK(rep.value == doctest::Approx(std::pow(vol * I, 1 / p)).epsilon(1e-10));
    CHECK(rep.error_estimate < 1e-8 * rep.value);
  }
  CHECK(spatial_norm(ExtendedReal::infinity(), f).value == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(spatial_norm(2.0, f).value == doctest::Approx(f.l2_norm()));
  CHECK(sobolev_norm(0.0, f).value == doctest::Approx(f.l2_norm()).epsilon(1e-7));
  CHECK_THROWS(spatial_norm(0.5, f));
}

TEST_CASE("windows restrict the radial integral") {
  const auto m = model();
  const auto& g = *m->space();
  const auto f = ModeField::y_independent(m, sample(m->space(), [](double) { return 1.0; }));
  const double a = g.node(1000), b = g.node(1200);
  const auto w = node_window(g, a, b);
  const double vol = m->spec().volume();
  CHECK(spatial_norm(1.0, f, w).value == doctest::Approx(vol * (b * b * b - a * a * a) / 3).epsilon(1e-8));
  CHECK_THROWS_AS(node_window(g, a * 1.0001, b), BadGrid);
  CHECK_THROWS_AS(node_window(g, b, a), BadGrid);
}

TEST_CASE("single-mode and multi-mode fields") {
  const auto g = share(make_radial_grid(1e-3, 1e3, 512, 3));
  const auto m = make_model(build_sphere_spectrum(3, 1.0, 0.0, 1), g);
  const auto a = sample(g, bump);
  const auto one = ModeField::single_mode(m, {1, 0}, a);
  // Constant angular modulus |Y|^{-1/2}: the L^4 norm matches a y-independent field.
  const auto flat = ModeField::y_independent(m, a);
  auto scaled = a;
  scaled *= 1.0 / std::sqrt(m->spec().volume());
  const auto flat_scaled = ModeField::y_independent(m, scaled);
  CHECK(spatial_norm(4.0, one).value == doctest::Approx(spatial_norm(4.0, flat_scaled).value));
  auto two = one;
  two += flat;
  CHECK_THROWS_AS(spatial_norm(4.0, two), AngularUnavailable);
  CHECK_THROWS_AS(lorentz_norm(4.0, 2.0, two), AngularUnavailable);
  CHECK_NOTHROW(spatial_norm(2.0, two));
}

TEST_CASE("Lorentz quasi-norms") {
  const auto inf = ExtendedReal::infinity();
  // Indicator of a set of measure m: ‖1_E‖_{L^{p,r}} = (p/r)^{1/r} m^{1/p}.
  for (double p : {1.5, 3.0}) {
    for (double r : {1.0, 2.0, 5.0}) {
      const double v = lorentz_cells(p, r, {1.0, 1.0, 1.0, 0.0}, {0.5, 1.0, 1.5, 7.0});
      CHECK(v == doctest::Approx(std::pow(p / r, 1 / r) * std::pow(3.0, 1 / p)));
    }
    CHECK(lorentz_cells(p, inf, {1.0, 1.0}, {1.0, 2.0}) == doctest::Approx(std::pow(3.0, 1 / p)));
  }
  // L^{p,p} = L^p, and the order of cells does not matter.
  const std::vector<double> v{0.3, 2.0, 1.1, 0.7}, mu{1.0, 0.2, 0.5, 3.0};
  double lp = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) lp += std::pow(v[i], 3.0) * mu[i];
  CHECK(lorentz_cells(3.0, 3.0, v, mu) == doctest::Approx(std::cbrt(lp)));
  // Nesting L^{p,r1} ⊂ L^{p,r2} for r1 < r2 up to the standard constant.
  const double l1 = lorentz_cells(3.0, 1.0, v, mu), l2 = lorentz_cells(3.0, 2.0, v, mu),
               li = lorentz_cells(3.0, inf, v, mu);
  CHECK(li <= l2);
  CHECK(l2 <= l1 * std::pow(3.0, 0.5));

  const auto m = model();
  const auto f = ModeField::y_independent(m, sample(m->space(), bump));
  CHECK(lorentz_norm(4.0, 4.0, f).value == doctest::Approx(spatial_norm(4.0, f).value).epsilon(1e-12));
  CHECK_THROWS(lorentz_cells(0.5, 1.0, {1.0}, {1.0}));
}

TEST_CASE("time norms") {
  // Simpson and the 3/8 closing rule are exact on cubics.
  for (int K : {4, 5, 8, 9}) {
    std::vector<double> s;
    for (int k = 0; k <= K; ++k) {
      const double t = 2.0 * k / K;
      s.push_back(t * t * t + 1.0);
    }
    CHECK(time_norm(1.0, s, 0.0, 2.0).value == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(time_norm(ExtendedReal::infinity(), s, 0.0, 2.0).value == 9.0);
  }
  CHECK_THROWS(time_norm(2.0, {1.0, 2.0}, 0.0, 1.0));
}

TEST_CASE("mixed and smoothing norms of a static field") {
  const auto m = model();
  const auto f = ModeField::y_independent(m, sample(m->space(), bump));
  const std::vector<ModeField> samples(9, f);
  const double T = 2.0;
  CHECK(mixed_norm(4.0, 6.0, samples, 0.0, T).value ==
        doctest::Approx(spatial_norm(6.0, f).value * std::pow(T, 0.25)));
  const double beta = 0.8, vol = m->spec().volume();
  const double I = gauss_kronrod<double, 61>::integrate(
      [beta](double r) { return bump(r) * bump(r) * std::pow(r, 2 - 2 * beta); }, 0.0, 8.0, 10, 1e-14);
  CHECK(smoothing_norm(beta, samples, 0.0, T).value == doctest::Approx(std::sqrt(vol * I * T)).epsilon(1e-10));
}

TEST_CASE("Sobolev norm of the self-dual Gaussian") {
  // ‖ρ^s ρ^{ν-1/2} e^{-ρ²/2}‖² over ρ² dρ is Γ(s+ν+1)/2.
  const auto g = share(make_radial_grid(1e-5, 1e5, 2048, 3));
  for (double nu : {0.3, 1.5}) {
    const auto m = make_model(SpectralData(3, {{nu, 1}}), g);
    const auto f = ModeField::single_mode(
        m, {0, 0}, sample(g, [nu](double r) { return std::pow(r, nu - 0.5) * std::exp(-0.5 * r * r); }));
    for (double s : {-0.2, 0.0, 0.75, 2.0}) {
      INFO("nu = " << nu << ", s = " << s);
      CHECK(sobolev_norm(s, f).value == doctest::Approx(std::sqrt(std::tgamma(s + nu + 1) / 2)).epsilon(1e-7));
    }
  }
}

TEST_CASE("dyadic Q against nested quadrature") {
  // n = 3, ν = 1/2: (rρ)^{-1} J_{1/2}(rρ)² = 2 sin²(rρ) / (π (rρ)²).
  auto b = [](double x) { return std::exp(-x * x); };
  for (double R : {0.25, 2.0, 20.0}) {
    for (double M : {1.0, 4.0}) {
      auto inner = [&](double r) {
        return gauss_kronrod<double, 61>::integrate(
            [&](double rho) {
              const double x = r * rho, c = b(M * rho) * dyadic_bump(rho);
              return 2 * std::sin(x) * std::sin(x) / (std::numbers::pi * x * x) * c * c;
            },
            1.0, 2.0, 15, 1e-13);
      };
      const double ref = gauss_kronrod<double, 61>::integrate(inner, R, 2 * R, 15, 1e-12);
      INFO("R = " << R << ", M = " << M);
      CHECK(dyadic_Q(0.5, 3, b, R, M) == doctest::Approx(ref).epsilon(1e-9));
    }
  }
  const auto fg = share(make_radial_grid(1e-3, 1e3, 4096, 3));
  const auto bp = sample(fg, [&](double x) { return b(x); });
  CHECK(dyadic_Q(1.5, bp, 3.0, 2.0) == doctest::Approx(dyadic_Q(1.5, 3, b, 3.0, 2.0)).epsilon(1e-9));
  CHECK_THROWS_AS(dyadic_Q(1.5, bp, 3.0, 900.0), BadGrid);
}

TEST_CASE("norm reports serialize") {
  NormReport r;
  r.value = 2.0;
  r.kind = NormKind::lorentz;
  const auto j = r.to_json();
  CHECK(j.at("kind") == "lorentz");
  CHECK(j.at("value") == 2.0);
}
