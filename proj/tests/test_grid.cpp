#include <cmath>
#include <numbers>
#include <sstream>

#include "conewave/bumps.hpp"
#include "conewave/errors.hpp"
#include "conewave/grid.hpp"
#include "doctest.h"

using namespace conewave;

namespace {

double integrate(const RadialGrid& g, double (*f)(double)) {
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += g.weight(i) * f(g.node(i));
  return s;
}

double gauss(double r) { return std::exp(-r * r); }

}  // namespace

TEST_CASE("construction and validation") {
  const auto g = make_radial_grid(1e-3, 1e3, 1025, 3);
  CHECK(g.size() == 1025);
  CHECK(g.r_min() == doctest::Approx(1e-3));
  CHECK(g.r_max() == doctest::Approx(1e3));
  CHECK(g.log_step() == doctest::Approx(std::log(1e6) / 1024));
  CHECK(g.index_of(1.0) == 512);
  CHECK(g.index_of(1.001) == -1);

  CHECK_THROWS_AS(make_radial_grid(0.0, 1.0, 10, 3), BadGrid);
  CHECK_THROWS_AS(make_radial_grid(2.0, 1.0, 10, 3), BadGrid);
  CHECK_THROWS_AS(make_radial_grid(1.0, 2.0, 1, 3), BadGrid);
  CHECK_THROWS_AS(make_radial_grid(1.0, 2.0, 10, 2), BadGrid);
}

TEST_CASE("quadrature weights integrate against r^{n-1}") {
  // ∫ e^{-r²} r^{n-1} dr = Γ(n/2)/2.
  for (int n : {3, 4, 5}) {
    const auto g = make_radial_grid(1e-4, 20.0, 800, n);
    CHECK(integrate(g, gauss) == doctest::Approx(std::tgamma(0.5 * n) / 2).epsilon(1e-10));
  }
}

TEST_CASE("end corrections are fourth order on a truncated integrand") {
  // ∫_1^2 r² dr with n = 3, f = 1: the integrand in log r is e^{3x}.
  auto err = [](int N) {
    const auto g = make_radial_grid(1.0, 2.0, N, 3);
    double s = 0.0;
    for (double w : g.weights()) s += w;
    return std::abs(s - 7.0 / 3.0);
  };
  const double order = std::log2(err(32) / err(64));
  CHECK(order > 3.7);
}

TEST_CASE("window weights restrict the same rule") {
  const auto g = make_radial_grid(0.5, 4.0, 64, 3);
  const auto w = g.window_weights(0, g.size() - 1);
  for (int i = 0; i < g.size(); ++i) CHECK(w[static_cast<std::size_t>(i)] == doctest::Approx(g.weight(i)));
  const auto part = g.window_weights(8, 40);
  double sum = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double wi = part[static_cast<std::size_t>(i)];
    if (i < 8 || i > 40) CHECK(wi == 0.0);
    sum += wi;
  }
  const double a = g.node(8), b = g.node(40);
  CHECK(sum == doctest::Approx((b * b * b - a * a * a) / 3).epsilon(2e-5));
}

TEST_CASE("reciprocal and extended grids share the lattice") {
  const auto g = make_radial_grid(1e-2, 1e2, 257, 4);
  const auto f = g.reciprocal();
  CHECK(f.log_step() == doctest::Approx(g.log_step()));
  CHECK(f.r_min() == doctest::Approx(1.0 / g.r_max()));
  CHECK(f.r_max() == doctest::Approx(1.0 / g.r_min()));
  CHECK(f.dim() == 4);
  const auto e = g.extended(3, 5);
  CHECK(e.size() == g.size() + 8);
  CHECK(e.node(3) == doctest::Approx(g.r_min()));
  CHECK(e.log_step() == doctest::Approx(g.log_step()));

  const auto l = make_lattice_grid(1.0, std::log(2.0) / 8, 0.25, 8.0, 3);
  CHECK(l.r_min() <= 0.25 * (1 + 1e-12));
  CHECK(l.r_max() >= 8.0 * (1 - 1e-12));
  CHECK(l.index_of(1.0) >= 0);
  CHECK(l.index_of(2.0) >= 0);
}

TEST_CASE("hash and description identify the grid") {
  const auto a = make_radial_grid(1e-3, 1e3, 512, 3);
  const auto b = make_radial_grid(1e-3, 1e3, 512, 3);
  const auto c = make_radial_grid(1e-3, 1e3, 513, 3);
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
  CHECK(a.describe().at("N") == 512);
}

TEST_CASE("node shift is an exact dilation") {
  const auto g = share(make_radial_grid(1e-2, 1e2, 401, 3));
  auto f = [](double r) { return std::exp(-std::pow(std::log(r), 2)); };
  const auto p = sample(g, f);
  const int k = 10;
  const double lam = std::exp(k * g->log_step());
  const auto q = shift_nodes(p, k);
  for (int i = k; i < g->size(); ++i) CHECK(std::abs(q[i] - f(g->node(i) / lam)) < 1e-14);
  for (int i = 0; i < k; ++i) CHECK(q[i] == cplx(0.0));
  const auto back = shift_nodes(q, -k);
  for (int i = 0; i < g->size() - k; ++i) CHECK(back[i] == p[i]);
}

TEST_CASE("profile arithmetic and norms") {
  const auto g = share(make_radial_grid(1e-4, 20.0, 800, 3));
  const auto p = sample(g, [](double r) { return cplx(gauss(r), 0.0); });
  CHECK(p.l2_norm() == doctest::Approx(std::sqrt(std::sqrt(std::numbers::pi / 2) / 8)).epsilon(1e-9));
  auto q = 2.0 * p;
  q -= p;
  CHECK((q - p).max_abs() == 0.0);
  CHECK(p.imag_residue() == 0.0);
  auto z = p;
  z[10] = cplx(z[10].real(), 0.5);
  CHECK(z.imag_residue() == doctest::Approx(0.5 / std::abs(z[10])));
}

TEST_CASE("profile csv round trip") {
  const auto g = share(make_radial_grid(0.1, 10.0, 33, 3));
  auto p = sample(g, [](double r) { return cplx(std::sin(r), 0.0); });
  std::stringstream ss;
  write_profile_csv(ss, p);
  const auto back = read_profile_csv(ss);
  CHECK(*back.grid == *g);
  CHECK((back - p).max_abs() < 1e-15);

  p[3] = cplx(1.0, -2.0);
  std::stringstream s2;
  write_profile_csv(s2, p);
  const auto c = read_profile_csv(s2);
  CHECK(c[3] == cplx(1.0, -2.0));
}

TEST_CASE("bump families are seeded and respect their ranges") {
  const BumpRanges rg{1.0, 3.0, 0.3, 0.6, 4.0};
  const auto a = random_bump_family(5, 16, rg);
  const auto b = random_bump_family(5, 16, rg);
  const auto c = random_bump_family(6, 16, rg);
  REQUIRE(a.size() == 16);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].center == b[i].center);
    CHECK(a[i].modulation == b[i].modulation);
    differs |= a[i].center != c[i].center;
    CHECK(a[i].center >= 1.0);
    CHECK(a[i].center <= 3.0);
    CHECK(a[i].halfwidth >= 0.3 * a[i].center);
    CHECK(a[i].halfwidth <= 0.6 * a[i].center);
    CHECK(eval_bump(a[i], a[i].center + a[i].halfwidth) == 0.0);
  }
  CHECK(differs);
  CHECK(smooth_step(0.0) == 0.0);
  CHECK(smooth_step(1.0) == 1.0);
  CHECK(smooth_step(0.5) == doctest::Approx(0.5));
  CHECK(lp_low(0.5) == 1.0);
  CHECK(lp_low(1.0) == 0.0);
  CHECK(dyadic_bump(1.5) == doctest::Approx(1.0));
  CHECK(dyadic_bump(0.99) == 0.0);
  CHECK(dyadic_bump(2.01) == 0.0);
}
