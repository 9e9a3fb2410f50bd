#include "conewave/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "conewave/errors.hpp"
#include "gauss.hpp"

namespace conewave {

namespace {

using detail::gauss_panel;

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// sin(πa), cos(πa) with exact zeros at integers / half-integers.
double sinpi(double a) {
  if (a < 0.0) return -sinpi(-a);
  a = std::fmod(a, 2.0);
  if (a >= 1.0) return -sinpi(a - 1.0);
  if (a == 0.0) return 0.0;
  if (a == 0.5) return 1.0;
  return std::sin(kPi * std::min(a, 1.0 - a));
}

double cospi(double a) {
  a = std::fmod(std::abs(a), 2.0);
  if (a > 1.0) a = 2.0 - a;
  if (a == 0.5) return 0.0;
  if (a < 0.5) return std::cos(kPi * a);
  return -std::cos(kPi * (1.0 - a));
}

// (x/2)^nu / Γ(nu+1)
double prefactor(double nu, double x) {
  if (nu + 1.0 < 170.0) {
    const double p = std::pow(0.5 * x, nu) / std::tgamma(nu + 1.0);
    if (std::isnormal(p)) return p;
  }
  return std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0));
}

// Σ_{k >= k0} (-x²/4)^k / (k! (nu+1)_k)
double normalized_series(double nu, double x, int k0) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = k0 == 0 ? 1.0 : 0.0;
  for (int k = 1; k < 10000; ++k) {
    term *= -q / (k * (nu + k));
    if (k >= k0) sum += term;
    if (k > q && std::abs(term) <= kEps * 1e-2 * std::abs(sum)) break;
  }
  return sum;
}

void check_order(double nu) {
  if (!(nu > -0.5))
    throw UnsupportedOrder("Bessel order must exceed -1/2, got " +
                           std::to_string(nu));
}

void check_argument(double r) {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw Error("Bessel argument must be finite and >= 0");
}

}  // namespace

const char* to_string(BesselRegime r) {
  switch (r) {
    case BesselRegime::series: return "series";
    case BesselRegime::integral: return "integral";
    case BesselRegime::asymptotic: return "asymptotic";
  }
  return "?";
}

namespace detail {

RegimeBounds regime_bounds(double nu) {
  const double s = 2.0 * std::sqrt(nu + 1.0);
  return {s, std::max(s, nu), std::max(25.0, nu * nu)};
}

double series(double nu, double x) {
  return prefactor(nu, x) * normalized_series(nu, x, 0);
}

double recurrence(double nu, double x) {
  // s_mu = J_mu(x) Γ(mu+1) (2/x)^mu obeys
  // s_{mu-1} = s_mu - (x²/4) s_{mu+1} / (mu(mu+1)); J is the minimal solution,
  // so running it downward from orders where the series is benign is stable.
  const double q = 0.25 * x * x;
  const int m = static_cast<int>(std::max(0.0, std::ceil(q - nu))) + 2;
  const double top = nu + m;
  double s_hi = normalized_series(top + 1.0, x, 0);
  double s = normalized_series(top, x, 0);
  for (int j = 0; j < m; ++j) {
    const double k = top - j;
    const double s_lo = s - q / (k * (k + 1.0)) * s_hi;
    s_hi = s;
    s = s_lo;
  }
  return prefactor(nu, x) * s;
}

double integral(double nu, double x) {
  // J_nu(x) = (1/π)∫_0^π cos(nu θ - x sin θ) dθ
  //         - (sin nu π / π) ∫_0^∞ exp(-x sinh t - nu t) dt
  const int panels =
      static_cast<int>(std::ceil((std::abs(nu) + x) * kPi / 10.0)) + 1;
  const double h = kPi / panels;
  auto osc = [nu, x](double th) { return std::cos(nu * th - x * std::sin(th)); };
  double a = 0.0;
  for (int p = 0; p < panels; ++p) a += gauss_panel(osc, p * h, (p + 1) * h);
  a /= kPi;

  const double snp = sinpi(nu);
  if (snp == 0.0) return a;
  auto decay = [nu, x](double t) { return std::exp(-x * std::sinh(t) - nu * t); };
  const double unit = 1.0 / (x + nu);
  double b = 0.0, lo = 0.0, width = unit;
  for (int p = 0; p < 200; ++p) {
    if (x * std::sinh(lo) + nu * lo > 60.0) break;
    b += gauss_panel(decay, lo, lo + width);
    lo += width;
    width *= 2.0;
  }
  return a - snp / kPi * b;
}

double asymptotic(double nu, double x) {
  // J_nu(x) ~ sqrt(2/(πx)) (P cos ω - Q sin ω), ω = x - nu π/2 - π/4
  const double mu = 4.0 * nu * nu;
  double P = 1.0, Q = 0.0, term = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (next == 0.0) break;
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    switch (k % 4) {
      case 1: Q += term; break;
      case 2: P -= term; break;
      case 3: Q -= term; break;
      case 0: P += term; break;
    }
    if (std::abs(term) < kEps * 1e-2 * (std::abs(P) + std::abs(Q))) break;
  }
  const double phase = 0.5 * nu + 0.25;
  const double cphi = cospi(phase), sphi = sinpi(phase);
  const double cx = std::cos(x), sx = std::sin(x);
  const double cw = cx * cphi + sx * sphi;
  const double sw = sx * cphi - cx * sphi;
  return std::sqrt(2.0 / (kPi * x)) * (P * cw - Q * sw);
}

}  // namespace detail

BesselEval bessel_eval(double nu, double r) {
  check_order(nu);
  check_argument(r);
  if (r == 0.0) {
    if (nu == 0.0) return {nu, 1.0, BesselRegime::series};
    if (nu > 0.0) return {nu, 0.0, BesselRegime::series};
    throw UnsupportedOrder("J_nu(0) is unbounded for nu < 0");
  }
  const auto b = detail::regime_bounds(nu);
  if (r <= b.series_max) return {nu, detail::series(nu, r), BesselRegime::series};
  if (r < b.integral_min)
    return {nu, detail::recurrence(nu, r), BesselRegime::series};
  if (r < b.asymptotic_min)
    return {nu, detail::integral(nu, r), BesselRegime::integral};
  return {nu, detail::asymptotic(nu, r), BesselRegime::asymptotic};
}

double bessel_j(double nu, double r) { return bessel_eval(nu, r).value; }

double bessel_leading(double nu, double r) {
  check_order(nu);
  check_argument(r);
  if (r == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw UnsupportedOrder("r^nu is unbounded at 0 for nu < 0");
  }
  return prefactor(nu, r);
}

double bessel_remainder(double nu, double r) {
  check_order(nu);
  check_argument(r);
  if (r == 0.0) return 0.0;
  if (r <= detail::regime_bounds(nu).series_max)
    return prefactor(nu, r) * normalized_series(nu, r, 1);
  return bessel_j(nu, r) - prefactor(nu, r);
}

double bessel_remainder_bound(double nu, double r) {
  check_order(nu);
  if (r == 0.0) return 0.0;
  const double lg = std::lgamma(nu + 0.5);  // log|Γ(nu+1/2)|
  return std::exp(-nu * std::numbers::ln2 + (nu + 1.0) * std::log(r) - lg -
                  0.5 * std::log(kPi)) /
         (nu + 0.5);
}

double bessel_small_argument_envelope(double nu, double r) {
  check_order(nu);
  if (r == 0.0) return nu == 0.0 ? 3.0 / kPi : 0.0;
  const double lg = std::lgamma(nu + 0.5);
  return std::exp(nu * std::log(0.5 * r) - lg - 0.5 * std::log(kPi)) *
         (1.0 + 1.0 / (nu + 0.5));
}

}  // namespace conewave
