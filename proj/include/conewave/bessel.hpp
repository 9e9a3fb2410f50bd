#pragma once

// Bessel functions J_nu of real order nu > -1/2 and nonnegative argument.

namespace conewave {

enum class BesselRegime { series, integral, asymptotic };

const char* to_string(BesselRegime r);

struct BesselEval {
  double nu = 0.0;
  double value = 0.0;
  BesselRegime regime = BesselRegime::series;
};

/// J_nu(r), reporting the evaluation path. Throws UnsupportedOrder for
/// nu <= -1/2, and for r = 0 with nu < 0 where J_nu is unbounded.
BesselEval bessel_eval(double nu, double r);

double bessel_j(double nu, double r);

/// Leading small-argument term r^nu / (2^nu Γ(nu+1)).
double bessel_leading(double nu, double r);

/// S_nu(r) = J_nu(r) - r^nu / (2^nu Γ(nu+1)), free of cancellation for small r.
double bessel_remainder(double nu, double r);

/// Right-hand side of |S_nu(r)| <= 2^-nu r^{nu+1} / ((nu+1/2)|Γ(nu+1/2)|Γ(1/2)),
/// from |e^{isr} - 1| <= |s| r in the Poisson integral.
double bessel_remainder_bound(double nu, double r);

/// r^nu / (2^nu Γ(nu+1/2) Γ(1/2)) (1 + 1/(nu+1/2)); bounds |J_nu(r)| up to a
/// constant for r <= nu + 1.
double bessel_small_argument_envelope(double nu, double r);

namespace detail {

struct RegimeBounds {
  double series_max;      // series used for r <= series_max
  double integral_min;    // quadrature for integral_min <= r < asymptotic_min
  double asymptotic_min;  // Hankel expansion for r >= asymptotic_min
};

RegimeBounds regime_bounds(double nu);

// Individual evaluation paths, exposed so crossover agreement can be tested.
double series(double nu, double x);
double recurrence(double nu, double x);  // series-seeded downward recurrence
double integral(double nu, double x);
double asymptotic(double nu, double x);

}  // namespace detail

}  // namespace conewave
