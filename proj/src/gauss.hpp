#pragma once

// 20-point Gauss-Legendre rule shared by the special-function and norm code.

#include <array>
#include <cmath>
#include <numbers>

namespace conewave::detail {

struct GaussLegendre {
  static constexpr int n = 20;
  std::array<double, n> x{};
  std::array<double, n> w{};

  GaussLegendre() {
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

inline const GaussLegendre& gauss() {
  static const GaussLegendre g;
  return g;
}

template <class F>
double gauss_panel(F&& f, double a, double b) {
  const auto& g = gauss();
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < GaussLegendre::n; ++i) s += g.w[i] * f(c + h * g.x[i]);
  return h * s;
}

}  // namespace conewave::detail
