#include "conewave/bumps.hpp"

#include <cmath>
#include <random>

namespace conewave {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double lp_low(double rho) { return 1.0 - smooth_step(2.0 * rho - 1.0); }

double lp_bump(double rho) { return lp_low(0.5 * rho) - lp_low(rho); }

double dyadic_bump(double rho) { return compact_bump(rho, 1.5, 0.5); }

double compact_bump(double r, double center, double halfwidth) {
  const double s = (r - center) / halfwidth;
  if (std::abs(s) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double gaussian_bump(double r, double center, double width) {
  const double s = (r - center) / width;
  return std::exp(-s * s);
}

double eval_bump(const BumpParams& b, double r) {
  const double env = compact_bump(r, b.center, b.halfwidth);
  if (env == 0.0) return 0.0;
  return b.amplitude * env * std::cos(b.modulation * (r - b.center));
}

std::vector<BumpParams> random_bump_family(std::uint64_t seed, int count,
                                           const BumpRanges& ranges) {
  std::mt19937_64 gen(seed);
  auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
  std::vector<BumpParams> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    BumpParams b;
    b.center = ranges.center_lo + (ranges.center_hi - ranges.center_lo) * unit();
    b.halfwidth =
        b.center * (ranges.width_lo + (ranges.width_hi - ranges.width_lo) * unit());
    b.modulation = ranges.modulation_hi * unit() / b.halfwidth;
    b.amplitude = 0.5 + unit();
    out.push_back(b);
  }
  return out;
}

}  // namespace conewave
