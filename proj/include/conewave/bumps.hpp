#pragma once

// Fixed smooth cutoffs and the seeded random bump families used as test data.

#include <cstdint>
#include <vector>

namespace conewave {

/// C^∞ step: 0 for x <= 0, 1 for x >= 1.
double smooth_step(double x);

/// Ψ(ρ) = 1 on [0, 1/2], 0 on [1, ∞).
double lp_low(double rho);

/// φ(ρ) = Ψ(ρ/2) - Ψ(ρ), supported in [1/2, 2]; Σ_j φ(2^{-j}ρ) telescopes to 1.
double lp_bump(double rho);

/// Fixed bump χ supported in [1, 2], peak 1 at ρ = 3/2.
double dyadic_bump(double rho);

/// exp(1 - 1/(1 - s²)) with s = (r - center)/halfwidth, zero for |s| >= 1.
double compact_bump(double r, double center, double halfwidth);

double gaussian_bump(double r, double center, double width);

struct BumpParams {
  double center = 1.0;
  double halfwidth = 0.5;
  double modulation = 0.0;
  double amplitude = 1.0;
};

double eval_bump(const BumpParams& b, double r);

struct BumpRanges {
  double center_lo = 0.5, center_hi = 2.0;
  double width_lo = 0.2, width_hi = 0.8;  // as a fraction of the center
  double modulation_hi = 4.0;
};

/// Deterministic across platforms: mt19937_64 with an explicit 53-bit map to
/// [0, 1).
std::vector<BumpParams> random_bump_family(std::uint64_t seed, int count,
                                           const BumpRanges& ranges = {});

}  // namespace conewave
