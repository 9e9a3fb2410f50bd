#pragma once

// Norm functionals on fields over C(Y): Lebesgue, Lorentz, mixed space-time,
// homogeneous Sobolev, the weighted local-smoothing norm, and the dyadic
// quantity Q_ν(R, M).
//
// L^r norms with r != 2 need pointwise values, which exist only for fields
// declared independent of y (constant angular part |Y|^{-1/2}) or for a
// single stored mode, where the same constant angular modulus is assumed.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conewave/calculus.hpp"

namespace conewave {

enum class NormKind { lebesgue, lorentz, mixed, sobolev, weighted };

const char* to_string(NormKind k);

struct NormReport {
  double value = 0.0;
  NormKind kind = NormKind::lebesgue;
  nlohmann::json params = nlohmann::json::object();
  double error_estimate = 0.0;

  nlohmann::json to_json() const;
};

/// Node range [i0, i1] of the space grid over which the radial integral runs.
struct Window {
  int i0 = 0;
  int i1 = -1;  // -1: through the last node
};

/// Window [a, b] whose endpoints must be grid nodes (BadGrid otherwise).
Window node_window(const RadialGrid& g, double a, double b);

NormReport spatial_norm(const ExtendedReal& r_exp, const ModeField& f,
                        const Window& w = {});

/// Lorentz quasi-norm (∫_0^∞ (s^{1/p} f*(s))^{rr} ds/s)^{1/rr}, evaluated
/// exactly on the decreasing rearrangement of the quadrature cells.
NormReport lorentz_norm(double p, const ExtendedReal& rr, const ModeField& f,
                        const Window& w = {});

/// Lorentz quasi-norm of explicit (value, measure) cells.
double lorentz_cells(double p, const ExtendedReal& rr, std::vector<double> values,
                     std::vector<double> measures);

/// L^q over [t0, t1] of uniformly sampled inner norms: composite Simpson
/// (3/8 rule closing odd interval counts) of n_k^q, or max for q = ∞.
NormReport time_norm(const ExtendedReal& q, const std::vector<double>& inner,
                     double t0, double t1);

NormReport mixed_norm(const ExtendedReal& q, const ExtendedReal& r_exp,
                      const std::vector<ModeField>& samples, double t0,
                      double t1, const Window& w = {});

/// ‖L_V^{s/2} f‖_{L²} = (Σ ‖ρ^s b_{ν,ℓ}‖²)^{1/2}.
NormReport sobolev_norm(double s, const ModeField& f, Diagnostics* diag = nullptr);

/// ‖r^{-β} u‖_{L²_t L²(X)} over the samples.
NormReport smoothing_norm(double beta, const std::vector<ModeField>& samples,
                          double t0, double t1, const Window& w = {});

/// Q_ν(R, M) = ∫_R^{2R}∫_0^∞ |(rρ)^{-(n-2)/2} J_ν(rρ) b(Mρ) χ(ρ)|² dρ dr with
/// χ the fixed bump on [1, 2].
double dyadic_Q(double nu, int n, const std::function<double(double)>& b,
                double R, double M);

/// Same with b given on a frequency grid (cubic interpolation in log ρ).
double dyadic_Q(double nu, const FrequencyProfile& b, double R, double M);

}  // namespace conewave
