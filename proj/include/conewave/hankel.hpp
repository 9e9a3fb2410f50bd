#pragma once

// Hankel transform of order nu on log grids,
//   (H_ν f)(ρ) = ∫_0^∞ (rρ)^{-(n-2)/2} J_ν(rρ) f(r) r^{n-1} dr,
// which is its own inverse.

#include <vector>

#include "conewave/grid.hpp"

namespace conewave {

struct HankelOptions {
  /// Products rρ above kappa·π/Δ are under-resolved by the log grid (the
  /// kernel oscillates faster than the sampling) and are never used.
  double kappa = 0.8;
  /// An output value is refused (set to 0) when the L² fraction of the input
  /// that would need unresolved products exceeds refuse_tol².
  double refuse_tol = 1e-8;
  /// End values above leak_tol·max|f| raise the boundary diagnostic.
  double leak_tol = 1e-12;
  bool parallel = true;
};

struct HankelDiagnostics {
  int refused = 0;
  double max_dropped_fraction = 0.0;
  bool kernel_truncated = false;
  bool boundary_leak = false;
  double boundary_ratio = 0.0;

  void merge(const HankelDiagnostics& o);
  nlohmann::json to_json() const;
};

class HankelPlan {
 public:
  /// Both grids must share the log spacing and dimension.
  HankelPlan(double nu, GridPtr space, GridPtr freq, HankelOptions opt = {});

  double nu() const { return nu_; }
  const GridPtr& space() const { return space_; }
  const GridPtr& freq() const { return freq_; }
  const HankelOptions& options() const { return opt_; }
  /// Largest resolved product rρ.
  double budget() const { return budget_; }
  const std::vector<double>& kernel() const { return kernel_; }
  int cut() const { return cut_; }

  FrequencyProfile forward(const RadialProfile& f,
                           HankelDiagnostics* diag = nullptr) const;
  RadialProfile inverse(const FrequencyProfile& g,
                        HankelDiagnostics* diag = nullptr) const;

 private:
  RadialProfile apply(const RadialProfile& in, const GridPtr& out_grid,
                      HankelDiagnostics* diag) const;

  double nu_;
  GridPtr space_, freq_;
  HankelOptions opt_;
  double budget_ = 0.0;
  int cut_ = -1;
  std::vector<double> kernel_;
};

FrequencyProfile hankel_forward(double nu, const RadialProfile& f,
                                const GridPtr& freq_grid,
                                const HankelOptions& opt = {},
                                HankelDiagnostics* diag = nullptr);

/// K⁰_{μ,ν} f = H_μ(H_ν f) through one intermediate frequency profile.
RadialProfile k0_operator(double mu, double nu, const RadialProfile& f,
                          const GridPtr& freq_grid,
                          const HankelOptions& opt = {},
                          HankelDiagnostics* diag = nullptr);

}  // namespace conewave
