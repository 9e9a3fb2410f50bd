#include "conewave/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"
#include "conewave/kernels.hpp"

namespace conewave {

void HankelDiagnostics::merge(const HankelDiagnostics& o) {
  refused += o.refused;
  max_dropped_fraction = std::max(max_dropped_fraction, o.max_dropped_fraction);
  kernel_truncated = kernel_truncated || o.kernel_truncated;
  boundary_leak = boundary_leak || o.boundary_leak;
  boundary_ratio = std::max(boundary_ratio, o.boundary_ratio);
}

nlohmann::json HankelDiagnostics::to_json() const {
  return {{"refused_outputs", refused},
          {"max_dropped_fraction", max_dropped_fraction},
          {"kernel_truncated", kernel_truncated},
          {"boundary_leak", boundary_leak},
          {"boundary_ratio", boundary_ratio}};
}

HankelPlan::HankelPlan(double nu, GridPtr space, GridPtr freq, HankelOptions opt)
    : nu_(nu), space_(std::move(space)), freq_(std::move(freq)), opt_(opt) {
  if (!(nu > -0.5))
    throw UnsupportedOrder("Hankel order must exceed -1/2");
  if (!space_ || !freq_) throw BadGrid("Hankel plan needs two grids");
  const double d = space_->log_step();
  if (std::abs(freq_->log_step() - d) > 1e-12 * d)
    throw BadGrid("space and frequency grids must share the log spacing");
  if (space_->dim() != freq_->dim())
    throw BadGrid("space and frequency grids disagree on dimension");

  budget_ = opt_.kappa * std::numbers::pi / d;
  const int M = space_->size() + freq_->size() - 1;
  const double x0 = space_->log_r_min() + freq_->log_r_min();
  const double power = -0.5 * (space_->dim() - 2);
  cut_ = static_cast<int>(std::floor((std::log(budget_) - x0) / d));
  cut_ = std::clamp(cut_, -1, M - 1);
  kernel_.assign(static_cast<std::size_t>(M), 0.0);
#pragma omp parallel for schedule(dynamic, 32) if (opt_.parallel)
  for (int m = 0; m <= cut_; ++m) {
    const double x = std::exp(x0 + m * d);
    kernel_[static_cast<std::size_t>(m)] = std::pow(x, power) * bessel_j(nu, x);
  }
}

RadialProfile HankelPlan::apply(const RadialProfile& in, const GridPtr& out_grid,
                                HankelDiagnostics* diag) const {
  const int n_in = in.size();
  const int n_out = out_grid->size();
  const auto& w = in.grid->weights();

  std::vector<cplx> u(static_cast<std::size_t>(n_in));
  std::vector<double> tail(static_cast<std::size_t>(n_in) + 1, 0.0);
  double peak = 0.0;
  for (int i = n_in - 1; i >= 0; --i) {
    const auto k = static_cast<std::size_t>(i);
    u[k] = w[k] * in.values[k];
    tail[k] = tail[k + 1] + std::norm(in.values[k]) * w[k];
    peak = std::max(peak, std::abs(in.values[k]));
  }
  const double total = tail[0];

  RadialProfile out(out_grid);
  if (opt_.parallel)
    kernels::correlate_parallel(kernel_.data(), u.data(), n_in,
                                out.values.data(), n_out, cut_);
  else
    kernels::correlate_serial(kernel_.data(), u.data(), n_in,
                              out.values.data(), n_out, cut_);

  HankelDiagnostics d;
  d.kernel_truncated = cut_ < static_cast<int>(kernel_.size()) - 1;
  if (total > 0.0) {
    const double limit = opt_.refuse_tol * opt_.refuse_tol * total;
    for (int j = 0; j < n_out; ++j) {
      const int last = cut_ - j;
      if (last >= n_in - 1) continue;
      const double dropped = last < 0 ? total : tail[static_cast<std::size_t>(last) + 1];
      if (dropped > limit) {
        out[j] = 0.0;
        ++d.refused;
      } else {
        d.max_dropped_fraction = std::max(d.max_dropped_fraction, dropped / total);
      }
    }
    const double ends = std::max(std::abs(in.values.front()), std::abs(in.values.back()));
    d.boundary_ratio = ends / peak;
    d.boundary_leak = d.boundary_ratio > opt_.leak_tol;
  }
  if (diag) diag->merge(d);
  return out;
}

FrequencyProfile HankelPlan::forward(const RadialProfile& f,
                                     HankelDiagnostics* diag) const {
  if (!(*f.grid == *space_)) throw BadGrid("profile is not on the plan's space grid");
  return apply(f, freq_, diag);
}

RadialProfile HankelPlan::inverse(const FrequencyProfile& g,
                                  HankelDiagnostics* diag) const {
  if (!(*g.grid == *freq_)) throw BadGrid("profile is not on the plan's frequency grid");
  return apply(g, space_, diag);
}

FrequencyProfile hankel_forward(double nu, const RadialProfile& f,
                                const GridPtr& freq_grid,
                                const HankelOptions& opt,
                                HankelDiagnostics* diag) {
  return HankelPlan(nu, f.grid, freq_grid, opt).forward(f, diag);
}

RadialProfile k0_operator(double mu, double nu, const RadialProfile& f,
                          const GridPtr& freq_grid, const HankelOptions& opt,
                          HankelDiagnostics* diag) {
  const HankelPlan inner(nu, f.grid, freq_grid, opt);
  const HankelPlan outer(mu, f.grid, freq_grid, opt);
  return outer.inverse(inner.forward(f, diag), diag);
}

}  // namespace conewave
