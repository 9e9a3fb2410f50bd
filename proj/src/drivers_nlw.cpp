#include <cmath>

#include "conewave/nlw.hpp"
#include "harness_util.hpp"

namespace conewave {

using nlohmann::json;
using namespace detail;

namespace {

double relative_drift(const std::vector<double>& E) {
  if (E.empty()) return 0.0;
  double d = 0.0;
  for (double e : E) d = std::max(d, std::abs(e - E.front()));
  return E.front() != 0.0 ? d / std::abs(E.front()) : d;
}

void add_trace(ExperimentReport& rep, const IterationTrace& tr, const json& base) {
  for (const auto& row : tr.rows) {
    json prm = base;
    prm["iter"] = row.iter;
    rep.add("small_data_nlw", "picard_distance", prm, row.distance);
    rep.add("small_data_nlw", "strichartz_norm", prm, row.strichartz_norm);
    rep.add("small_data_nlw", "energy_drift", prm, row.energy_drift);
  }
}

}  // namespace

ExperimentReport run_nlw(const ExperimentConfig& cfg) {
  ExperimentReport rep;
  rep.config = cfg;
  const auto& p = cfg.params;
  const auto spec = spectral_from_config(cfg.spectral);
  const int n = spec.dim();
  const auto g = grid_from_config(cfg.grid, n);
  rep.record_grid(*g);
  const auto model = make_model(spec, g);
  const char* est = "small_data_nlw";

  NlwConfig base;
  base.gamma = number(p, "gamma");
  base.T = number(p, "T");
  base.h = number(p, "h");
  base.tol = number(p, "tol");
  base.max_iter = integer(p, "max_iter");

  const auto& prof = p.at("profile");
  const double c = number(prof, "center"), w = number(prof, "width");
  auto shape = space_field(model, [c, w](double r) { return gaussian_bump(r, c, w); });
  ModeField zero(model);
  zero.set_y_independent(true);
  shape *= 1.0 / data_size(shape, zero);
  auto sized = [&](double delta) {
    ModeField u0 = shape;
    u0 *= delta;
    return u0;
  };

  // Zero data is a fixed point of the iteration.
  {
    const auto sol = picard_solve(zero, zero, base);
    rep.add(est, "zero_data_iterations", json::object(), static_cast<double>(sol.trace.rows.size()));
    rep.add(est, "zero_data_distance", json::object(), sol.trace.rows.back().distance);
    rep.summary["zero_data"] = {{"iterations", sol.trace.rows.size()},
                                {"converged", sol.converged},
                                {"distance", sol.trace.rows.back().distance}};
  }

  // Small data run.
  const double delta = number(p, "delta");
  try {
    const auto sol = picard_solve(sized(delta), zero, base);
    add_trace(rep, sol.trace, {{"delta", delta}, {"h", base.h}});
    const double drift = relative_drift(sol.energy);
    const double ratio = max_contraction(sol.trace);
    rep.add(est, "max_contraction", {{"delta", delta}}, ratio);
    rep.add(est, "energy_relative_drift", {{"delta", delta}, {"h", base.h}}, drift);
    const auto scat = scattering_data(sol);
    for (std::size_t k = 0; k < scat.times.size(); ++k)
      rep.add(est, "scattering_defect", {{"delta", delta}, {"t", scat.times[k]}}, scat.defect[k]);
    rep.diag.merge(sol.diag);
    json ratios = sol.trace.ratios();
    rep.summary["small_data"] = {{"delta", delta},
                                 {"converged", sol.converged},
                                 {"iterations", sol.trace.rows.size()},
                                 {"ratios", ratios},
                                 {"max_contraction", ratio},
                                 {"energy_drift", drift}};
  } catch (const IterationDiverged& e) {
    add_trace(rep, e.trace(), {{"delta", delta}, {"h", base.h}});
    rep.add(est, "diverged", {{"delta", delta}}, 1.0);
    rep.summary["small_data"] = {{"delta", delta}, {"converged", false}, {"diverged", e.what()}};
  }

  // Energy conservation under time-step refinement at a larger size.
  {
    const auto& es = p.at("energy_study");
    const double de = number(es, "delta");
    std::vector<double> hs, drifts;
    json rows = json::array();
    for (double h : numbers(es, "h")) {
      NlwConfig c2 = base;
      c2.h = h;
      try {
        const auto sol = picard_solve(sized(de), zero, c2);
        const double d = relative_drift(sol.energy);
        hs.push_back(h);
        drifts.push_back(d);
        rep.add(est, "energy_relative_drift", {{"delta", de}, {"h", h}}, d);
        rows.push_back({{"h", h}, {"drift", d}, {"converged", sol.converged}});
      } catch (const Error& e) {
        rep.notes.push_back(std::string("energy study at h=") + std::to_string(h) + ": " + e.what());
        rows.push_back({{"h", h}, {"error", e.what()}});
      }
    }
    rep.summary["energy_study"] = {{"delta", de}, {"runs", rows}};
    if (hs.size() >= 2) {
      auto fit = fit_loglog(hs, drifts);
      rep.fits["energy_order"] = fit;
      rep.summary["energy_study"]["order"] = fit.slope;
      rep.summary["energy_study"]["max_drift"] = max_of(drifts);
    }
  }

  // Empirical small-data boundary.
  if (p.contains("threshold")) {
    const auto& th = p.at("threshold");
    NlwConfig c3 = base;
    c3.h = number(th, "h");
    try {
      const auto s = delta_threshold(shape, zero, c3, number(th, "lo"), number(th, "hi"),
                                     integer(th, "steps"));
      for (const auto& [d, ok] : s.probes)
        rep.add(est, "threshold_probe", {{"delta", d}}, ok ? 1.0 : 0.0);
      rep.add(est, "delta_pass", json::object(), s.delta_pass);
      rep.add(est, "delta_fail", json::object(), s.delta_fail);
      rep.summary["threshold"] = {{"delta_pass", s.delta_pass}, {"delta_fail", s.delta_fail}};
    } catch (const Error& e) {
      rep.notes.push_back(std::string("threshold search: ") + e.what());
      rep.summary["threshold"] = {{"error", e.what()}};
    }
  }
  return rep;
}

}  // namespace conewave
