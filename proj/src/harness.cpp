#include "conewave/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "harness_util.hpp"

namespace conewave {

using nlohmann::json;

namespace {

struct Name {
  Experiment e;
  const char* name;
};

constexpr Name kNames[] = {
    {Experiment::counterexample, "counterexample"},
    {Experiment::smoothing_sweep, "smoothing_sweep"},
    {Experiment::strichartz_ratio, "strichartz_ratio"},
    {Experiment::sobolev_check, "sobolev_check"},
    {Experiment::square_function, "square_function"},
    {Experiment::riesz_probe, "riesz_probe"},
    {Experiment::nlw_run, "nlw_run"},
    {Experiment::euclid_oracle, "euclid_oracle"},
};

json ladder(double base, int from, int to) {
  json out = json::array();
  const int step = from <= to ? 1 : -1;
  for (int k = from;; k += step) {
    out.push_back(std::pow(base, k));
    if (k == to) break;
  }
  return out;
}

json family(double c_lo, double c_hi, double w_lo, double w_hi) {
  return {{"count", 32}, {"center", {c_lo, c_hi}}, {"width", {w_lo, w_hi}},
          {"modulation", 4.0}};
}

double window_lower_q(int n, double nu0, double s) {
  return n / std::min(1.0 + n / 2.0 + nu0 - s, static_cast<double>(n));
}

double window_upper_q(int n, double nu0) {
  const double d = std::max(n / 2.0 - 1.0 - nu0, 0.0);
  return d == 0.0 ? INFINITY : n / d;
}

}  // namespace

const char* to_string(Experiment e) {
  for (const auto& x : kNames)
    if (x.e == e) return x.name;
  return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
  if (name == "nlw") return Experiment::nlw_run;
  for (const auto& x : kNames)
    if (name == x.name) return x.e;
  throw ConfigError("unknown experiment '" + name + "'");
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> v;
    for (const auto& x : kNames) v.push_back(x.e);
    return v;
  }();
  return all;
}

json ExperimentConfig::to_json() const {
  return {{"experiment", to_string(experiment)},
          {"spectral", spectral},
          {"grid", grid},
          {"params", params},
          {"seed", seed}};
}

ExperimentConfig default_config(Experiment e) {
  ExperimentConfig c;
  c.experiment = e;
  switch (e) {
    case Experiment::counterexample:
      c.spectral = {{"n", 3}, {"nu0", 0.3}};
      c.grid = {{"anchor", 1.0}, {"per_octave", 64}, {"r_lo", std::ldexp(1.0, -14)},
                {"r_hi", 16.0}};
      c.params = {{"q", 4.0}, {"r", 100.0}, {"T", 0.25}, {"samples", 33},
                  {"eps", ladder(2.0, -3, -9)}, {"r_outer", 1.0}};
      break;
    case Experiment::smoothing_sweep:
      c.spectral = {{"n", 3}, {"nu0", 0.5}};
      c.grid = {{"anchor", 1.0}, {"per_octave", 160}, {"r_lo", std::ldexp(1.0, -12)},
                {"r_hi", 16.0}};
      c.params = {
          {"dyads", ladder(2.0, 0, 6)},
          {"T", 4.0},
          {"steps_per_unit", 8},
          {"divergence",
           {{"grid",
             {{"anchor", 1.0}, {"per_octave", 64}, {"r_lo", std::ldexp(1.0, -16)},
              {"r_hi", 32.0}}},
            {"T", 1.0},
            {"steps_per_unit", 16},
            {"floors", ladder(2.0, -8, -16)}}},
          {"Q",
           {{"nu", {0.5, 1.5, 3.0}},
            {"M", {1.0, 4.0}},
            {"small_R", ladder(2.0, -8, -3)},
            {"large_R", ladder(2.0, 3, 8)}}}};
      break;
    case Experiment::strichartz_ratio:
      c.spectral = {{"n", 3}, {"nu0", 0.5}};
      c.grid = {{"anchor", 1.0}, {"per_decade", 200}, {"r_lo", 1e-5}, {"r_hi", 1e4}};
      c.params = {{"pairs", {{"inf", 2}, {4, 4}, {5, 10}, {6, 6}, {8, 4}, {4, 8}}},
                  {"T", 1.0},
                  {"samples", 65},
                  {"dilations", 3},
                  {"family", family(0.5, 2.0, 0.3, 0.8)}};
      c.seed = 7;
      break;
    case Experiment::sobolev_check:
      c.spectral = {{"n", 3}, {"nu0", 0.1}};
      c.grid = {{"anchor", 1.0}, {"per_decade", 100}, {"r_lo", 1e-4}, {"r_hi", 1e4}};
      c.params = {{"in_window", {{2, 4}, {2, 6}, {1.5, 3}}},
                  {"out_window", {{2, 60}}},
                  {"floors", {1e-3, 1e-4, 1e-5}},
                  {"shift", 100},
                  {"family", family(0.5, 2.0, 0.2, 0.8)}};
      c.seed = 11;
      break;
    case Experiment::square_function:
      c.spectral = {{"n", 3}, {"nu0", 0.5}};
      c.grid = {{"r_min", 1e-3}, {"r_max", 1e3}, {"N", 4096}};
      c.params = {{"coarse_N", 2048},
                  {"j", {-4, 4}},
                  {"p", {2.0, 4.0}},
                  {"family", family(1.0, 3.0, 0.3, 0.6)}};
      c.seed = 5;
      break;
    case Experiment::riesz_probe:
      c.spectral = {{"n", 4}, {"nu0", 0.6}};
      c.grid = {{"r_min", 1e-3}, {"r_max", 1e3}, {"N", 1024}};
      c.params = {{"fine_N", 2048},
                  {"family", family(0.5, 2.0, 0.3, 0.8)},
                  {"adversarial", {{"nu0", 0.2}, {"floors", {1e-3, 1e-4, 1e-5}}}}};
      c.seed = 3;
      break;
    case Experiment::nlw_run:
      c.spectral = {{"n", 3}, {"v0", 0.5}};
      c.grid = {{"r_min", 1e-3}, {"r_max", 100.0}, {"N", 1024}};
      c.params = {{"gamma", 1.0},
                  {"T", 1.0},
                  {"h", 1.0 / 128},
                  {"delta", 1e-3},
                  {"profile", {{"center", 4.0}, {"width", 1.0}}},
                  {"tol", 1e-10},
                  {"max_iter", 60},
                  {"energy_study", {{"delta", 10.0}, {"h", {1.0 / 128, 1.0 / 256, 1.0 / 512}}}},
                  {"threshold", {{"lo", 10.0}, {"hi", 60.0}, {"steps", 4}, {"h", 1.0 / 256}}}};
      break;
    case Experiment::euclid_oracle:
      c.spectral = {{"n", 3}, {"v0", 0.0}, {"k_max", 0}};
      c.grid = {{"r_min", 1e-3}, {"r_max", 1e3}, {"N", 4096}};
      c.params = {{"center", 3.0},
                  {"width", 0.5},
                  {"times", {0.0, 0.25, 0.5, 0.75, 1.0}},
                  {"refinement", {1024, 2048, 4096}}};
      break;
  }
  return c;
}

ExperimentConfig config_from_json(Experiment e, const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.contains("experiment")) {
    if (!j["experiment"].is_string() ||
        experiment_from_string(j["experiment"].get<std::string>()) != e)
      throw ConfigError("config names a different experiment");
  }
  ExperimentConfig c = default_config(e);
  auto merge = [&](json& target, const char* key) {
    if (!j.contains(key)) return;
    if (!j[key].is_object()) throw ConfigError(std::string("'") + key + "' must be an object");
    // Spectra and grids are replaced wholesale; mixing two grid styles
    // through a merge would be ambiguous.
    if (std::string(key) == "params")
      target.merge_patch(j[key]);
    else
      target = j[key];
  };
  merge(c.spectral, "spectral");
  merge(c.grid, "grid");
  merge(c.params, "params");
  if (j.contains("seed")) {
    const auto& sd = j["seed"];
    if (!sd.is_number_integer() || (!sd.is_number_unsigned() && sd.get<std::int64_t>() < 0))
      throw ConfigError("'seed' must be a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  return c;
}

ExperimentConfig load_config(Experiment e, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& err) {
    throw ConfigError(std::string("config parse error: ") + err.what());
  }
  return config_from_json(e, j);
}

SpectralData spectral_from_config(const json& j) {
  try {
    if (j.contains("modes")) return spectral_from_json(j);
    const int n = detail::integer(j, "n");
    const double radius = j.value("radius", 1.0);
    const int k_max = j.value("k_max", 0);
    double v0 = 0.0;
    if (j.contains("nu0")) {
      const double nu0 = detail::number(j, "nu0");
      v0 = nu0 * nu0 - (n - 2.0) * (n - 2.0) / 4.0;
    } else {
      v0 = j.value("v0", 0.0);
    }
    return build_sphere_spectrum(n, radius, v0, k_max);
  } catch (const json::exception& err) {
    throw ConfigError(std::string("spectral config: ") + err.what());
  }
}

GridPtr grid_from_config(const json& j, int n) {
  try {
    if (j.contains("N"))
      return share(make_radial_grid(detail::number(j, "r_min"), detail::number(j, "r_max"),
                                    detail::integer(j, "N"), n));
    double step = 0.0;
    if (j.contains("per_octave"))
      step = std::log(2.0) / detail::number(j, "per_octave");
    else if (j.contains("per_decade"))
      step = std::log(10.0) / detail::number(j, "per_decade");
    else if (j.contains("log_step"))
      step = detail::number(j, "log_step");
    else
      throw ConfigError("grid needs N, per_octave, per_decade or log_step");
    return share(make_lattice_grid(j.value("anchor", 1.0), step, detail::number(j, "r_lo"),
                                   detail::number(j, "r_hi"), n));
  } catch (const json::exception& err) {
    throw ConfigError(std::string("grid config: ") + err.what());
  }
}

void check_guards(const ExperimentConfig& cfg) {
  const auto spec = spectral_from_config(cfg.spectral);
  const int n = spec.dim();
  const double nu0 = spec.nu0();
  const auto& p = cfg.params;
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw GuardViolation(msg);
  };
  auto strictly_decreasing = [](const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
      if (!(v[i] < v[i - 1])) return false;
    return true;
  };

  switch (cfg.experiment) {
    case Experiment::counterexample: {
      AdmissiblePair pair{extended_from_json(p.at("q")), extended_from_json(p.at("r")), {}};
      require(in_lambda_s(pair, n), "pair (q, r) is not in Λ_s");
      if (in_lambda_s_nu0(pair, n, nu0))
        throw NotInExcludedRegion(
            "pair satisfies 1/r > 1/2 - (1+ν0)/n; the counterexample would be vacuous");
      const auto eps = detail::numbers(p, "eps");
      if (eps.size() < 2 || !strictly_decreasing(eps))
        throw ConfigError("eps ladder must be strictly decreasing with at least two entries");
      break;
    }
    case Experiment::smoothing_sweep: {
      const double hi = 1.0 + nu0;
      if (p.contains("betas"))
        for (double b : detail::numbers(p, "betas"))
          require(b > 0.5 && b < hi, "sweep β must lie in (1/2, 1+ν0)");
      if (p.contains("beta_divergence"))
        require(detail::number(p, "beta_divergence") >= hi,
                "divergence β must be at least 1+ν0");
      const auto floors = detail::numbers(p.at("divergence"), "floors");
      if (floors.size() < 2 || !strictly_decreasing(floors))
        throw ConfigError("r_min floors must be strictly decreasing");
      break;
    }
    case Experiment::strichartz_ratio:
      for (const auto& pj : p.at("pairs")) {
        const auto pair = detail::pair_from_json(pj);
        require(in_lambda_s(pair, n),
                "pair (" + to_string(pair.q) + ", " + to_string(pair.r) + ") is not in Λ_s");
      }
      break;
    case Experiment::sobolev_check: {
      auto in_window = [&](double pp, double q) {
        const double s = n / pp - n / q;
        return s > 0.0 && s < 2.0 && pp > 1.0 && q > pp &&
               window_lower_q(n, nu0, s) < q && q < window_upper_q(n, nu0);
      };
      for (const auto& e : p.at("in_window")) {
        const double pp = e.at(0).get<double>(), q = e.at(1).get<double>();
        require(in_window(pp, q), "in-window entry violates the Sobolev window");
      }
      for (const auto& e : p.at("out_window")) {
        const double pp = e.at(0).get<double>(), q = e.at(1).get<double>();
        const double s = n / pp - n / q;
        require(s > 0.0 && s < 2.0, "out-window entry needs 0 < s < 2");
        require(!in_window(pp, q), "out-window entry lies inside the Sobolev window");
      }
      const auto floors = detail::numbers(p, "floors");
      if (floors.size() < 2 || !strictly_decreasing(floors))
        throw ConfigError("floors must be strictly decreasing");
      break;
    }
    case Experiment::riesz_probe: {
      require(nu0 > 1.0 / (n - 1.0), "Riesz comparison needs ν0 > 1/(n-1)");
      const double adv = detail::number(p.at("adversarial"), "nu0");
      require(adv > 0.0 && adv < 1.0 / (n - 1.0), "adversarial ν0 must lie below 1/(n-1)");
      break;
    }
    case Experiment::nlw_run:
      require(n >= 3, "the energy-critical problem needs n >= 3");
      require(nu0 > 0.5, "small-data theory assumes ν0 > 1/2");
      break;
    case Experiment::euclid_oracle:
      if (n != 3 || spec.size() != 1 || std::abs(spec.nu0() - 0.5) > 1e-14)
        throw ConfigError("the d'Alembert oracle needs the n=3 sphere spectrum with V0=0, k_max=0");
      break;
    case Experiment::square_function:
      break;
  }
}

void ExperimentReport::add(std::string estimate, std::string quantity, json params,
                           double value) {
  rows.push_back({std::move(estimate), std::move(quantity), std::move(params), value});
}

void ExperimentReport::record_grid(const RadialGrid& g) {
  auto d = g.describe();
  d["hash"] = g.hash();
  for (const auto& x : grids)
    if (x.at("hash") == d["hash"]) return;
  grids.push_back(std::move(d));
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  check_guards(cfg);
  switch (cfg.experiment) {
    case Experiment::counterexample: return run_counterexample(cfg);
    case Experiment::smoothing_sweep: return run_smoothing_sweep(cfg);
    case Experiment::strichartz_ratio: return run_strichartz_ratio(cfg);
    case Experiment::sobolev_check: return run_sobolev_check(cfg);
    case Experiment::square_function: return run_square_function(cfg);
    case Experiment::riesz_probe: return run_riesz_probe(cfg);
    case Experiment::nlw_run: return run_nlw(cfg);
    case Experiment::euclid_oracle: return run_euclid_oracle(cfg);
  }
  throw ConfigError("unknown experiment");
}

namespace detail {

double number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw ConfigError(std::string("missing or non-numeric '") + key + "'");
  return j[key].get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw ConfigError(std::string("missing or non-integer '") + key + "'");
  return j[key].get<int>();
}

std::vector<double> numbers(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw ConfigError(std::string("missing list '") + key + "'");
  std::vector<double> out;
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw ConfigError(std::string("non-numeric entry in '") + key + "'");
    out.push_back(x.get<double>());
  }
  return out;
}

AdmissiblePair pair_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("a pair is a two-element list [q, r]");
  return {extended_from_json(j[0]), extended_from_json(j[1]), {}};
}

json pair_params(const ExtendedReal& q, const ExtendedReal& r) {
  return {{"q", to_string(q)}, {"r", to_string(r)}};
}

BumpRanges ranges_from_json(const json& j) {
  BumpRanges r;
  const auto c = numbers(j, "center");
  const auto w = numbers(j, "width");
  if (c.size() != 2 || w.size() != 2) throw ConfigError("family ranges are [lo, hi] pairs");
  r.center_lo = c[0];
  r.center_hi = c[1];
  r.width_lo = w[0];
  r.width_hi = w[1];
  r.modulation_hi = number(j, "modulation");
  return r;
}

std::vector<ModeField> half_wave_samples(const ModeField& B, const std::vector<double>& times,
                                         Diagnostics* diag) {
  std::vector<ModeField> out;
  out.reserve(times.size());
  for (double t : times)
    out.push_back(to_space(multiply([t](double rho) { return std::polar(1.0, t * rho); }, B), diag));
  return out;
}

std::vector<double> uniform_times(double t0, double t1, int samples) {
  if (samples < 3) throw ConfigError("need at least three time samples");
  std::vector<double> t(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) t[static_cast<std::size_t>(k)] = t0 + (t1 - t0) * k / (samples - 1);
  return t;
}

ModeField square_sum(const std::vector<ModeField>& parts) {
  if (parts.empty()) throw Error("square_sum of nothing");
  const auto& g = parts.front().model()->space();
  RadialProfile acc(g);
  for (const auto& f : parts) {
    const auto v = f.radial_values();
    for (int i = 0; i < g->size(); ++i) acc[i] += std::norm(v[i]);
  }
  for (int i = 0; i < g->size(); ++i) acc[i] = std::sqrt(acc[i].real());
  return ModeField::y_independent(parts.front().model(), acc);
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

}  // namespace detail

}  // namespace conewave
