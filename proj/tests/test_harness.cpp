#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "conewave/errors.hpp"
#include "conewave/harness.hpp"
#include "conewave/report.hpp"
#include "doctest.h"

using namespace conewave;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("conewave_harness_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

// A quick Euclidean oracle run.
ExperimentConfig small_euclid() {
  return config_from_json(Experiment::euclid_oracle,
                          {{"grid", {{"r_min", 1e-3}, {"r_max", 1e3}, {"N", 1024}}},
                           {"params", {{"refinement_N", {512, 1024}}}}});
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(CONEWAVE_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("experiment names") {
  for (auto e : all_experiments()) CHECK(experiment_from_string(to_string(e)) == e);
  CHECK(all_experiments().size() == 8);
  CHECK(experiment_from_string("nlw") == Experiment::nlw_run);
  CHECK_THROWS_AS(experiment_from_string("strichartz"), ConfigError);
}

TEST_CASE("defaults pass their own guards") {
  for (auto e : all_experiments()) {
    const auto cfg = default_config(e);
    INFO(to_string(e));
    CHECK(cfg.experiment == e);
    CHECK_NOTHROW(check_guards(cfg));
    const auto back = config_from_json(e, cfg.to_json());
    CHECK(back.to_json() == cfg.to_json());
  }
}

TEST_CASE("user json overrides defaults key by key") {
  const auto cfg = config_from_json(Experiment::counterexample, {{"params", {{"T", 0.5}}}, {"seed", 9}});
  CHECK(cfg.params.at("T") == 0.5);
  CHECK(cfg.params.at("q") == 4.0);
  CHECK(cfg.seed == 9);
  // Spectral and grid blocks are replaced whole.
  const auto g = config_from_json(Experiment::counterexample, {{"grid", {{"r_min", 1e-3}, {"r_max", 10.0}, {"N", 64}}}});
  CHECK_FALSE(g.grid.contains("anchor"));

  CHECK_THROWS_AS(config_from_json(Experiment::counterexample, json::array()), ConfigError);
  CHECK_THROWS_AS(config_from_json(Experiment::counterexample, {{"experiment", "nlw_run"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(Experiment::counterexample, {{"seed", -1}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(Experiment::counterexample, {{"params", 3}}), ConfigError);
}

TEST_CASE("config files") {
  const auto dir = scratch("files");
  {
    std::ofstream(dir / "ok.json") << R"({"params": {"T": 0.125}})";
    std::ofstream(dir / "bad.json") << R"({"params": )";
  }
  CHECK(load_config(Experiment::counterexample, dir / "ok.json").params.at("T") == 0.125);
  CHECK_THROWS_AS(load_config(Experiment::counterexample, dir / "bad.json"), ConfigError);
  CHECK_THROWS_AS(load_config(Experiment::counterexample, dir / "missing.json"), ConfigError);
  fs::remove_all(dir);
}

TEST_CASE("spectral and grid blocks") {
  const auto s = spectral_from_config({{"n", 3}, {"nu0", 0.3}});
  CHECK(s.nu0() == doctest::Approx(0.3));
  CHECK(s.dim() == 3);
  const auto m = spectral_from_config({{"n", 4}, {"modes", {{0.7, 1}, {1.9, 4}}}});
  CHECK(m.size() == 2);
  CHECK(m.multiplicity(1) == 4);
  CHECK(spectral_from_config({{"n", 3}, {"radius", 1.0}, {"v0", 0.0}, {"k_max", 2}}).size() == 3);
  CHECK_THROWS_AS(spectral_from_config({{"n", "three"}}), ConfigError);

  const auto g = grid_from_config({{"r_min", 1e-2}, {"r_max", 1e2}, {"N", 100}}, 3);
  CHECK(g->size() == 100);
  const auto l = grid_from_config({{"anchor", 1.0}, {"per_octave", 16}, {"r_lo", 0.25}, {"r_hi", 4.0}}, 3);
  CHECK(l->index_of(0.5) >= 0);
  CHECK(l->index_of(2.0) >= 0);
  const auto d = grid_from_config({{"anchor", 1.0}, {"per_decade", 10}, {"r_lo", 0.01}, {"r_hi", 100.0}}, 3);
  CHECK(d->index_of(10.0) >= 0);
  CHECK_THROWS_AS(grid_from_config({{"r_min", 1e-2}}, 3), ConfigError);
}

TEST_CASE("exponent guards") {
  auto with = [](Experiment e, json patch) { return config_from_json(e, patch); };
  // (4, 4) is admissible and satisfies the tip restriction: the counterexample would be vacuous.
  CHECK_THROWS_AS(check_guards(with(Experiment::counterexample, {{"params", {{"q", 4}, {"r", 4}}}})),
                  NotInExcludedRegion);
  CHECK_THROWS_AS(check_guards(with(Experiment::counterexample, {{"params", {{"q", 2}, {"r", 4}}}})),
                  GuardViolation);
  CHECK_THROWS_AS(check_guards(with(Experiment::counterexample, {{"params", {{"eps", {0.1, 0.2}}}}})),
                  ConfigError);
  CHECK_THROWS_AS(check_guards(with(Experiment::smoothing_sweep, {{"params", {{"betas", {0.4}}}}})),
                  GuardViolation);
  CHECK_THROWS_AS(check_guards(with(Experiment::strichartz_ratio, {{"params", {{"pairs", {{2, 4}}}}}})),
                  GuardViolation);
  CHECK_THROWS_AS(check_guards(with(Experiment::sobolev_check, {{"params", {{"in_window", {{2, 60}}}}}})),
                  GuardViolation);
  CHECK_THROWS_AS(check_guards(with(Experiment::sobolev_check, {{"params", {{"out_window", {{2, 4}}}}}})),
                  GuardViolation);
  CHECK_THROWS_AS(check_guards(with(Experiment::riesz_probe, {{"spectral", {{"n", 4}, {"nu0", 0.2}}}})),
                  GuardViolation);
  CHECK_THROWS_AS(check_guards(with(Experiment::nlw_run, {{"spectral", {{"n", 3}, {"nu0", 0.5}}}})),
                  GuardViolation);
  CHECK_THROWS_AS(check_guards(with(Experiment::euclid_oracle, {{"spectral", {{"n", 3}, {"nu0", 0.7}}}})),
                  ConfigError);
  // Guards run before any computation.
  CHECK_THROWS_AS(run_experiment(with(Experiment::nlw_run, {{"spectral", {{"n", 3}, {"nu0", 0.4}}}})),
                  GuardViolation);
}

TEST_CASE("report files") {
  const auto rep = run_experiment(small_euclid());
  CHECK(rep.summary.at("error_t1").get<double>() < 1e-4);
  CHECK_FALSE(rep.rows.empty());
  CHECK_FALSE(rep.grids.empty());

  std::ostringstream csv;
  write_results_csv(csv, rep);
  std::istringstream lines(csv.str());
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  CHECK(header == "experiment,estimate,quantity,params,value");
  CHECK(first.rfind("euclid_oracle,", 0) == 0);

  const auto m = manifest(rep);
  for (const char* key : {"experiment", "version", "config", "spectral", "spectral_hash", "grids", "summary", "diagnostics"})
    CHECK(m.contains(key));
  CHECK(m.at("version") == library_version());

  const auto dir = scratch("report");
  write_report(dir, rep);
  for (const char* f : {"results.csv", "manifest.json", "fit.json"}) CHECK(fs::exists(dir / f));
  std::ifstream fit(dir / "fit.json");
  const auto fj = json::parse(fit);
  CHECK(fj.is_object());
  fs::remove_all(dir);
}

TEST_CASE("command line exit codes") {
  const auto dir = scratch("cli");
  {
    std::ofstream(dir / "guard.json") << R"({"params": {"q": 4, "r": 4}})";
    std::ofstream(dir / "broken.json") << "{";
    std::ofstream(dir / "small.json") << small_euclid().to_json().dump();
  }
  CHECK(run_cli("counterexample --print-config") == 0);
  CHECK(run_cli("nlw --print-config") == 0);
  CHECK(run_cli("counterexample --config " + (dir / "guard.json").string()) == 2);
  CHECK(run_cli("counterexample --config " + (dir / "broken.json").string()) == 1);
  CHECK(run_cli("counterexample --config " + (dir / "nothing.json").string()) == 1);
  CHECK(run_cli("no_such_experiment") != 0);
  CHECK(run_cli("euclid_oracle --config " + (dir / "small.json").string() + " --out " + (dir / "out").string()) == 0);
  CHECK(fs::exists(dir / "out" / "results.csv"));
  CHECK(run_cli("bessel-table --nu 0.5 --from 1 --to 2 --count 3") == 0);
  fs::remove_all(dir);
}
