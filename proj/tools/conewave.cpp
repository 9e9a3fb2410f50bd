// conewave <experiment> --config <file> --out <dir>
//
// Exit codes: 0 ran (whatever the measurements say), 1 configuration or
// runtime error, 2 exponent guard violation.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "conewave/bessel.hpp"
#include "conewave/errors.hpp"
#include "conewave/harness.hpp"
#include "conewave/report.hpp"

namespace cw = conewave;

namespace {

int bessel_table(double nu, double r0, double r1, int count) {
  std::printf("nu,r,J,S,regime\n");
  for (int k = 0; k < count; ++k) {
    const double r = count == 1 ? r0 : r0 * std::pow(r1 / r0, static_cast<double>(k) / (count - 1));
    const auto e = cw::bessel_eval(nu, r);
    std::printf("%.17g,%.17g,%.17g,%.17g,%s\n", nu, r, e.value, cw::bessel_remainder(nu, r),
                cw::to_string(e.regime));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral laboratory for waves on metric cones"};
  app.require_subcommand(1);

  std::string config_file, out_dir = "out";
  bool print_config = false;
  for (auto e : cw::all_experiments()) {
    auto* sub = app.add_subcommand(cw::to_string(e), "run the " + std::string(cw::to_string(e)) + " experiment");
    sub->add_option("--config", config_file, "JSON config; keys override the built-in defaults");
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_flag("--print-config", print_config, "print the effective config and exit");
  }
  // nlw is accepted as a short name for nlw_run.
  app.get_subcommand("nlw_run")->alias("nlw");

  double nu = 0.5, r0 = 0.01, r1 = 100.0;
  int count = 50;
  auto* bt = app.add_subcommand("bessel-table", "");
  bt->group("");  // hidden
  bt->add_option("--nu", nu);
  bt->add_option("--from", r0);
  bt->add_option("--to", r1);
  bt->add_option("--count", count);

  CLI11_PARSE(app, argc, argv);

  try {
    if (bt->parsed()) return bessel_table(nu, r0, r1, count);
    const auto* sub = app.get_subcommands().front();
    const auto e = cw::experiment_from_string(sub->get_name());
    const auto cfg = config_file.empty() ? cw::default_config(e) : cw::load_config(e, config_file);
    if (print_config) {
      std::cout << cfg.to_json().dump(2) << '\n';
      return 0;
    }
    const auto rep = cw::run_experiment(cfg);
    cw::write_report(out_dir, rep);
    std::cout << rep.summary.dump(2) << '\n';
    return 0;
  } catch (const cw::GuardViolation& err) {
    std::cerr << "guard violation: " << err.what() << '\n';
    return 2;
  } catch (const cw::NotInExcludedRegion& err) {
    std::cerr << "guard violation: " << err.what() << '\n';
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 1;
  }
}
