#include "conewave/report.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "conewave/errors.hpp"

#ifndef CONEWAVE_VERSION
#define CONEWAVE_VERSION "0.0.0"
#endif

namespace conewave {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string flat_params(const json& p) {
  std::string out;
  for (auto it = p.begin(); it != p.end(); ++it) {
    if (!out.empty()) out += ';';
    out += it.key();
    out += '=';
    if (it->is_number_float())
      out += fmt(it->get<double>());
    else if (it->is_string())
      out += it->get<std::string>();
    else
      out += it->dump();
  }
  return out;
}

}  // namespace

const char* library_version() { return CONEWAVE_VERSION; }

void write_results_csv(std::ostream& out, const ExperimentReport& rep) {
  const char* name = to_string(rep.config.experiment);
  out << "experiment,estimate,quantity,params,value\n";
  for (const auto& r : rep.rows)
    out << name << ',' << r.estimate << ',' << r.quantity << ",\"" << flat_params(r.params)
        << "\"," << fmt(r.value) << '\n';
}

json manifest(const ExperimentReport& rep) {
  const auto spec = spectral_from_config(rep.config.spectral);
  json m = {{"experiment", to_string(rep.config.experiment)},
            {"version", library_version()},
            {"config", rep.config.to_json()},
            {"spectral", to_json(spec)},
            {"spectral_hash", spec.hash()},
            {"grids", rep.grids},
            {"summary", rep.summary},
            {"notes", rep.notes},
            {"diagnostics", rep.diag.to_json()},
            {"horizon",
             "time integrals run over a finite window [0, T]; global-in-time statements "
             "are probed through T together with the dilation sweep"}};
  return m;
}

void write_report(const std::filesystem::path& dir, const ExperimentReport& rep) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* file) {
    std::ofstream f(dir / file);
    if (!f) throw Error("cannot write " + (dir / file).string());
    return f;
  };
  {
    auto f = open("results.csv");
    write_results_csv(f, rep);
  }
  {
    auto f = open("manifest.json");
    f << manifest(rep).dump(2) << '\n';
  }
  json fits = json::object();
  for (const auto& [k, v] : rep.fits) fits[k] = v.to_json();
  auto f = open("fit.json");
  f << fits.dump(2) << '\n';
}

}  // namespace conewave
