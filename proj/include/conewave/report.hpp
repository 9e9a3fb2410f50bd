#pragma once

#include <filesystem>
#include <iosfwd>

#include "conewave/harness.hpp"

namespace conewave {

const char* library_version();

/// results.csv: experiment,estimate,quantity,params,value with params as
/// semicolon-separated key=value pairs. Values are printed with 17
/// significant digits so identical runs give identical files.
void write_results_csv(std::ostream& out, const ExperimentReport& rep);

/// Config echo, library version, grid hashes, summary, notes, diagnostics.
nlohmann::json manifest(const ExperimentReport& rep);

/// results.csv, manifest.json and fit.json (all fits keyed by name) in dir.
void write_report(const std::filesystem::path& dir, const ExperimentReport& rep);

}  // namespace conewave
