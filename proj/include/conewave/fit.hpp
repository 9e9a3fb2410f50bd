#pragma once

#include <utility>
#include <vector>

#include "json.hpp"

namespace conewave {

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // fitted coordinates
  double residual = 0.0;                          // root-mean-square

  nlohmann::json to_json() const;
};

/// Least squares y = intercept + slope·x.
FitResult fit_line(const std::vector<double>& x, const std::vector<double>& y);

/// Least squares on (log x, log y); all values must be positive.
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace conewave
