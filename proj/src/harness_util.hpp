#pragma once

// Shared pieces of the experiment drivers.

#include <cmath>
#include <string>
#include <vector>

#include "conewave/bumps.hpp"
#include "conewave/errors.hpp"
#include "conewave/harness.hpp"
#include "conewave/norms.hpp"

namespace conewave::detail {

double number(const nlohmann::json& j, const char* key);
int integer(const nlohmann::json& j, const char* key);
std::vector<double> numbers(const nlohmann::json& j, const char* key);

/// [q, r] with "inf" allowed for either entry.
AdmissiblePair pair_from_json(const nlohmann::json& j);
nlohmann::json pair_params(const ExtendedReal& q, const ExtendedReal& r);

BumpRanges ranges_from_json(const nlohmann::json& j);

/// Frequency-side field on the lowest mode, declared y-independent.
template <class F>
ModeField frequency_field(const ModelPtr& model, F&& b) {
  ModeField B(model, Domain::frequency);
  B.set_y_independent(true);
  B.at({0, 0}) = sample(model->freq(), b);
  return B;
}

template <class F>
ModeField space_field(const ModelPtr& model, F&& f) {
  return ModeField::y_independent(model, sample(model->space(), f));
}

/// e^{itρ}B back on the space side at each of the given times.
std::vector<ModeField> half_wave_samples(const ModeField& B,
                                         const std::vector<double>& times,
                                         Diagnostics* diag);

std::vector<double> uniform_times(double t0, double t1, int samples);

/// Pointwise (Σ_j |f_j|²)^{1/2} of y-independent fields.
ModeField square_sum(const std::vector<ModeField>& parts);

double max_of(const std::vector<double>& v);
double min_of(const std::vector<double>& v);

}  // namespace conewave::detail
