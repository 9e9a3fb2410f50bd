#pragma once

// Picard iteration for ∂_tt u + L_V u + γ|u|^{4/(n-2)}u = 0 with
// y-independent data, the conserved energy, and scattering data.

#include <iosfwd>
#include <vector>

#include "conewave/calculus.hpp"
#include "conewave/errors.hpp"

namespace conewave {

struct StrichartzPair {
  ExtendedReal q;
  ExtendedReal r;
};

/// ((n+2)/(n-2), 2(n+2)/(n-2)) for 3 <= n <= 6, (2, 2n/(n-3)) for n >= 7.
StrichartzPair nlw_pair(int n);

struct NlwConfig {
  double gamma = 1.0;  // +1 defocusing, -1 focusing, 0 linear
  double T = 1.0;
  double h = 1.0 / 64.0;
  double tol = 1e-10;  // stop when d_k <= tol · d_1
  int max_iter = 60;
};

struct IterationRecord {
  int iter = 0;
  double strichartz_norm = 0.0;
  double distance = 0.0;
  double energy_drift = 0.0;
};

struct IterationTrace {
  std::vector<IterationRecord> rows;

  /// d_k / d_{k-1} for k >= 2 (first entry belongs to iterate 2).
  std::vector<double> ratios() const;
  void write_csv(std::ostream& out) const;
};

class IterationDiverged : public Error {
 public:
  IterationDiverged(const std::string& what, IterationTrace trace)
      : Error(what), trace_(std::move(trace)) {}
  const IterationTrace& trace() const { return trace_; }

 private:
  IterationTrace trace_;
};

struct NlwSolution {
  explicit NlwSolution(const ModelPtr& m)
      : b0(m, Domain::frequency), b1(m, Domain::frequency) {}

  std::vector<double> times;
  std::vector<WaveState> states;  // space side, at times[k]
  std::vector<double> energy;
  IterationTrace trace;
  bool converged = false;
  double gamma = 0.0;
  // Frequency-side free data and the cumulative Duhamel moments of the
  // final forcing; these determine the scattering data.
  ModeField b0, b1;
  DuhamelMoments moments;
  Diagnostics diag;
};

/// Throws IterationDiverged when the distance ratio is >= 1 three times in a
/// row, AngularUnavailable for data not declared independent of y.
NlwSolution picard_solve(const ModeField& u0, const ModeField& u1,
                         const NlwConfig& cfg);

/// ½(‖∂_t u‖² + ‖L_V^{1/2} u‖²) + γ(n-2)/(2n) ∫ |u|^{2n/(n-2)} dμ.
double energy(const WaveState& state, double gamma);

/// ‖(u0, u1)‖ in Ḣ¹ × L².
double data_size(const ModeField& u0, const ModeField& u1);

struct ScatteringData {
  ModeField u0_plus, u1_plus;  // space side
  std::vector<double> times;
  /// Ḣ¹×L² distance between the solution and the free wave launched from
  /// (u0_plus, u1_plus), at each sample time.
  std::vector<double> defect;
};

ScatteringData scattering_data(const NlwSolution& sol);

struct DeltaSearch {
  double delta_pass = 0.0;  // largest size found with contraction <= 1/2
  double delta_fail = 0.0;  // smallest size found without it
  std::vector<std::pair<double, bool>> probes;
};

/// Bisection in log δ for the data size at which the measured Picard
/// contraction (iterates 2 onward) stops being <= 1/2. The shapes are
/// rescaled to Ḣ¹×L² size δ. Requires pass at lo and fail at hi.
DeltaSearch delta_threshold(const ModeField& u0_shape, const ModeField& u1_shape,
                            const NlwConfig& cfg, double lo, double hi,
                            int steps);

/// Largest measured ratio d_k/d_{k-1} for k >= 2 (0 if fewer iterates).
double max_contraction(const IterationTrace& trace);

}  // namespace conewave
