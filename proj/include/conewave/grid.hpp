#pragma once

// Log-spaced radial grids carrying quadrature weights for ∫ f(r) r^{n-1} dr,
// and profiles sampled on them. The same type serves as a frequency grid.

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

namespace conewave {

using cplx = std::complex<double>;

class RadialGrid {
 public:
  /// Nodes r_min·e^{iΔ}, i = 0..N-1. Weights are trapezoidal in log r with
  /// the Jacobian r^n; for N >= 8 the three end weights on each side carry
  /// the fourth-order end corrections (3/8, 7/6, 23/24).
  RadialGrid(double r_min, double log_step, int N, int n);

  int size() const { return static_cast<int>(nodes_.size()); }
  int dim() const { return n_; }
  double r_min() const { return nodes_.front(); }
  double r_max() const { return nodes_.back(); }
  double log_step() const { return log_step_; }
  double log_r_min() const { return log_r_min_; }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  double weight(int i) const { return weights_[static_cast<std::size_t>(i)]; }

  /// Node index equal to r within relative 1e-9, or -1.
  int index_of(double r) const;
  /// Weights for the same rule restricted to nodes i0..i1 (inclusive).
  std::vector<double> window_weights(int i0, int i1) const;
  /// Frequency grid on [1/r_max, 1/r_min] with the same spacing.
  RadialGrid reciprocal() const;
  /// Same lattice, with `below` nodes added toward 0 and `above` beyond r_max.
  RadialGrid extended(int below, int above) const;

  std::uint64_t hash() const;
  nlohmann::json describe() const;

  bool operator==(const RadialGrid& o) const {
    return n_ == o.n_ && log_step_ == o.log_step_ &&
           log_r_min_ == o.log_r_min_ && nodes_.size() == o.nodes_.size();
  }

 private:
  int n_;
  double log_r_min_;
  double log_step_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

using GridPtr = std::shared_ptr<const RadialGrid>;

/// Log-equispaced grid with first node r_min and last node r_max.
/// Throws BadGrid unless 0 < r_min < r_max, N >= 2, n >= 3.
RadialGrid make_radial_grid(double r_min, double r_max, int N, int n);

/// Grid on the lattice log r ∈ log_anchor + Δ·Z covering [r_lo, r_hi].
RadialGrid make_lattice_grid(double anchor, double log_step, double r_lo,
                             double r_hi, int n);

GridPtr share(RadialGrid g);

/// Profile sampled on a radial (or frequency) grid.
struct RadialProfile {
  GridPtr grid;
  std::vector<cplx> values;

  RadialProfile() = default;
  explicit RadialProfile(GridPtr g)
      : grid(std::move(g)), values(static_cast<std::size_t>(grid->size())) {}
  RadialProfile(GridPtr g, std::vector<cplx> v);

  int size() const { return static_cast<int>(values.size()); }
  cplx& operator[](int i) { return values[static_cast<std::size_t>(i)]; }
  const cplx& operator[](int i) const {
    return values[static_cast<std::size_t>(i)];
  }

  RadialProfile& operator+=(const RadialProfile& o);
  RadialProfile& operator-=(const RadialProfile& o);
  RadialProfile& operator*=(cplx c);

  /// ‖f‖ in L²(r^{n-1} dr).
  double l2_norm() const;
  double max_abs() const;
  /// Largest |imaginary part| relative to max |value|.
  double imag_residue() const;
};

using FrequencyProfile = RadialProfile;

RadialProfile operator+(RadialProfile a, const RadialProfile& b);
RadialProfile operator-(RadialProfile a, const RadialProfile& b);
RadialProfile operator*(cplx c, RadialProfile a);

template <class F>
RadialProfile sample(const GridPtr& g, F&& f) {
  RadialProfile p(g);
  for (int i = 0; i < g->size(); ++i) p[i] = f(g->node(i));
  return p;
}

/// Profile shifted k nodes outward on the same grid: the dilate
/// f(·/λ) with λ = e^{kΔ}. Values shifted past either end are dropped.
RadialProfile shift_nodes(const RadialProfile& f, int k);

/// Two-column CSV (node, value) preceded by a "# grid" header line; a third
/// column carries the imaginary part when it is nonzero.
void write_profile_csv(std::ostream& out, const RadialProfile& f);
RadialProfile read_profile_csv(std::istream& in);

}  // namespace conewave
