#pragma once

// Spectral and geometric data of a metric cone C(Y) with an inverse-square
// potential V0(y)/r². The cross-section enters only through the orders
// nu = sqrt((n-2)²/4 + λ) of the eigenvalues λ of Δ_h + V0 and their
// multiplicities.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace conewave {

struct Mode {
  double nu = 0.0;
  int multiplicity = 1;
  bool operator==(const Mode&) const = default;
};

class SpectralData {
 public:
  /// Validates and sorts the modes. Throws NonPositiveOperator when some
  /// nu <= 0 (the shifted cross-section operator is not positive).
  SpectralData(int n, std::vector<Mode> modes, std::string label = {},
               double volume = 1.0);

  int dim() const { return n_; }
  const std::vector<Mode>& modes() const { return modes_; }
  const std::string& label() const { return label_; }
  /// Volume of the cross-section; the lowest mode of a y-independent field
  /// has angular factor volume^{-1/2}.
  double volume() const { return volume_; }

  double nu0() const { return modes_.front().nu; }
  std::size_t size() const { return modes_.size(); }
  double nu(std::size_t m) const { return modes_.at(m).nu; }
  int multiplicity(std::size_t m) const { return modes_.at(m).multiplicity; }
  /// Cross-section eigenvalue λ = nu² - (n-2)²/4 of mode m.
  double eigenvalue(std::size_t m) const;
  std::size_t total_multiplicity() const;

  /// Stable 64-bit digest of (n, modes, volume) used in output manifests.
  std::uint64_t hash() const;

  bool operator==(const SpectralData&) const = default;

 private:
  int n_;
  std::vector<Mode> modes_;
  std::string label_;
  double volume_;
};

/// Round sphere S^{n-1} of the given radius with constant potential v0:
/// λ_k = k(k+n-2)/radius² + v0 for k = 0..k_max, harmonic multiplicities.
SpectralData build_sphere_spectrum(int n, double radius, double v0_const,
                                   int k_max);

/// Number of linearly independent degree-k spherical harmonics on S^{n-1}.
int sphere_multiplicity(int n, int k);

nlohmann::json to_json(const SpectralData& spec);
SpectralData spectral_from_json(const nlohmann::json& j);
void save_spectral(const SpectralData& spec, const std::string& path);
SpectralData load_spectral(const std::string& path);

/// Element of [0, ∞]. Infinity is a distinct state so that 1/∞ is exactly 0.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double v) : value_(v), infinite_(false) {}  // NOLINT
  static constexpr ExtendedReal infinity() { return ExtendedReal(); }

  constexpr bool is_infinite() const { return infinite_; }
  /// Finite value; undefined for infinity.
  constexpr double value() const { return value_; }
  constexpr double reciprocal() const { return infinite_ ? 0.0 : 1.0 / value_; }

  constexpr bool operator==(const ExtendedReal& o) const {
    return infinite_ == o.infinite_ && (infinite_ || value_ == o.value_);
  }

 private:
  constexpr ExtendedReal() : value_(0.0), infinite_(true) {}
  double value_;
  bool infinite_;
};

std::string to_string(const ExtendedReal& x);
/// Accepts a number or the strings "inf" / "infinity".
ExtendedReal extended_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ExtendedReal& x);

struct AdmissiblePair {
  ExtendedReal q;
  ExtendedReal r;
  /// Regularity claimed by the caller; checked against the scaling relation.
  std::optional<double> s;
};

/// s = n/2 - n/r - 1/q.
double scaling_regularity(const ExtendedReal& q, const ExtendedReal& r, int n);

/// Wave-admissible: 2/q + (n-1)/r <= (n-1)/2, (q, r, n) != (2, ∞, 3), and a
/// claimed s matches the scaling relation.
bool in_lambda_s(const AdmissiblePair& pair, int n);

/// in_lambda_s plus the tip restriction 1/r > 1/2 - (1 + nu0)/n.
bool in_lambda_s_nu0(const AdmissiblePair& pair, int n, double nu0);

struct ConePoint {
  double r = 1.0;
};

/// Distance on C(Y) given the cross-section distance dY between the angles.
double cone_distance(const ConePoint& z, const ConePoint& zp, double dY);

}  // namespace conewave
