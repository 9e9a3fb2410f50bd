#pragma once

// Functional calculus of L_V by separation of variables. A field on C(Y) is
// stored through its coefficients a_{ν,ℓ}(r) against the (implicit)
// orthonormal cross-section eigenfunctions; F(√L_V) acts on mode ν as
// a ↦ H_ν[F(ρ) · H_ν a]. Multipliers are functions of the frequency ρ = √λ.

#include <compare>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "conewave/hankel.hpp"
#include "conewave/spectrum.hpp"

namespace conewave {

struct Diagnostics {
  HankelDiagnostics hankel;
  std::vector<std::string> warnings;

  void warn(std::string w);
  void merge(const Diagnostics& o);
  nlohmann::json to_json() const;
};

/// Spectral data plus the radial and frequency grids, with a cache of
/// Hankel plans keyed by order.
class ConeModel {
 public:
  ConeModel(SpectralData spec, GridPtr space, GridPtr freq,
            HankelOptions opt = {});
  /// Frequency grid defaults to the reciprocal of the space grid.
  ConeModel(SpectralData spec, GridPtr space, HankelOptions opt = {});

  const SpectralData& spec() const { return spec_; }
  int dim() const { return spec_.dim(); }
  const GridPtr& space() const { return space_; }
  const GridPtr& freq() const { return freq_; }
  const HankelOptions& options() const { return opt_; }

  const HankelPlan& plan(int mode) const { return plan_for_order(spec_.nu(static_cast<std::size_t>(mode))); }
  const HankelPlan& plan_for_order(double nu) const;

 private:
  SpectralData spec_;
  GridPtr space_, freq_;
  HankelOptions opt_;
  mutable std::mutex mutex_;
  mutable std::map<double, std::unique_ptr<HankelPlan>> plans_;
};

using ModelPtr = std::shared_ptr<const ConeModel>;

ModelPtr make_model(SpectralData spec, GridPtr space, HankelOptions opt = {});

struct ModeKey {
  int mode = 0;  // index into SpectralData::modes()
  int copy = 0;  // ℓ < multiplicity
  auto operator<=>(const ModeKey&) const = default;
};

enum class Domain { space, frequency };

class ModeField {
 public:
  explicit ModeField(ModelPtr model, Domain domain = Domain::space);

  /// Field independent of y: only the lowest mode, whose eigenfunction is the
  /// constant |Y|^{-1/2}. `values` are the physical values f(r).
  static ModeField y_independent(ModelPtr model, const RadialProfile& values);
  static ModeField single_mode(ModelPtr model, ModeKey key, RadialProfile a);

  const ModelPtr& model() const { return model_; }
  Domain domain() const { return domain_; }
  bool is_y_independent() const { return y_independent_; }
  /// The one stored mode, if exactly one is stored.
  std::optional<ModeKey> single_key() const;

  const std::map<ModeKey, RadialProfile>& modes() const { return modes_; }
  /// Coefficient profile; created as zero if absent.
  RadialProfile& at(ModeKey key);
  const RadialProfile* find(ModeKey key) const;

  /// f(r) for a y-independent field (coefficient times |Y|^{-1/2}).
  RadialProfile radial_values() const;

  /// Σ_{ν,ℓ} ‖a_{ν,ℓ}‖² in the stored domain, square-rooted.
  double l2_norm() const;
  double imag_residue() const;
  ModeField real_part() const;

  ModeField& operator+=(const ModeField& o);
  ModeField& operator-=(const ModeField& o);
  ModeField& operator*=(cplx c);

  /// Same structure and flags with new profiles; used by transforms.
  ModeField with_domain(Domain d) const;
  void set_y_independent(bool v) { y_independent_ = v; }

 private:
  ModelPtr model_;
  Domain domain_;
  bool y_independent_ = false;
  std::map<ModeKey, RadialProfile> modes_;
};

ModeField operator+(ModeField a, const ModeField& b);
ModeField operator-(ModeField a, const ModeField& b);
ModeField operator*(cplx c, ModeField a);

/// Mode-wise Hankel transform to frequency side and back.
ModeField to_frequency(const ModeField& f, Diagnostics* diag = nullptr);
ModeField to_space(const ModeField& b, Diagnostics* diag = nullptr);

using Multiplier = std::function<cplx(double rho)>;

/// Pointwise multiplication on the frequency side (no transforms).
ModeField multiply(const Multiplier& F, const ModeField& b);

/// F(√L_V) f.
ModeField apply_multiplier(const Multiplier& F, const ModeField& f,
                           Diagnostics* diag = nullptr);

/// L_V^{s/2} f, i.e. the multiplier ρ^s.
ModeField fractional_power(double s, const ModeField& f,
                           Diagnostics* diag = nullptr);

/// φ(2^{-j}√L_V) f with the fixed bump φ.
ModeField lp_projection(int j, const ModeField& f, Diagnostics* diag = nullptr);

/// e^{it√L_V} f.
ModeField half_wave(double t, const ModeField& f, Diagnostics* diag = nullptr);

/// sin(tρ)/ρ, stable as tρ → 0.
double sin_over(double t, double rho);

struct WaveState {
  ModeField u;
  ModeField ut;
  double t = 0.0;
};

/// Free evolution from fixed data; the data are transformed once and each
/// time costs two inverse transforms.
class WavePropagator {
 public:
  WavePropagator(const ModeField& u0, const ModeField& u1,
                 Diagnostics* diag = nullptr);
  WaveState at(double t, Diagnostics* diag = nullptr) const;
  /// Frequency-side state (û, ∂_t û) at time t.
  std::pair<ModeField, ModeField> spectral_at(double t) const;
  const ModeField& b0() const { return b0_; }
  const ModeField& b1() const { return b1_; }

 private:
  ModeField b0_, b1_;
};

WaveState wave_solution(double t, const ModeField& u0, const ModeField& u1,
                        Diagnostics* diag = nullptr);

/// Cumulative τ-integrals C_k = ∫_0^{kh} cos(τρ) G(τ) dτ and
/// S_k = ∫_0^{kh} sin(τρ) G(τ) dτ of frequency-side samples G_k = G(kh),
/// fourth order in h (Simpson, 3/8 rule for odd counts, cubic first step).
struct DuhamelMoments {
  std::vector<ModeField> C, S;
};

DuhamelMoments duhamel_moments(const std::vector<ModeField>& G, double h);

/// Largest frequency carrying more than tol² of the L² mass of the samples.
double effective_frequency(const std::vector<ModeField>& G, double tol = 1e-8);

/// ∫_0^t sin((t-τ)√L)/√L F(τ) dτ for forcing samples F_k = F(kh), t = Kh
/// with K = forcing.size() - 1. Throws TimeStepTooCoarse when h times the
/// effective frequency of the forcing exceeds 1/4.
ModeField duhamel(const std::vector<ModeField>& forcing, double h,
                  Diagnostics* diag = nullptr);

/// Per mode k: H_{ν'_k}[ρ^s H_{ν'_k} H_{ν_k}[ρ^{-s} H_{ν_k} a_k]], where ν
/// comes from f's model and ν' from spec_0 (same grids).
ModeField riesz_compare(double s, const ModeField& f, const SpectralData& spec_0,
                        Diagnostics* diag = nullptr);

/// CSV per stored mode plus manifest.json (spectral hash, grid, t, diagnostics).
void write_wave_state(const std::filesystem::path& dir, const WaveState& state,
                      const Diagnostics& diag = {});

}  // namespace conewave
