#include "conewave/spectrum.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "conewave/errors.hpp"

namespace conewave {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

SpectralData::SpectralData(int n, std::vector<Mode> modes, std::string label,
                           double volume)
    : n_(n), modes_(std::move(modes)), label_(std::move(label)),
      volume_(volume) {
  if (n_ < 3) throw Error("cone dimension must be >= 3");
  if (modes_.empty()) throw Error("spectral data needs at least one mode");
  if (!(volume_ > 0.0)) throw Error("cross-section volume must be positive");
  for (const auto& m : modes_) {
    if (!(m.nu > 0.0) || !std::isfinite(m.nu))
      throw NonPositiveOperator("mode order nu must be positive, got " +
                                std::to_string(m.nu));
    if (m.multiplicity < 1) throw Error("mode multiplicity must be >= 1");
  }
  std::stable_sort(modes_.begin(), modes_.end(),
                   [](const Mode& a, const Mode& b) { return a.nu < b.nu; });
}

double SpectralData::eigenvalue(std::size_t m) const {
  const double shift = 0.25 * (n_ - 2) * (n_ - 2);
  return nu(m) * nu(m) - shift;
}

std::size_t SpectralData::total_multiplicity() const {
  std::size_t total = 0;
  for (const auto& m : modes_) total += static_cast<std::size_t>(m.multiplicity);
  return total;
}

std::uint64_t SpectralData::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  h = fnv1a(h, &n_, sizeof n_);
  for (const auto& m : modes_) {
    const auto bits = std::bit_cast<std::uint64_t>(m.nu);
    h = fnv1a(h, &bits, sizeof bits);
    h = fnv1a(h, &m.multiplicity, sizeof m.multiplicity);
  }
  const auto vbits = std::bit_cast<std::uint64_t>(volume_);
  return fnv1a(h, &vbits, sizeof vbits);
}

int sphere_multiplicity(int n, int k) {
  // dim H_k(R^n) = C(k+n-1, n-1) - C(k+n-3, n-1)
  auto binom = [](long a, long b) -> long {
    if (b < 0 || a < b) return 0;
    long r = 1;
    for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  return static_cast<int>(binom(k + n - 1, n - 1) - binom(k + n - 3, n - 1));
}

SpectralData build_sphere_spectrum(int n, double radius, double v0_const,
                                   int k_max) {
  if (n < 3) throw Error("cone dimension must be >= 3");
  if (k_max < 0) throw Error("k_max must be >= 0");
  if (!(radius > 0.0)) throw Error("sphere radius must be positive");
  const double shift = 0.25 * (n - 2) * (n - 2);
  std::vector<Mode> modes;
  for (int k = 0; k <= k_max; ++k) {
    const double lambda =
        static_cast<double>(k) * (k + n - 2) / (radius * radius) + v0_const;
    const double nu2 = shift + lambda;
    if (!(nu2 > 0.0)) {
      std::ostringstream msg;
      msg << "Delta_h + V0 + (n-2)^2/4 has eigenvalue " << nu2
          << " <= 0 at k=" << k;
      throw NonPositiveOperator(msg.str());
    }
    modes.push_back({std::sqrt(nu2), sphere_multiplicity(n, k)});
  }
  const double area = 2.0 * std::pow(std::numbers::pi, 0.5 * n) /
                      std::tgamma(0.5 * n) * std::pow(radius, n - 1);
  std::ostringstream label;
  label << "sphere(n=" << n << ",radius=" << radius << ",v0=" << v0_const
        << ",k_max=" << k_max << ")";
  return SpectralData(n, std::move(modes), label.str(), area);
}

nlohmann::json to_json(const SpectralData& spec) {
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& m : spec.modes()) modes.push_back({m.nu, m.multiplicity});
  return {{"n", spec.dim()},
          {"label", spec.label()},
          {"modes", modes},
          {"volume", spec.volume()}};
}

SpectralData spectral_from_json(const nlohmann::json& j) {
  try {
    std::vector<Mode> modes;
    for (const auto& m : j.at("modes")) {
      if (!m.is_array() || m.size() != 2)
        throw ConfigError("each mode must be [nu, multiplicity]");
      modes.push_back({m[0].get<double>(), m[1].get<int>()});
    }
    return SpectralData(j.at("n").get<int>(), std::move(modes),
                        j.value("label", std::string{}),
                        j.value("volume", 1.0));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("spectral data: ") + e.what());
  }
}

void save_spectral(const SpectralData& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << to_json(spec).dump(2) << '\n';
}

SpectralData load_spectral(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return spectral_from_json(j);
}

std::string to_string(const ExtendedReal& x) {
  if (x.is_infinite()) return "inf";
  std::ostringstream s;
  s.precision(17);
  s << x.value();
  return s.str();
}

ExtendedReal extended_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "Infinity")
      return ExtendedReal::infinity();
    throw ConfigError("expected a number or \"inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw ConfigError("expected a number or \"inf\"");
  return ExtendedReal(j.get<double>());
}

nlohmann::json to_json(const ExtendedReal& x) {
  if (x.is_infinite()) return "inf";
  return x.value();
}

double scaling_regularity(const ExtendedReal& q, const ExtendedReal& r, int n) {
  return 0.5 * n - n * r.reciprocal() - q.reciprocal();
}

bool in_lambda_s(const AdmissiblePair& pair, int n) {
  const auto& q = pair.q;
  const auto& r = pair.r;
  if (!q.is_infinite() && q.value() < 2.0) return false;
  if (!r.is_infinite() && r.value() < 2.0) return false;
  if (!q.is_infinite() && q.value() == 2.0 && r.is_infinite() && n == 3)
    return false;
  const double lhs = 2.0 * q.reciprocal() + (n - 1) * r.reciprocal();
  if (lhs > 0.5 * (n - 1) + 1e-14) return false;
  if (pair.s && std::abs(*pair.s - scaling_regularity(q, r, n)) > 1e-12)
    return false;
  return true;
}

bool in_lambda_s_nu0(const AdmissiblePair& pair, int n, double nu0) {
  if (!in_lambda_s(pair, n)) return false;
  return pair.r.reciprocal() > 0.5 - (1.0 + nu0) / n;
}

double cone_distance(const ConePoint& z, const ConePoint& zp, double dY) {
  if (dY > std::numbers::pi) return z.r + zp.r;
  const double dr = z.r - zp.r;
  const double s = std::sin(0.5 * dY);
  return std::sqrt(dr * dr + 4.0 * z.r * zp.r * s * s);
}

}  // namespace conewave
