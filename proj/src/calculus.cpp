#include "conewave/calculus.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "conewave/bumps.hpp"
#include "conewave/errors.hpp"

namespace conewave {

void Diagnostics::warn(std::string w) {
  for (const auto& x : warnings)
    if (x == w) return;
  warnings.push_back(std::move(w));
}

void Diagnostics::merge(const Diagnostics& o) {
  hankel.merge(o.hankel);
  for (const auto& w : o.warnings) warn(w);
}

nlohmann::json Diagnostics::to_json() const {
  return {{"hankel", hankel.to_json()}, {"warnings", warnings}};
}

ConeModel::ConeModel(SpectralData spec, GridPtr space, GridPtr freq,
                     HankelOptions opt)
    : spec_(std::move(spec)), space_(std::move(space)), freq_(std::move(freq)),
      opt_(opt) {
  if (!space_ || !freq_) throw BadGrid("model needs space and frequency grids");
  if (space_->dim() != spec_.dim() || freq_->dim() != spec_.dim())
    throw BadGrid("grid dimension differs from the spectral data");
}

ConeModel::ConeModel(SpectralData spec, GridPtr space, HankelOptions opt)
    : ConeModel(std::move(spec), space, share(space->reciprocal()), opt) {}

const HankelPlan& ConeModel::plan_for_order(double nu) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = plans_.find(nu);
  if (it == plans_.end())
    it = plans_.emplace(nu, std::make_unique<HankelPlan>(nu, space_, freq_, opt_)).first;
  return *it->second;
}

ModelPtr make_model(SpectralData spec, GridPtr space, HankelOptions opt) {
  return std::make_shared<const ConeModel>(std::move(spec), std::move(space), opt);
}

ModeField::ModeField(ModelPtr model, Domain domain)
    : model_(std::move(model)), domain_(domain) {
  if (!model_) throw Error("field needs a model");
}

ModeField ModeField::y_independent(ModelPtr model, const RadialProfile& values) {
  ModeField f(std::move(model));
  if (!(*values.grid == *f.model_->space()))
    throw BadGrid("profile is not on the model's space grid");
  RadialProfile a(f.model_->space(), values.values);
  a *= std::sqrt(f.model_->spec().volume());
  f.modes_.emplace(ModeKey{0, 0}, std::move(a));
  f.y_independent_ = true;
  return f;
}

ModeField ModeField::single_mode(ModelPtr model, ModeKey key, RadialProfile a) {
  ModeField f(std::move(model));
  const auto& spec = f.model_->spec();
  if (key.mode < 0 || key.mode >= static_cast<int>(spec.size()) || key.copy < 0 ||
      key.copy >= spec.multiplicity(static_cast<std::size_t>(key.mode)))
    throw Error("mode key outside the spectral data");
  if (!(*a.grid == *f.model_->space()))
    throw BadGrid("profile is not on the model's space grid");
  f.modes_.emplace(key, RadialProfile(f.model_->space(), std::move(a.values)));
  return f;
}

std::optional<ModeKey> ModeField::single_key() const {
  if (modes_.size() != 1) return std::nullopt;
  return modes_.begin()->first;
}

RadialProfile& ModeField::at(ModeKey key) {
  auto it = modes_.find(key);
  if (it == modes_.end()) {
    const auto& g = domain_ == Domain::space ? model_->space() : model_->freq();
    it = modes_.emplace(key, RadialProfile(g)).first;
  }
  return it->second;
}

const RadialProfile* ModeField::find(ModeKey key) const {
  auto it = modes_.find(key);
  return it == modes_.end() ? nullptr : &it->second;
}

RadialProfile ModeField::radial_values() const {
  if (!y_independent_)
    throw AngularUnavailable("field is not declared independent of y");
  const auto& g = domain_ == Domain::space ? model_->space() : model_->freq();
  const auto* a = find({0, 0});
  RadialProfile v = a ? *a : RadialProfile(g);
  v *= 1.0 / std::sqrt(model_->spec().volume());
  return v;
}

double ModeField::l2_norm() const {
  double s = 0.0;
  for (const auto& [k, a] : modes_) {
    const double n = a.l2_norm();
    s += n * n;
  }
  return std::sqrt(s);
}

double ModeField::imag_residue() const {
  double r = 0.0;
  for (const auto& [k, a] : modes_) r = std::max(r, a.imag_residue());
  return r;
}

ModeField ModeField::real_part() const {
  ModeField out = *this;
  for (auto& [k, a] : out.modes_)
    for (auto& v : a.values) v = v.real();
  return out;
}

ModeField ModeField::with_domain(Domain d) const {
  ModeField out(model_, d);
  out.y_independent_ = y_independent_;
  return out;
}

namespace {

void require_compatible(const ModeField& a, const ModeField& b) {
  if (a.model() != b.model())
    throw IncompatibleSpectra("fields belong to different models");
  if (a.domain() != b.domain())
    throw Error("fields live in different domains");
}

}  // namespace

ModeField& ModeField::operator+=(const ModeField& o) {
  require_compatible(*this, o);
  const bool flag = (y_independent_ || modes_.empty()) &&
                    (o.y_independent_ || o.modes_.empty());
  for (const auto& [k, a] : o.modes_) at(k) += a;
  y_independent_ = flag;
  return *this;
}

ModeField& ModeField::operator-=(const ModeField& o) {
  require_compatible(*this, o);
  const bool flag = (y_independent_ || modes_.empty()) &&
                    (o.y_independent_ || o.modes_.empty());
  for (const auto& [k, a] : o.modes_) at(k) -= a;
  y_independent_ = flag;
  return *this;
}

ModeField& ModeField::operator*=(cplx c) {
  for (auto& [k, a] : modes_) a *= c;
  return *this;
}

ModeField operator+(ModeField a, const ModeField& b) { return a += b; }
ModeField operator-(ModeField a, const ModeField& b) { return a -= b; }
ModeField operator*(cplx c, ModeField a) { return a *= c; }

ModeField to_frequency(const ModeField& f, Diagnostics* diag) {
  if (f.domain() != Domain::space) throw Error("field is already on the frequency side");
  ModeField b = f.with_domain(Domain::frequency);
  HankelDiagnostics hd;
  for (const auto& [k, a] : f.modes())
    b.at(k) = f.model()->plan(k.mode).forward(a, &hd);
  if (diag) diag->hankel.merge(hd);
  return b;
}

ModeField to_space(const ModeField& b, Diagnostics* diag) {
  if (b.domain() != Domain::frequency) throw Error("field is already on the space side");
  ModeField f = b.with_domain(Domain::space);
  HankelDiagnostics hd;
  for (const auto& [k, g] : b.modes())
    f.at(k) = b.model()->plan(k.mode).inverse(g, &hd);
  if (diag) diag->hankel.merge(hd);
  return f;
}

ModeField multiply(const Multiplier& F, const ModeField& b) {
  if (b.domain() != Domain::frequency)
    throw Error("multiply expects a frequency-side field");
  const auto& rho = b.model()->freq()->nodes();
  std::vector<cplx> m(rho.size());
  for (std::size_t j = 0; j < rho.size(); ++j) {
    m[j] = F(rho[j]);
    if (!std::isfinite(m[j].real()) || !std::isfinite(m[j].imag()))
      throw Error("multiplier is not bounded on the frequency grid");
  }
  ModeField out = b;
  for (const auto& [k, g] : b.modes()) {
    auto& o = out.at(k);
    for (std::size_t j = 0; j < m.size(); ++j) o.values[j] = g.values[j] * m[j];
  }
  return out;
}

ModeField apply_multiplier(const Multiplier& F, const ModeField& f,
                           Diagnostics* diag) {
  if (f.domain() == Domain::frequency) return multiply(F, f);
  return to_space(multiply(F, to_frequency(f, diag)), diag);
}

namespace {

double low_frequency_fraction(const ModeField& b) {
  const auto& g = *b.model()->freq();
  const double floor = 10.0 * g.r_min();
  double low = 0.0, total = 0.0;
  for (const auto& [k, p] : b.modes())
    for (int j = 0; j < p.size(); ++j) {
      const double m = std::norm(p[j]) * g.weight(j);
      total += m;
      if (g.node(j) < floor) low += m;
    }
  return total > 0.0 ? low / total : 0.0;
}

}  // namespace

ModeField fractional_power(double s, const ModeField& f, Diagnostics* diag) {
  if (s == 0.0) return f;
  const bool space = f.domain() == Domain::space;
  ModeField b = space ? to_frequency(f, diag) : f;
  if (diag) {
    if (std::abs(s) > 4.0)
      diag->warn("fractional power |s| > 4 is poorly conditioned");
    if (s < 0.0 && low_frequency_fraction(b) > 1e-12)
      diag->warn("negative power applied to a field with low-frequency mass");
  }
  b = multiply([s](double rho) { return cplx(std::pow(rho, s)); }, b);
  return space ? to_space(b, diag) : b;
}

ModeField lp_projection(int j, const ModeField& f, Diagnostics* diag) {
  const double scale = std::ldexp(1.0, -j);
  return apply_multiplier(
      [scale](double rho) { return cplx(lp_bump(scale * rho)); }, f, diag);
}

ModeField half_wave(double t, const ModeField& f, Diagnostics* diag) {
  return apply_multiplier(
      [t](double rho) { return std::polar(1.0, t * rho); }, f, diag);
}

double sin_over(double t, double rho) {
  const double x = t * rho;
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return t * (1.0 - x2 / 6.0 * (1.0 - x2 / 20.0));
  }
  return std::sin(x) / rho;
}

WavePropagator::WavePropagator(const ModeField& u0, const ModeField& u1,
                               Diagnostics* diag)
    : b0_(to_frequency(u0, diag)), b1_(to_frequency(u1, diag)) {
  require_compatible(u0, u1);
  const bool flag = (u0.is_y_independent() || u0.modes().empty()) &&
                    (u1.is_y_independent() || u1.modes().empty());
  for (const auto& [k, g] : b0_.modes()) b1_.at(k);
  for (const auto& [k, g] : b1_.modes()) b0_.at(k);
  b0_.set_y_independent(flag);
  b1_.set_y_independent(flag);
}

std::pair<ModeField, ModeField> WavePropagator::spectral_at(double t) const {
  const auto& rho = b0_.model()->freq()->nodes();
  const std::size_t N = rho.size();
  std::vector<double> c(N), s(N), so(N);
  for (std::size_t j = 0; j < N; ++j) {
    c[j] = std::cos(t * rho[j]);
    s[j] = std::sin(t * rho[j]);
    so[j] = sin_over(t, rho[j]);
  }
  ModeField u = b0_, ut = b0_;
  for (const auto& [k, g0] : b0_.modes()) {
    const auto& g1 = *b1_.find(k);
    auto& pu = u.at(k);
    auto& pt = ut.at(k);
    for (std::size_t j = 0; j < N; ++j) {
      pu.values[j] = c[j] * g0.values[j] + so[j] * g1.values[j];
      pt.values[j] = -rho[j] * s[j] * g0.values[j] + c[j] * g1.values[j];
    }
  }
  return {std::move(u), std::move(ut)};
}

WaveState WavePropagator::at(double t, Diagnostics* diag) const {
  auto [u, ut] = spectral_at(t);
  return {to_space(u, diag), to_space(ut, diag), t};
}

WaveState wave_solution(double t, const ModeField& u0, const ModeField& u1,
                        Diagnostics* diag) {
  return WavePropagator(u0, u1, diag).at(t, diag);
}

namespace {

// Σ c_i f_i over frequency fields sharing a model.
ModeField combine(std::initializer_list<std::pair<double, const ModeField*>> terms) {
  ModeField out = terms.begin()->second->with_domain(Domain::frequency);
  for (const auto& [c, f] : terms) {
    if (c == 0.0) continue;
    for (const auto& [k, p] : f->modes()) {
      auto& o = out.at(k);
      for (std::size_t j = 0; j < p.values.size(); ++j) o.values[j] += c * p.values[j];
    }
  }
  return out;
}

// Cumulative fourth-order integrals of samples f_0..f_K with step h.
std::vector<ModeField> cumulative(const std::vector<ModeField>& f, double h) {
  const std::size_t K = f.size() - 1;
  std::vector<ModeField> I;
  I.reserve(f.size());
  I.push_back(f[0].with_domain(Domain::frequency));
  if (K == 0) return I;
  if (K == 1) {
    I.push_back(combine({{0.5 * h, &f[0]}, {0.5 * h, &f[1]}}));
    return I;
  }
  if (K == 2) {
    I.push_back(combine({{5 * h / 12, &f[0]}, {8 * h / 12, &f[1]}, {-h / 12, &f[2]}}));
  } else {
    I.push_back(combine({{9 * h / 24, &f[0]}, {19 * h / 24, &f[1]},
                         {-5 * h / 24, &f[2]}, {h / 24, &f[3]}}));
  }
  for (std::size_t k = 2; k <= K; ++k) {
    if (k % 2 == 0) {
      I.push_back(combine({{1.0, &I[k - 2]}, {h / 3, &f[k - 2]},
                           {4 * h / 3, &f[k - 1]}, {h / 3, &f[k]}}));
    } else {
      I.push_back(combine({{1.0, &I[k - 3]}, {3 * h / 8, &f[k - 3]},
                           {9 * h / 8, &f[k - 2]}, {9 * h / 8, &f[k - 1]},
                           {3 * h / 8, &f[k]}}));
    }
  }
  return I;
}

}  // namespace

DuhamelMoments duhamel_moments(const std::vector<ModeField>& G, double h) {
  if (G.empty()) throw Error("Duhamel needs at least one forcing sample");
  std::vector<ModeField> c, s;
  c.reserve(G.size());
  s.reserve(G.size());
  for (std::size_t k = 0; k < G.size(); ++k) {
    if (G[k].domain() != Domain::frequency)
      throw Error("Duhamel moments expect frequency-side samples");
    const double tau = static_cast<double>(k) * h;
    c.push_back(multiply([tau](double r) { return cplx(std::cos(tau * r)); }, G[k]));
    s.push_back(multiply([tau](double r) { return cplx(std::sin(tau * r)); }, G[k]));
  }
  return {cumulative(c, h), cumulative(s, h)};
}

double effective_frequency(const std::vector<ModeField>& G, double tol) {
  if (G.empty()) return 0.0;
  const auto& g = *G[0].model()->freq();
  std::vector<double> mass(static_cast<std::size_t>(g.size()), 0.0);
  double total = 0.0;
  for (const auto& f : G)
    for (const auto& [k, p] : f.modes())
      for (int j = 0; j < p.size(); ++j) {
        const double m = std::norm(p[j]) * g.weight(j);
        mass[static_cast<std::size_t>(j)] += m;
        total += m;
      }
  if (total == 0.0) return 0.0;
  double tail = 0.0;
  for (int j = g.size() - 1; j >= 0; --j) {
    tail += mass[static_cast<std::size_t>(j)];
    if (tail > tol * tol * total) return g.node(j);
  }
  return g.node(0);
}

ModeField duhamel(const std::vector<ModeField>& forcing, double h,
                  Diagnostics* diag) {
  if (forcing.empty()) throw Error("Duhamel needs at least one forcing sample");
  std::vector<ModeField> G;
  G.reserve(forcing.size());
  for (const auto& f : forcing)
    G.push_back(f.domain() == Domain::space ? to_frequency(f, diag) : f);
  const double rho_eff = effective_frequency(G);
  if (h * rho_eff > 0.25) {
    std::ostringstream msg;
    msg << "time step " << h << " under-resolves forcing frequencies up to "
        << rho_eff << " (need h*rho <= 1/4)";
    throw TimeStepTooCoarse(msg.str());
  }
  const auto mom = duhamel_moments(G, h);
  const double t = h * static_cast<double>(forcing.size() - 1);
  const auto& C = mom.C.back();
  const auto& S = mom.S.back();
  ModeField out = C;
  const auto& rho = out.model()->freq()->nodes();
  for (auto& [k, p] : C.modes()) {
    const auto* sp = S.find(k);
    auto& o = out.at(k);
    for (std::size_t j = 0; j < rho.size(); ++j) {
      const cplx sv = sp ? sp->values[j] : cplx{};
      o.values[j] = (std::sin(t * rho[j]) * p.values[j] -
                     std::cos(t * rho[j]) * sv) / rho[j];
    }
  }
  return to_space(out, diag);
}

ModeField riesz_compare(double s, const ModeField& f, const SpectralData& spec_0,
                        Diagnostics* diag) {
  const auto& spec = f.model()->spec();
  if (spec.dim() != spec_0.dim() || spec.size() != spec_0.size())
    throw IncompatibleSpectra("spectra have different mode counts");
  for (std::size_t m = 0; m < spec.size(); ++m)
    if (spec.multiplicity(m) != spec_0.multiplicity(m))
      throw IncompatibleSpectra("mode multiplicities differ");
  if (f.domain() != Domain::space) throw Error("riesz_compare expects a space-side field");

  const auto& rho = f.model()->freq()->nodes();
  ModeField out = f.with_domain(Domain::space);
  HankelDiagnostics hd;
  for (const auto& [k, a] : f.modes()) {
    const auto& pv = f.model()->plan(k.mode);
    const auto& p0 = f.model()->plan_for_order(spec_0.nu(static_cast<std::size_t>(k.mode)));
    auto b = pv.forward(a, &hd);
    for (std::size_t j = 0; j < rho.size(); ++j) b.values[j] *= std::pow(rho[j], -s);
    auto c = p0.forward(pv.inverse(b, &hd), &hd);
    for (std::size_t j = 0; j < rho.size(); ++j) c.values[j] *= std::pow(rho[j], s);
    out.at(k) = p0.inverse(c, &hd);
  }
  if (diag) diag->hankel.merge(hd);
  return out;
}

void write_wave_state(const std::filesystem::path& dir, const WaveState& state,
                      const Diagnostics& diag) {
  std::filesystem::create_directories(dir);
  const auto& model = *state.u.model();
  std::set<ModeKey> keys;
  for (const auto& [k, p] : state.u.modes()) keys.insert(k);
  for (const auto& [k, p] : state.ut.modes()) keys.insert(k);
  nlohmann::json files = nlohmann::json::array();
  for (const auto& k : keys) {
    const std::string name =
        "mode_" + std::to_string(k.mode) + "_" + std::to_string(k.copy) + ".csv";
    std::ofstream out(dir / name);
    out.precision(17);
    out << "r,u_re,u_im,ut_re,ut_im\n";
    const auto* u = state.u.find(k);
    const auto* ut = state.ut.find(k);
    const auto& g = *model.space();
    for (int i = 0; i < g.size(); ++i) {
      const cplx a = u ? (*u)[i] : cplx{};
      const cplx b = ut ? (*ut)[i] : cplx{};
      out << g.node(i) << ',' << a.real() << ',' << a.imag() << ',' << b.real()
          << ',' << b.imag() << '\n';
    }
    files.push_back({{"mode", k.mode}, {"copy", k.copy},
                     {"nu", model.spec().nu(static_cast<std::size_t>(k.mode))},
                     {"file", name}});
  }
  nlohmann::json manifest = {
      {"spectral_hash", model.spec().hash()},
      {"spectral", to_json(model.spec())},
      {"grid", model.space()->describe()},
      {"t", state.t},
      {"y_independent", state.u.is_y_independent()},
      {"modes", files},
      {"diagnostics", diag.to_json()}};
  std::ofstream(dir / "manifest.json") << manifest.dump(2) << '\n';
}

}  // namespace conewave
