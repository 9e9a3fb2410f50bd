#include "conewave/nlw.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

#include "conewave/norms.hpp"

namespace conewave {

StrichartzPair nlw_pair(int n) {
  if (n < 3) throw Error("dimension must be >= 3");
  if (n <= 6)
    return {(n + 2.0) / (n - 2.0), 2.0 * (n + 2.0) / (n - 2.0)};
  return {2.0, 2.0 * n / (n - 3.0)};
}

std::vector<double> IterationTrace::ratios() const {
  std::vector<double> r;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (rows[k - 1].distance > 0.0) r.push_back(rows[k].distance / rows[k - 1].distance);
  return r;
}

void IterationTrace::write_csv(std::ostream& out) const {
  out.precision(17);
  out << "iter,strichartz_norm,distance,energy_drift\n";
  for (const auto& r : rows)
    out << r.iter << ',' << r.strichartz_norm << ',' << r.distance << ','
        << r.energy_drift << '\n';
}

double max_contraction(const IterationTrace& trace) {
  double m = 0.0;
  for (double r : trace.ratios()) m = std::max(m, r);
  return m;
}

namespace {

bool declared_radial(const ModeField& f) {
  return f.is_y_independent() || f.modes().empty();
}

// |u|^{4/(n-2)} u on the radial values of a y-independent field.
ModeField nonlinearity(const ModeField& u) {
  const int n = u.model()->dim();
  const double p = 4.0 / (n - 2.0);
  RadialProfile v = u.radial_values();
  for (auto& x : v.values) {
    const double a = x.real();
    x = std::pow(std::abs(a), p) * a;
  }
  return ModeField::y_independent(u.model(), v);
}

double potential_integral(const ModeField& u) {
  const int n = u.model()->dim();
  const double e = 2.0 * n / (n - 2.0);
  const RadialProfile v = u.radial_values();
  const auto& g = *u.model()->space();
  double s = 0.0;
  for (int i = 0; i < g.size(); ++i) s += std::pow(std::abs(v[i].real()), e) * g.weight(i);
  return s * u.model()->spec().volume();
}

double kinetic_spectral(const ModeField& uh, const ModeField& uth) {
  const auto& g = *uh.model()->freq();
  double s = 0.0;
  for (const auto& [k, p] : uh.modes())
    for (int j = 0; j < p.size(); ++j)
      s += g.node(j) * g.node(j) * std::norm(p[j]) * g.weight(j);
  for (const auto& [k, p] : uth.modes())
    for (int j = 0; j < p.size(); ++j) s += std::norm(p[j]) * g.weight(j);
  return 0.5 * s;
}

double potential_coefficient(int n, double gamma) {
  return gamma * (n - 2.0) / (2.0 * n);
}

ModeField space_real(const ModeField& b, Diagnostics* diag) {
  ModeField f = to_space(b, diag).real_part();
  f.set_y_independent(b.is_y_independent());
  return f;
}

}  // namespace

NlwSolution picard_solve(const ModeField& u0, const ModeField& u1,
                         const NlwConfig& cfg) {
  if (!declared_radial(u0) || !declared_radial(u1))
    throw AngularUnavailable("the nonlinearity needs y-independent data");
  const auto model = u0.model();
  const int n = model->dim();
  if (!(cfg.h > 0.0) || !(cfg.T > 0.0)) throw Error("T and h must be positive");
  const long K = std::lround(cfg.T / cfg.h);
  if (std::abs(K * cfg.h - cfg.T) > 1e-12 * cfg.T)
    throw Error("T must be an integer multiple of h");
  if (K < 2) throw Error("need at least two time steps");
  const auto pair = nlw_pair(n);
  const double gamma = cfg.gamma;

  NlwSolution sol(model);
  sol.gamma = gamma;
  ModeField y0 = u0, y1 = u1;
  y0.set_y_independent(true);
  y1.set_y_independent(true);
  WavePropagator prop(y0, y1, &sol.diag);
  sol.b0 = prop.b0();
  sol.b1 = prop.b1();

  const auto& rho = model->freq()->nodes();
  const std::size_t S = static_cast<std::size_t>(K) + 1;
  std::vector<ModeField> free_hat, free_t_hat, free_space;
  for (std::size_t k = 0; k < S; ++k) {
    const double t = static_cast<double>(k) * cfg.h;
    sol.times.push_back(t);
    auto [a, b] = prop.spectral_at(t);
    free_space.push_back(space_real(a, &sol.diag));
    free_hat.push_back(std::move(a));
    free_t_hat.push_back(std::move(b));
  }

  // Iterates are carried as Duhamel corrections w = u - u_free so that
  // differences between iterates never cancel against the free wave.
  std::vector<ModeField> w(S, ModeField(model)), w_hat, w_t_hat;
  for (auto& x : w) x.set_y_independent(true);
  double d1 = 0.0, d_prev = 0.0;
  int growing = 0;
  const double c_pot = potential_coefficient(n, gamma);

  for (int m = 1; m <= cfg.max_iter; ++m) {
    std::vector<ModeField> G;
    G.reserve(S);
    for (std::size_t k = 0; k < S; ++k)
      G.push_back(to_frequency(nonlinearity(free_space[k] + w[k]), &sol.diag));
    const double rho_eff = effective_frequency(G);
    if (cfg.h * rho_eff > 0.25) {
      std::ostringstream msg;
      msg << "time step " << cfg.h << " under-resolves forcing frequencies up to "
          << rho_eff;
      throw TimeStepTooCoarse(msg.str());
    }
    sol.moments = duhamel_moments(G, cfg.h);

    std::vector<ModeField> nw, nw_hat, nw_t_hat;
    for (std::size_t k = 0; k < S; ++k) {
      const double t = sol.times[k];
      ModeField a = free_hat[k].with_domain(Domain::frequency);
      ModeField b = a;
      for (const auto& [key, C] : sol.moments.C[k].modes()) {
        const auto* Sp = sol.moments.S[k].find(key);
        auto& pa = a.at(key);
        auto& pb = b.at(key);
        for (std::size_t j = 0; j < rho.size(); ++j) {
          const double c = std::cos(t * rho[j]), s = std::sin(t * rho[j]);
          const cplx sv = Sp ? Sp->values[j] : cplx{};
          pa.values[j] = -gamma * (s * C.values[j] - c * sv) / rho[j];
          pb.values[j] = -gamma * (c * C.values[j] + s * sv);
        }
      }
      nw.push_back(space_real(a, &sol.diag));
      nw_hat.push_back(std::move(a));
      nw_t_hat.push_back(std::move(b));
    }

    std::vector<double> dist(S), size(S), wsize(S), E(S);
    const auto r = pair.r;
    for (std::size_t k = 0; k < S; ++k) {
      const ModeField u = free_space[k] + nw[k];
      dist[k] = spatial_norm(r, nw[k] - w[k]).value;
      size[k] = spatial_norm(r, u).value;
      wsize[k] = spatial_norm(r, nw[k]).value;
      E[k] = kinetic_spectral(free_hat[k] + nw_hat[k], free_t_hat[k] + nw_t_hat[k]) +
             c_pot * potential_integral(u);
    }
    IterationRecord rec;
    rec.iter = m;
    rec.distance = time_norm(pair.q, dist, 0.0, cfg.T).value;
    rec.strichartz_norm = time_norm(pair.q, size, 0.0, cfg.T).value;
    const double w_norm = time_norm(pair.q, wsize, 0.0, cfg.T).value;
    double drift = 0.0;
    for (double e : E) drift = std::max(drift, std::abs(e - E[0]));
    rec.energy_drift = E[0] != 0.0 ? drift / std::abs(E[0]) : drift;
    sol.trace.rows.push_back(rec);
    sol.energy = E;

    w = std::move(nw);
    w_hat = std::move(nw_hat);
    w_t_hat = std::move(nw_t_hat);

    if (!std::isfinite(rec.distance) || !std::isfinite(w_norm))
      throw IterationDiverged("Picard iterate overflowed", sol.trace);
    if (m == 1) d1 = rec.distance;
    if (rec.distance == 0.0 ||
        rec.distance <= std::max(cfg.tol * d1, 1e-13 * w_norm)) {
      sol.converged = true;
      break;
    }
    if (m > 1) {
      growing = rec.distance >= d_prev ? growing + 1 : 0;
      if (growing >= 3)
        throw IterationDiverged("Picard distances grew three times in a row",
                                sol.trace);
    }
    d_prev = rec.distance;
  }

  for (std::size_t k = 0; k < S; ++k) {
    ModeField uh = free_hat[k], uth = free_t_hat[k];
    if (!w_hat.empty()) {
      uh += w_hat[k];
      uth += w_t_hat[k];
    }
    sol.states.push_back({free_space[k] + w[k], space_real(uth, &sol.diag),
                          sol.times[k]});
  }
  return sol;
}

double energy(const WaveState& state, double gamma) {
  const auto uh = to_frequency(state.u);
  const auto uth = to_frequency(state.ut);
  double e = kinetic_spectral(uh, uth);
  if (gamma != 0.0)
    e += potential_coefficient(state.u.model()->dim(), gamma) *
         potential_integral(state.u);
  return e;
}

double data_size(const ModeField& u0, const ModeField& u1) {
  const double a = sobolev_norm(1.0, u0).value;
  const double b = sobolev_norm(0.0, u1).value;
  return std::sqrt(a * a + b * b);
}

ScatteringData scattering_data(const NlwSolution& sol) {
  const auto& rho = sol.b0.model()->freq()->nodes();
  const auto& g = *sol.b0.model()->freq();
  const double gamma = sol.gamma;
  ScatteringData out{sol.b0, sol.b1, sol.times, {}};
  if (sol.moments.C.empty() || gamma == 0.0) {
    out.u0_plus = space_real(sol.b0, nullptr);
    out.u1_plus = space_real(sol.b1, nullptr);
    out.defect.assign(sol.times.size(), 0.0);
    return out;
  }
  const auto& CK = sol.moments.C.back();
  const auto& SK = sol.moments.S.back();
  ModeField B0 = sol.b0, B1 = sol.b1;
  for (const auto& [key, C] : CK.modes()) {
    const auto* Sp = SK.find(key);
    auto& p0 = B0.at(key);
    auto& p1 = B1.at(key);
    for (std::size_t j = 0; j < rho.size(); ++j) {
      const cplx sv = Sp ? Sp->values[j] : cplx{};
      p0.values[j] += gamma * sv / rho[j];
      p1.values[j] -= gamma * C.values[j];
    }
  }
  out.u0_plus = space_real(B0, nullptr);
  out.u1_plus = space_real(B1, nullptr);
  for (std::size_t k = 0; k < sol.times.size(); ++k) {
    double s = 0.0;
    for (const auto& [key, C] : CK.modes()) {
      const auto* Ck = sol.moments.C[k].find(key);
      const auto* Sk = sol.moments.S[k].find(key);
      const auto* Sp = SK.find(key);
      for (int j = 0; j < g.size(); ++j) {
        const cplx dc = C[j] - (Ck ? (*Ck)[j] : cplx{});
        const cplx ds = (Sp ? (*Sp)[j] : cplx{}) - (Sk ? (*Sk)[j] : cplx{});
        s += (std::norm(dc) + std::norm(ds)) * g.weight(j);
      }
    }
    out.defect.push_back(std::abs(gamma) * std::sqrt(s));
  }
  return out;
}

DeltaSearch delta_threshold(const ModeField& u0_shape, const ModeField& u1_shape,
                            const NlwConfig& cfg, double lo, double hi,
                            int steps) {
  const double size = data_size(u0_shape, u1_shape);
  if (!(size > 0.0)) throw Error("data shape must be nonzero");
  DeltaSearch out;
  auto passes = [&](double delta) {
    const double c = delta / size;
    bool ok = false;
    try {
      const auto sol = picard_solve(c * u0_shape, c * u1_shape, cfg);
      ok = sol.converged && max_contraction(sol.trace) <= 0.5;
    } catch (const IterationDiverged&) {
      ok = false;
    }
    out.probes.emplace_back(delta, ok);
    return ok;
  };
  if (!passes(lo)) throw Error("delta search: lower bracket does not contract");
  if (passes(hi)) throw Error("delta search: upper bracket still contracts");
  double a = std::log(lo), b = std::log(hi);
  for (int s = 0; s < steps; ++s) {
    const double mid = 0.5 * (a + b);
    (passes(std::exp(mid)) ? a : b) = mid;
  }
  out.delta_pass = std::exp(a);
  out.delta_fail = std::exp(b);
  return out;
}

}  // namespace conewave
