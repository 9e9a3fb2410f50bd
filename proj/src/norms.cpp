#include "conewave/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conewave/bessel.hpp"
#include "conewave/bumps.hpp"
#include "conewave/errors.hpp"
#include "gauss.hpp"

namespace conewave {

const char* to_string(NormKind k) {
  switch (k) {
    case NormKind::lebesgue: return "lebesgue";
    case NormKind::lorentz: return "lorentz";
    case NormKind::mixed: return "mixed";
    case NormKind::sobolev: return "sobolev";
    case NormKind::weighted: return "weighted";
  }
  return "?";
}

nlohmann::json NormReport::to_json() const {
  return {{"kind", to_string(kind)},
          {"params", params},
          {"value", value},
          {"error_estimate", error_estimate}};
}

Window node_window(const RadialGrid& g, double a, double b) {
  const int i0 = g.index_of(a), i1 = g.index_of(b);
  if (i0 < 0 || i1 < 0) throw BadGrid("window endpoints must be grid nodes");
  if (i1 <= i0) throw BadGrid("window must contain at least two nodes");
  return {i0, i1};
}

namespace {

struct Resolved {
  int i0, i1;
  std::vector<double> w;       // weights on [i0, i1] (zero elsewhere)
  std::vector<double> coarse;  // same rule on every other node, for error estimates
};

Resolved resolve(const RadialGrid& g, const Window& win) {
  Resolved r;
  r.i0 = win.i0;
  r.i1 = win.i1 < 0 ? g.size() - 1 : win.i1;
  if (r.i0 < 0 || r.i1 >= g.size() || r.i0 >= r.i1)
    throw BadGrid("window outside the grid");
  r.w = (r.i0 == 0 && r.i1 == g.size() - 1) ? g.weights() : g.window_weights(r.i0, r.i1);
  r.coarse.assign(static_cast<std::size_t>(g.size()), 0.0);
  const int count = (r.i1 - r.i0) / 2 + 1;
  if (count >= 2) {
    RadialGrid c(g.node(r.i0), 2.0 * g.log_step(), count, g.dim());
    for (int k = 0; k < count; ++k)
      r.coarse[static_cast<std::size_t>(r.i0 + 2 * k)] = c.weight(k);
  }
  return r;
}

struct Cells {
  std::vector<double> v, mu, mu_coarse;
};

Cells cells(const ModeField& f, const Window& win) {
  if (f.domain() != Domain::space)
    throw Error("pointwise norms need a space-side field");
  const auto& g = *f.model()->space();
  const auto res = resolve(g, win);
  const double vol = f.model()->spec().volume();
  RadialProfile vals(f.model()->space());
  if (f.is_y_independent()) {
    vals = f.radial_values();
  } else if (auto key = f.single_key()) {
    vals = *f.find(*key);
    vals *= 1.0 / std::sqrt(vol);
  } else if (!f.modes().empty()) {
    throw AngularUnavailable(
        "L^r with r != 2 needs a y-independent or single-mode field");
  }
  Cells c;
  for (int i = res.i0; i <= res.i1; ++i) {
    const auto k = static_cast<std::size_t>(i);
    c.v.push_back(std::abs(vals[i]));
    c.mu.push_back(vol * res.w[k]);
    c.mu_coarse.push_back(vol * res.coarse[k]);
  }
  return c;
}

double power_sum(const std::vector<double>& v, const std::vector<double>& mu,
                 double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0.0 && mu[i] != 0.0) s += std::pow(v[i], p) * mu[i];
  return s;
}

}  // namespace

NormReport spatial_norm(const ExtendedReal& r_exp, const ModeField& f,
                        const Window& win) {
  NormReport rep;
  rep.kind = NormKind::lebesgue;
  rep.params = {{"r", to_json(r_exp)}};
  if (!r_exp.is_infinite() && r_exp.value() < 1.0)
    throw Error("Lebesgue exponent must be >= 1");

  if (!r_exp.is_infinite() && r_exp.value() == 2.0) {
    if (f.domain() != Domain::space) throw Error("spatial_norm needs a space-side field");
    const auto res = resolve(*f.model()->space(), win);
    double s = 0.0, sc = 0.0;
    for (const auto& [k, a] : f.modes())
      for (int i = res.i0; i <= res.i1; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        s += std::norm(a[i]) * res.w[ii];
        sc += std::norm(a[i]) * res.coarse[ii];
      }
    rep.value = std::sqrt(s);
    rep.error_estimate = std::abs(rep.value - std::sqrt(sc)) / 15.0;
    return rep;
  }

  const auto c = cells(f, win);
  if (r_exp.is_infinite()) {
    rep.value = c.v.empty() ? 0.0 : *std::max_element(c.v.begin(), c.v.end());
    double jump = 0.0;
    for (std::size_t i = 1; i < c.v.size(); ++i)
      jump = std::max(jump, std::abs(c.v[i] - c.v[i - 1]));
    rep.error_estimate = 0.5 * jump;
    return rep;
  }
  const double p = r_exp.value();
  rep.value = std::pow(power_sum(c.v, c.mu, p), 1.0 / p);
  rep.error_estimate =
      std::abs(rep.value - std::pow(power_sum(c.v, c.mu_coarse, p), 1.0 / p)) / 15.0;
  return rep;
}

double lorentz_cells(double p, const ExtendedReal& rr, std::vector<double> values,
                     std::vector<double> measures) {
  if (!(p >= 1.0)) throw Error("Lorentz exponent p must be >= 1");
  if (!rr.is_infinite() && rr.value() < 1.0)
    throw Error("Lorentz exponent r must be >= 1");
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] > values[b];
  });
  double S = 0.0, acc = 0.0;
  for (auto k : order) {
    const double v = values[k];
    if (v == 0.0) break;
    const double S_prev = S;
    S += measures[k];
    if (rr.is_infinite()) {
      acc = std::max(acc, v * std::pow(S, 1.0 / p));
    } else {
      const double e = rr.value() / p;
      acc += std::pow(v, rr.value()) * (p / rr.value()) *
             (std::pow(S, e) - std::pow(S_prev, e));
    }
  }
  return rr.is_infinite() ? acc : std::pow(acc, 1.0 / rr.value());
}

NormReport lorentz_norm(double p, const ExtendedReal& rr, const ModeField& f,
                        const Window& win) {
  NormReport rep;
  rep.kind = NormKind::lorentz;
  rep.params = {{"p", p}, {"r", to_json(rr)}};
  auto c = cells(f, win);
  rep.value = lorentz_cells(p, rr, c.v, c.mu);
  rep.error_estimate = std::abs(rep.value - lorentz_cells(p, rr, c.v, c.mu_coarse)) / 15.0;
  return rep;
}

NormReport time_norm(const ExtendedReal& q, const std::vector<double>& inner,
                     double t0, double t1) {
  NormReport rep;
  rep.kind = NormKind::mixed;
  rep.params = {{"q", to_json(q)}, {"t0", t0}, {"t1", t1}};
  if (inner.size() < 3) throw Error("time norms need at least 3 samples");
  const std::size_t K = inner.size() - 1;
  if (q.is_infinite()) {
    rep.value = *std::max_element(inner.begin(), inner.end());
    double jump = 0.0;
    for (std::size_t k = 1; k <= K; ++k)
      jump = std::max(jump, std::abs(inner[k] - inner[k - 1]));
    rep.error_estimate = 0.5 * jump;
    return rep;
  }
  const double qq = q.value();
  const double h = (t1 - t0) / static_cast<double>(K);
  std::vector<double> g(inner.size());
  for (std::size_t k = 0; k <= K; ++k) g[k] = std::pow(inner[k], qq);
  const std::size_t simpson_end = (K % 2 == 0) ? K : K - 3;
  double I = 0.0;
  for (std::size_t k = 0; k + 2 <= simpson_end; k += 2)
    I += h / 3.0 * (g[k] + 4.0 * g[k + 1] + g[k + 2]);
  if (simpson_end != K)
    I += 3.0 * h / 8.0 *
         (g[K - 3] + 3.0 * g[K - 2] + 3.0 * g[K - 1] + g[K]);
  double T = 0.5 * (g.front() + g.back());
  for (std::size_t k = 1; k < K; ++k) T += g[k];
  T *= h;
  rep.value = std::pow(I, 1.0 / qq);
  rep.error_estimate = std::abs(rep.value - std::pow(T, 1.0 / qq));
  return rep;
}

NormReport mixed_norm(const ExtendedReal& q, const ExtendedReal& r_exp,
                      const std::vector<ModeField>& samples, double t0,
                      double t1, const Window& win) {
  std::vector<double> inner(samples.size());
  const int count = static_cast<int>(samples.size());
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k)
    inner[static_cast<std::size_t>(k)] = spatial_norm(r_exp, samples[static_cast<std::size_t>(k)], win).value;
  auto rep = time_norm(q, inner, t0, t1);
  rep.params["r"] = to_json(r_exp);
  return rep;
}

NormReport sobolev_norm(double s, const ModeField& f, Diagnostics* diag) {
  NormReport rep;
  rep.kind = NormKind::sobolev;
  rep.params = {{"s", s}};
  const ModeField b = f.domain() == Domain::space ? to_frequency(f, diag) : f;
  const auto& g = *b.model()->freq();
  double sum = 0.0, low = 0.0;
  for (const auto& [k, p] : b.modes())
    for (int j = 0; j < p.size(); ++j) {
      const double m = std::norm(p[j]) * std::pow(g.node(j), 2.0 * s) * g.weight(j);
      sum += m;
      if (g.node(j) < 10.0 * g.r_min()) low += m;
    }
  rep.value = std::sqrt(sum);
  rep.error_estimate = std::sqrt(low);
  if (diag && s < 0.0 && sum > 0.0 && low > 1e-12 * sum)
    diag->warn("negative-order Sobolev norm sees low-frequency mass");
  return rep;
}

NormReport smoothing_norm(double beta, const std::vector<ModeField>& samples,
                          double t0, double t1, const Window& win) {
  std::vector<double> inner(samples.size(), 0.0);
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& f = samples[k];
    if (f.domain() != Domain::space) throw Error("smoothing_norm needs space-side fields");
    const auto& g = *f.model()->space();
    const auto res = resolve(g, win);
    double s = 0.0;
    for (const auto& [key, a] : f.modes())
      for (int i = res.i0; i <= res.i1; ++i)
        s += std::norm(a[i]) * std::pow(g.node(i), -2.0 * beta) *
             res.w[static_cast<std::size_t>(i)];
    inner[k] = std::sqrt(s);
  }
  auto rep = time_norm(2.0, inner, t0, t1);
  rep.kind = NormKind::weighted;
  rep.params["beta"] = beta;
  return rep;
}

double dyadic_Q(double nu, int n, const std::function<double(double)>& b,
                double R, double M) {
  using detail::gauss;
  using detail::GaussLegendre;
  const auto& gl = gauss();
  // Panels sized so the Bessel phase rρ moves by at most ~4 per panel.
  const int pr = static_cast<int>(std::ceil(2.0 * R / 4.0)) + 8;
  const int pp = static_cast<int>(std::ceil(2.0 * R / 4.0)) + 8;
  std::vector<double> rho, wrho, amp;
  for (int p = 0; p < pp; ++p) {
    const double a = 1.0 + static_cast<double>(p) / pp, c = 1.0 + (p + 1.0) / pp;
    for (int i = 0; i < GaussLegendre::n; ++i) {
      const double x = 0.5 * (a + c) + 0.5 * (c - a) * gl.x[i];
      const double v = b(M * x) * dyadic_bump(x);
      rho.push_back(x);
      wrho.push_back(0.5 * (c - a) * gl.w[i]);
      amp.push_back(v * v);
    }
  }
  const double power = -(n - 2.0);
  const int count = pr * GaussLegendre::n;
  std::vector<double> part(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic, 20)
  for (int idx = 0; idx < count; ++idx) {
    const int p = idx / GaussLegendre::n, i = idx % GaussLegendre::n;
    const double a = R + R * p / pr, c = R + R * (p + 1.0) / pr;
    const double r = 0.5 * (a + c) + 0.5 * (c - a) * gl.x[i];
    const double wr = 0.5 * (c - a) * gl.w[i];
    double inner = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
      if (amp[j] == 0.0) continue;
      const double x = r * rho[j];
      const double J = bessel_j(nu, x);
      inner += wrho[j] * amp[j] * std::pow(x, power) * J * J;
    }
    part[static_cast<std::size_t>(idx)] = wr * inner;
  }
  double total = 0.0;
  for (double v : part) total += v;
  return total;
}

double dyadic_Q(double nu, const FrequencyProfile& b, double R, double M) {
  const auto& g = *b.grid;
  if (M < g.r_min() || 2.0 * M > g.r_max())
    throw BadGrid("b(Mρ) for ρ in [1,2] leaves the frequency grid");
  auto interp = [&g, &b](double x) {
    const double t = (std::log(x) - g.log_r_min()) / g.log_step();
    int i = static_cast<int>(std::floor(t)) - 1;
    i = std::clamp(i, 0, g.size() - 4);
    const double u = t - i;
    double s = 0.0;
    for (int k = 0; k < 4; ++k) {
      double l = 1.0;
      for (int m = 0; m < 4; ++m)
        if (m != k) l *= (u - m) / (k - m);
      s += l * b[i + k].real();
    }
    return s;
  };
  return dyadic_Q(nu, g.dim(), interp, R, M);
}

}  // namespace conewave
