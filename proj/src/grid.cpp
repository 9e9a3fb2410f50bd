#include "conewave/grid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "conewave/errors.hpp"

namespace conewave {

namespace {

std::vector<double> log_rule(const std::vector<double>& nodes, double step,
                             int n, int i0, int i1) {
  std::vector<double> w(nodes.size(), 0.0);
  const int m = i1 - i0 + 1;
  for (int i = i0; i <= i1; ++i)
    w[static_cast<std::size_t>(i)] = step * std::pow(nodes[static_cast<std::size_t>(i)], n);
  if (m < 2) return w;
  auto scale = [&](int i, double c) { w[static_cast<std::size_t>(i)] *= c; };
  if (m < 8) {
    scale(i0, 0.5);
    scale(i1, 0.5);
    return w;
  }
  const double end[3] = {3.0 / 8.0, 7.0 / 6.0, 23.0 / 24.0};
  for (int k = 0; k < 3; ++k) {
    scale(i0 + k, end[k]);
    scale(i1 - k, end[k]);
  }
  return w;
}

}  // namespace

RadialGrid::RadialGrid(double r_min, double log_step, int N, int n)
    : n_(n), log_r_min_(std::log(r_min)), log_step_(log_step) {
  if (!(r_min > 0.0) || !std::isfinite(r_min))
    throw BadGrid("r_min must be positive and finite");
  if (!(log_step > 0.0) || !std::isfinite(log_step))
    throw BadGrid("log spacing must be positive");
  if (N < 2) throw BadGrid("grid needs N >= 2 nodes");
  if (n < 3) throw BadGrid("cone dimension must be >= 3");
  nodes_.resize(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    nodes_[static_cast<std::size_t>(i)] = std::exp(log_r_min_ + i * log_step_);
  nodes_.front() = r_min;
  weights_ = log_rule(nodes_, log_step_, n_, 0, N - 1);
}

int RadialGrid::index_of(double r) const {
  if (!(r > 0.0)) return -1;
  const double x = (std::log(r) - log_r_min_) / log_step_;
  const long i = std::lround(x);
  if (i < 0 || i >= size()) return -1;
  if (std::abs(nodes_[static_cast<std::size_t>(i)] - r) > 1e-9 * r) return -1;
  return static_cast<int>(i);
}

std::vector<double> RadialGrid::window_weights(int i0, int i1) const {
  if (i0 < 0 || i1 >= size() || i0 > i1)
    throw BadGrid("window indices outside the grid");
  return log_rule(nodes_, log_step_, n_, i0, i1);
}

RadialGrid RadialGrid::reciprocal() const {
  return RadialGrid(1.0 / r_max(), log_step_, size(), n_);
}

RadialGrid RadialGrid::extended(int below, int above) const {
  if (below < 0 || above < 0) throw BadGrid("extension counts must be >= 0");
  return RadialGrid(std::exp(log_r_min_ - below * log_step_), log_step_,
                    size() + below + above, n_);
}

std::uint64_t RadialGrid::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  mix(static_cast<std::uint64_t>(n_));
  mix(std::bit_cast<std::uint64_t>(log_r_min_));
  mix(std::bit_cast<std::uint64_t>(log_step_));
  mix(static_cast<std::uint64_t>(size()));
  return h;
}

nlohmann::json RadialGrid::describe() const {
  return {{"r_min", r_min()},
          {"r_max", r_max()},
          {"N", size()},
          {"n", n_},
          {"log_step", log_step_}};
}

RadialGrid make_radial_grid(double r_min, double r_max, int N, int n) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw BadGrid("need 0 < r_min < r_max");
  if (N < 2) throw BadGrid("grid needs N >= 2 nodes");
  if (n < 3) throw BadGrid("cone dimension must be >= 3");
  RadialGrid g(r_min, std::log(r_max / r_min) / (N - 1), N, n);
  return g;
}

RadialGrid make_lattice_grid(double anchor, double log_step, double r_lo,
                             double r_hi, int n) {
  if (!(anchor > 0.0) || !(r_lo > 0.0) || !(r_hi > r_lo))
    throw BadGrid("need 0 < r_lo < r_hi and a positive anchor");
  if (!(log_step > 0.0)) throw BadGrid("log spacing must be positive");
  const double la = std::log(anchor);
  const long lo = std::lround(std::floor((std::log(r_lo) - la) / log_step + 1e-9));
  const long hi = std::lround(std::ceil((std::log(r_hi) - la) / log_step - 1e-9));
  return RadialGrid(std::exp(la + lo * log_step), log_step,
                    static_cast<int>(hi - lo + 1), n);
}

GridPtr share(RadialGrid g) {
  return std::make_shared<const RadialGrid>(std::move(g));
}

RadialProfile::RadialProfile(GridPtr g, std::vector<cplx> v)
    : grid(std::move(g)), values(std::move(v)) {
  if (!grid || static_cast<int>(values.size()) != grid->size())
    throw BadGrid("profile length does not match its grid");
}

namespace {

void require_same_grid(const RadialProfile& a, const RadialProfile& b) {
  if (a.grid != b.grid && !(*a.grid == *b.grid))
    throw BadGrid("profiles live on different grids");
}

}  // namespace

RadialProfile& RadialProfile::operator+=(const RadialProfile& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

RadialProfile& RadialProfile::operator-=(const RadialProfile& o) {
  require_same_grid(*this, o);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

RadialProfile& RadialProfile::operator*=(cplx c) {
  for (auto& v : values) v *= c;
  return *this;
}

double RadialProfile::l2_norm() const {
  double s = 0.0;
  const auto& w = grid->weights();
  for (std::size_t i = 0; i < values.size(); ++i) s += std::norm(values[i]) * w[i];
  return std::sqrt(s);
}

double RadialProfile::max_abs() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

double RadialProfile::imag_residue() const {
  double im = 0.0;
  for (const auto& v : values) im = std::max(im, std::abs(v.imag()));
  const double m = max_abs();
  return m > 0.0 ? im / m : 0.0;
}

RadialProfile operator+(RadialProfile a, const RadialProfile& b) { return a += b; }
RadialProfile operator-(RadialProfile a, const RadialProfile& b) { return a -= b; }
RadialProfile operator*(cplx c, RadialProfile a) { return a *= c; }

RadialProfile shift_nodes(const RadialProfile& f, int k) {
  RadialProfile out(f.grid);
  const int N = f.size();
  for (int i = 0; i < N; ++i) {
    const int src = i - k;
    if (src >= 0 && src < N) out[i] = f[src];
  }
  return out;
}

void write_profile_csv(std::ostream& out, const RadialProfile& f) {
  const auto& g = *f.grid;
  const bool complex_valued = f.imag_residue() > 0.0;
  out.precision(17);
  out << "# grid r_min=" << g.r_min() << " log_step=" << g.log_step()
      << " N=" << g.size() << " n=" << g.dim() << '\n';
  out << (complex_valued ? "node,value,imag\n" : "node,value\n");
  for (int i = 0; i < f.size(); ++i) {
    out << g.node(i) << ',' << f[i].real();
    if (complex_valued) out << ',' << f[i].imag();
    out << '\n';
  }
}

RadialProfile read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# grid", 0) != 0)
    throw ConfigError("profile CSV must start with a '# grid' header");
  double r_min = 0.0, step = 0.0;
  int N = 0, n = 0;
  std::istringstream hdr(line.substr(6));
  std::string tok;
  while (hdr >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const auto key = tok.substr(0, eq);
    const auto val = tok.substr(eq + 1);
    if (key == "r_min") r_min = std::stod(val);
    else if (key == "log_step") step = std::stod(val);
    else if (key == "N") N = std::stoi(val);
    else if (key == "n") n = std::stoi(val);
  }
  auto grid = share(RadialGrid(r_min, step, N, n));
  std::getline(in, line);  // column names
  std::vector<cplx> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    const bool has_im = static_cast<bool>(std::getline(row, c, ','));
    values.emplace_back(std::stod(b), has_im ? std::stod(c) : 0.0);
  }
  return RadialProfile(grid, std::move(values));
}

}  // namespace conewave
