// Serial vs OpenMP correlation kernel, and one full transform per size.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <vector>

#include "conewave/bumps.hpp"
#include "conewave/hankel.hpp"
#include "conewave/kernels.hpp"

using namespace conewave;
using clk = std::chrono::steady_clock;

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int k = 0; k < reps; ++k) {
    const auto t0 = clk::now();
    f();
    best = std::min(best, std::chrono::duration<double>(clk::now() - t0).count());
  }
  return best;
}

int main() {
  std::printf("threads=%d\n", omp_get_max_threads());
  std::printf("%8s %12s %12s %8s %12s %12s\n", "N", "serial[s]", "openmp[s]", "speedup",
              "max|diff|", "transform[s]");
  for (int N : {1024, 2048, 4096, 8192}) {
    const auto g = share(make_radial_grid(1e-3, 1e3, N, 3));
    HankelPlan plan(1.5, g, share(g->reciprocal()));
    const auto f = sample(g, [](double r) { return gaussian_bump(r, 1.0, 0.2); });
    const auto& k = plan.kernel();
    std::vector<cplx> a(static_cast<std::size_t>(N)), b(a.size());
    const int cut = plan.cut();
    const double ts = best_of(3, [&] {
      kernels::correlate_serial(k.data(), f.values.data(), N, a.data(), N, cut);
    });
    const double tp = best_of(3, [&] {
      kernels::correlate_parallel(k.data(), f.values.data(), N, b.data(), N, cut);
    });
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    const double tt = best_of(3, [&] { (void)plan.forward(f); });
    std::printf("%8d %12.5f %12.5f %8.2f %12.3e %12.5f\n", N, ts, tp, ts / tp, diff, tt);
  }
}
