#include "conewave/kernels.hpp"

#include <algorithm>

namespace conewave::kernels {

namespace {

inline std::complex<double> row(const double* k, const std::complex<double>* x,
                                int n_in, int j, int cut) {
  const int last = std::min(n_in - 1, cut - j);
  double re = 0.0, im = 0.0;
  const double* kj = k + j;
  for (int i = 0; i <= last; ++i) {
    re += kj[i] * x[i].real();
    im += kj[i] * x[i].imag();
  }
  return {re, im};
}

}  // namespace

void correlate_serial(const double* k, const std::complex<double>* x, int n_in,
                      std::complex<double>* out, int n_out, int cut) {
  for (int j = 0; j < n_out; ++j) out[j] = row(k, x, n_in, j, cut);
}

void correlate_parallel(const double* k, const std::complex<double>* x,
                        int n_in, std::complex<double>* out, int n_out,
                        int cut) {
#pragma omp parallel for schedule(dynamic, 64)
  for (int j = 0; j < n_out; ++j) out[j] = row(k, x, n_in, j, cut);
}

}  // namespace conewave::kernels
