#pragma once

// Hankel-type correlation on log grids:
//   out[j] = Σ_{i=0}^{min(n_in-1, cut-j)} k[i+j] · x[i],  j = 0..n_out-1
// With a shared log spacing the kernel (rρ)^{-(n-2)/2} J_ν(rρ) depends only on
// i+j, so one kernel vector serves both directions of the transform.

#include <complex>

namespace conewave::kernels {

void correlate_serial(const double* k, const std::complex<double>* x, int n_in,
                      std::complex<double>* out, int n_out, int cut);

void correlate_parallel(const double* k, const std::complex<double>* x,
                        int n_in, std::complex<double>* out, int n_out,
                        int cut);

}  // namespace conewave::kernels
