#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <string>

namespace pinrep::kernels {

// Data-parallel inner loops behind the field transforms and quadratures.
// Scalar reference implementations always exist; an AVX2+FMA variant is
// selected at runtime when the CPU supports it. PINREP_SIMD=scalar|avx2|auto
// overrides the choice, PINREP_THREADS caps the worker count.

struct Ops {
  // y += a*x
  void (*axpy)(std::size_t n, double a, const double* x, double* y);
  // sum x[i]*y[i]
  double (*dot)(std::size_t n, const double* x, const double* y);
  // sum x[i]^2
  double (*nrm2sq)(std::size_t n, const double* x);
  // (zr+i zi)[k] *= (cr + i ci)[k]
  void (*cmul)(std::size_t n, double* zr, double* zi, const double* cr,
               const double* ci);
  // out[4k..4k+3] = m (4x4 col-major) * in[4k..4k+3]
  void (*mat4_apply)(std::size_t nblocks, const double* m, const double* in,
                     double* out);
  const char* name;
};

const Ops& ops();                 // runtime-selected table
const Ops& scalar_ops();          // always the reference path
const Ops& active_ops();          // same as ops(); alias for diagnostics
bool cpu_has_avx2();
std::string active_kernel_name();

// In-place power-of-two complex FFT; sign=-1 forward (e^{-i...}), +1 inverse.
// No normalization is applied.
void fft_pow2(std::complex<double>* a, std::size_t n, int sign);

// Chunked parallel loop; respects PINREP_THREADS (>=1). Deterministic: the
// function receives disjoint [begin,end) ranges.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

int max_threads();

}  // namespace pinrep::kernels
