// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after a runtime cpuid check.
#include "pinrep/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace pinrep::kernels {
namespace {

void axpy_avx2(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(std::size_t n, const double* x, const double* y) {
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double nrm2sq_avx2(std::size_t n, const double* x) { return dot_avx2(n, x, x); }

void cmul_avx2(std::size_t n, double* zr, double* zi, const double* cr,
               const double* ci) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r = _mm256_loadu_pd(zr + i);
    const __m256d m = _mm256_loadu_pd(zi + i);
    const __m256d c = _mm256_loadu_pd(cr + i);
    const __m256d s = _mm256_loadu_pd(ci + i);
    _mm256_storeu_pd(zr + i, _mm256_fmsub_pd(r, c, _mm256_mul_pd(m, s)));
    _mm256_storeu_pd(zi + i, _mm256_fmadd_pd(r, s, _mm256_mul_pd(m, c)));
  }
  for (; i < n; ++i) {
    const double r = zr[i] * cr[i] - zi[i] * ci[i];
    const double m = zr[i] * ci[i] + zi[i] * cr[i];
    zr[i] = r;
    zi[i] = m;
  }
}

void mat4_apply_avx2(std::size_t nblocks, const double* m, const double* in,
                     double* out) {
  const __m256d c0 = _mm256_loadu_pd(m);
  const __m256d c1 = _mm256_loadu_pd(m + 4);
  const __m256d c2 = _mm256_loadu_pd(m + 8);
  const __m256d c3 = _mm256_loadu_pd(m + 12);
  for (std::size_t b = 0; b < nblocks; ++b) {
    const double* v = in + 4 * b;
    __m256d acc = _mm256_mul_pd(c0, _mm256_set1_pd(v[0]));
    acc = _mm256_fmadd_pd(c1, _mm256_set1_pd(v[1]), acc);
    acc = _mm256_fmadd_pd(c2, _mm256_set1_pd(v[2]), acc);
    acc = _mm256_fmadd_pd(c3, _mm256_set1_pd(v[3]), acc);
    _mm256_storeu_pd(out + 4 * b, acc);
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops table{axpy_avx2, dot_avx2, nrm2sq_avx2, cmul_avx2,
                         mat4_apply_avx2, "avx2"};
  return table;
}

}  // namespace pinrep::kernels

#else

namespace pinrep::kernels {
const Ops& avx2_ops() { return scalar_ops(); }
}  // namespace pinrep::kernels

#endif
