#include "pinrep/kernels.hpp"

namespace pinrep::kernels {
namespace {

void axpy_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_scalar(std::size_t n, const double* x, const double* y) {
  double s0 = 0, s1 = 0, s2 = 0, s3 = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += x[i] * y[i];
    s1 += x[i + 1] * y[i + 1];
    s2 += x[i + 2] * y[i + 2];
    s3 += x[i + 3] * y[i + 3];
  }
  for (; i < n; ++i) s0 += x[i] * y[i];
  return (s0 + s1) + (s2 + s3);
}

double nrm2sq_scalar(std::size_t n, const double* x) {
  return dot_scalar(n, x, x);
}

void cmul_scalar(std::size_t n, double* zr, double* zi, const double* cr,
                 const double* ci) {
  for (std::size_t i = 0; i < n; ++i) {
    const double r = zr[i] * cr[i] - zi[i] * ci[i];
    const double m = zr[i] * ci[i] + zi[i] * cr[i];
    zr[i] = r;
    zi[i] = m;
  }
}

void mat4_apply_scalar(std::size_t nblocks, const double* m, const double* in,
                       double* out) {
  for (std::size_t b = 0; b < nblocks; ++b) {
    const double* v = in + 4 * b;
    double* o = out + 4 * b;
    for (int r = 0; r < 4; ++r)
      o[r] = m[r] * v[0] + m[4 + r] * v[1] + m[8 + r] * v[2] + m[12 + r] * v[3];
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{axpy_scalar, dot_scalar, nrm2sq_scalar, cmul_scalar,
                         mat4_apply_scalar, "scalar"};
  return table;
}

}  // namespace pinrep::kernels
