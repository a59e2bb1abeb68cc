#include "pinrep/kernels.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace pinrep::kernels {

const Ops& avx2_ops();  // defined in kernels_avx2.cpp

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Ops* select() {
  const char* env = std::getenv("PINREP_SIMD");
  if (env) {
    std::string v(env);
    if (v == "scalar") return &scalar_ops();
    if (v == "avx2") return &avx2_ops();
  }
  return cpu_has_avx2() ? &avx2_ops() : &scalar_ops();
}

}  // namespace

const Ops& ops() {
  static const Ops* selected = select();
  return *selected;
}

const Ops& active_ops() { return ops(); }

std::string active_kernel_name() { return ops().name; }

int max_threads() {
  if (const char* env = std::getenv("PINREP_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? int(hw) : 1;
}

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  const int nt = std::min<std::size_t>(max_threads(), n ? n : 1);
  if (nt <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  const std::size_t chunk = (n + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const std::size_t b = std::min(n, t * chunk);
    const std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    workers.emplace_back(fn, b, e);
  }
  for (auto& w : workers) w.join();
}

void fft_pow2(std::complex<double>* a, std::size_t n, int sign) {
  if (n < 2) return;
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * 3.14159265358979323846 / double(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

}  // namespace pinrep::kernels
