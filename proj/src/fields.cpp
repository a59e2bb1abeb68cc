#include "pinrep/fields.hpp"

#include <algorithm>
#include <cmath>

#include "pinrep/kernels.hpp"

namespace pinrep::fields {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_transformable(const SpinorFieldGrid& f) {
  if (!f.grid.periodic)
    throw Error(Errc::NonPeriodicGrid, "spectral transforms need a periodic grid");
  if (!f.grid.valid())
    throw Error(Errc::UsageError, "grid must be a power of two with dx > 0");
  if (f.mass < 0) throw Error(Errc::MassUnset, "field mass not set");
  if (f.n_indexes() > 2)
    throw Error(Errc::UnsupportedLabel, "transforms support up to two Majorana indexes");
  if (f.data.size() != f.size())
    throw Error(Errc::FormatError, "field data size mismatch");
}

// ---- realified plane FFT ------------------------------------------------
// Index 1 pairs components (2,0) and (3,1) into iγ0-complex planes; every
// other index is a spectator. sign=-1: e^{-(ig0) p.x} forward.

struct PlaneBuffers {
  int n = 0, ncomp = 0, nspec = 0;
  std::vector<std::complex<double>> z;  // [spec][plane][x][y][z]
  std::size_t plane_size() const { return std::size_t(n) * n * n; }
  std::complex<double>* plane(int s, int q) {
    return z.data() + (std::size_t(s) * 2 + q) * plane_size();
  }
};

PlaneBuffers pack_planes(const SpinorFieldGrid& f) {
  PlaneBuffers pb;
  pb.n = f.grid.n;
  pb.ncomp = f.ncomp();
  pb.nspec = pb.ncomp / 4;
  pb.z.resize(std::size_t(pb.nspec) * 2 * pb.plane_size());
  const int n = pb.n;
  for (int s = 0; s < pb.nspec; ++s)
    for (int q = 0; q < 2; ++q) {
      const int re = 4 * s + (q ? 3 : 2);
      const int im = 4 * s + (q ? 1 : 0);
      std::complex<double>* dst = pb.plane(s, q);
      const double* src = f.data.data();
      const std::size_t stride = f.ncomp();
      const std::size_t cells = f.cells();
      for (std::size_t c = 0; c < cells; ++c)
        dst[c] = {src[c * stride + re], src[c * stride + im]};
      (void)n;
    }
  return pb;
}

void unpack_planes(const PlaneBuffers& pb, SpinorFieldGrid& f) {
  for (int s = 0; s < pb.nspec; ++s)
    for (int q = 0; q < 2; ++q) {
      const int re = 4 * s + (q ? 3 : 2);
      const int im = 4 * s + (q ? 1 : 0);
      const std::complex<double>* src =
          pb.z.data() + (std::size_t(s) * 2 + q) * pb.plane_size();
      double* dst = f.data.data();
      const std::size_t stride = f.ncomp();
      for (std::size_t c = 0; c < f.cells(); ++c) {
        dst[c * stride + re] = src[c].real();
        dst[c * stride + im] = src[c].imag();
      }
    }
}

void fft3_inplace(std::complex<double>* a, int n, int sign) {
  std::vector<std::complex<double>> line(n);
  // z axis: contiguous
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      kernels::fft_pow2(a + (std::size_t(x) * n + y) * n, n, sign);
  // y axis
  for (int x = 0; x < n; ++x)
    for (int z = 0; z < n; ++z) {
      for (int y = 0; y < n; ++y) line[y] = a[(std::size_t(x) * n + y) * n + z];
      kernels::fft_pow2(line.data(), n, sign);
      for (int y = 0; y < n; ++y) a[(std::size_t(x) * n + y) * n + z] = line[y];
    }
  // x axis
  for (int y = 0; y < n; ++y)
    for (int z = 0; z < n; ++z) {
      for (int x = 0; x < n; ++x) line[x] = a[(std::size_t(x) * n + y) * n + z];
      kernels::fft_pow2(line.data(), n, sign);
      for (int x = 0; x < n; ++x) a[(std::size_t(x) * n + y) * n + z] = line[x];
    }
}

// unitary realified Fourier transform of all planes; sign=-1 forward
void fr_transform(SpinorFieldGrid& f, int sign) {
  PlaneBuffers pb = pack_planes(f);
  const double scale = 1.0 / std::pow(double(f.grid.n), 1.5);
  kernels::parallel_for(std::size_t(pb.nspec) * 2, [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      std::complex<double>* p = pb.plane(int(i / 2), int(i % 2));
      fft3_inplace(p, pb.n, sign);
      for (std::size_t c = 0; c < pb.plane_size(); ++c) p[c] *= scale;
    }
  });
  unpack_planes(pb, f);
}

// apply a 4x4 matrix on tensor index k (0-based) of every cell block
void apply_on_index(std::vector<double>& data, int ncomp, const Mat4& m, int k) {
  const int stride = 1 << (2 * k);
  const int nblocks_per_cell = ncomp / (4 * stride);
  const std::size_t cells = data.size() / ncomp;
  if (k == 0) {
    // contiguous 4-blocks: use the batched kernel
    double mcol[16];
    for (int j = 0; j < 4; ++j)
      for (int i = 0; i < 4; ++i) mcol[4 * j + i] = m(i, j);
    std::vector<double> out(data.size());
    kernels::ops().mat4_apply(data.size() / 4, mcol, data.data(), out.data());
    data.swap(out);
    return;
  }
  std::vector<double> tmp(4);
  for (std::size_t c = 0; c < cells; ++c) {
    double* blk = data.data() + c * ncomp;
    for (int b = 0; b < nblocks_per_cell; ++b)
      for (int off = 0; off < stride; ++off) {
        double* base = blk + b * 4 * stride + off;
        for (int i = 0; i < 4; ++i) {
          tmp[i] = m(i, 0) * base[0] + m(i, 1) * base[stride] +
                   m(i, 2) * base[2 * stride] + m(i, 3) * base[3 * stride];
        }
        for (int i = 0; i < 4; ++i) base[i * stride] = tmp[i];
      }
  }
}

struct CellMomenta {
  std::vector<double> px, py, pz, e;  // per cell, FFT ordering
};

CellMomenta cell_momenta(const GridSpec& g, double mass) {
  CellMomenta cm;
  const int n = g.n;
  const std::size_t cells = std::size_t(n) * n * n;
  cm.px.resize(cells);
  cm.py.resize(cells);
  cm.pz.resize(cells);
  cm.e.resize(cells);
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = g.momentum(i);
  std::size_t c = 0;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z, ++c) {
        cm.px[c] = k[x];
        cm.py[c] = k[y];
        cm.pz[c] = k[z];
        cm.e[c] = std::sqrt(k[x] * k[x] + k[y] * k[y] + k[z] * k[z] + mass * mass);
      }
  return cm;
}

std::size_t flat(int x, int y, int z, int n) {
  return (std::size_t(x) * n + y) * n + z;
}

// ---- momentum kernel application ---------------------------------------
// Forward: pointwise index-k factors at the cell's own momentum first, then
// the index-1 pair block mixing cells P and -P. Inverse: transposed order.

struct KernelMatrices {
  const CliffordBasis& basis;
  Mat4 k_ig[3];   // (ig^l)(ig0)
  Mat4 ig[3];     // ig^l
  explicit KernelMatrices(const CliffordBasis& b) : basis(b) {
    for (int l = 0; l < 3; ++l) {
      ig[l] = b.igamma[l + 1];
      k_ig[l] = b.igamma[l + 1] * b.igamma[0];
    }
  }
};

// index-1 pair mixing: out(P) = a_P c(P) + sgn * B(rep(σP)) c(σP), all /N_P
void pair_mix(SpinorFieldGrid& f, const CellMomenta& cm, const KernelMatrices& km,
              bool inverse) {
  const int n = f.grid.n;
  const int ncomp = f.ncomp();
  const double mass = f.mass;
  std::vector<double> out(f.data.size());
  const double* in = f.data.data();
  kernels::parallel_for(std::size_t(n), [&](std::size_t xb, std::size_t xe) {
    std::vector<double> tmp(4), acc(4);
    for (int x = int(xb); x < int(xe); ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          const std::size_t cp = flat(x, y, z, n);
          const std::size_t cq = flat((n - x) % n, (n - y) % n, (n - z) % n, n);
          const double e = cm.e[cp];
          const double np = std::sqrt(e + mass) * std::sqrt(2.0 * e);
          const double a = (e + mass) / np;
          // B at the source cell's own representative momentum
          const std::size_t src = cq;
          Mat4 bmat = Mat4::Zero();
          if (!inverse) {
            bmat = -(cm.px[src] * km.k_ig[0] + cm.py[src] * km.k_ig[1] +
                     cm.pz[src] * km.k_ig[2]);
          } else {
            // adjoint: B(rep P)^T = B(rep P) (symmetric blocks)
            bmat = -(cm.px[cp] * km.k_ig[0] + cm.py[cp] * km.k_ig[1] +
                     cm.pz[cp] * km.k_ig[2]);
          }
          bmat /= np;
          const double* vp = in + cp * ncomp;
          const double* vq = in + cq * ncomp;
          double* o = out.data() + cp * ncomp;
          // act on index 1 (stride 1, 4-blocks) of the tensor block
          for (int b = 0; b < ncomp / 4; ++b) {
            const double* p4 = vp + 4 * b;
            const double* q4 = vq + 4 * b;
            for (int i = 0; i < 4; ++i) {
              double v = a * p4[i];
              v += bmat(i, 0) * q4[0] + bmat(i, 1) * q4[1] + bmat(i, 2) * q4[2] +
                   bmat(i, 3) * q4[3];
              o[4 * b + i] = v;
            }
          }
        }
  });
  f.data.swap(out);
}

// pointwise index-k factor (E+m -/+ p_l (ig0)_1 (ig^l)_k)/N at each cell
void pointwise_factor(SpinorFieldGrid& f, const CellMomenta& cm,
                      const KernelMatrices& km, int k /*0-based >= 1*/,
                      bool inverse) {
  const int ncomp = f.ncomp();
  const int strideK = 1 << (2 * k);
  const double mass = f.mass;
  const Mat4 ig0 = km.basis.igamma[0];
  kernels::parallel_for(f.cells(), [&](std::size_t b, std::size_t e) {
    std::vector<double> t1(ncomp);
    for (std::size_t c = b; c < e; ++c) {
      const double en = cm.e[c];
      const double np = std::sqrt(en + mass) * std::sqrt(2.0 * en);
      Mat4 sp = cm.px[c] * km.ig[0] + cm.py[c] * km.ig[1] + cm.pz[c] * km.ig[2];
      if (inverse) sp = -sp;
      double* blk = f.data.data() + c * ncomp;
      // t1 = (ig0)_1 (sp)_k blk
      // apply sp on index k
      for (int bb = 0; bb < ncomp / (4 * strideK); ++bb)
        for (int off = 0; off < strideK; ++off) {
          const double* base = blk + bb * 4 * strideK + off;
          double v[4];
          for (int i = 0; i < 4; ++i)
            v[i] = sp(i, 0) * base[0] + sp(i, 1) * base[strideK] +
                   sp(i, 2) * base[2 * strideK] + sp(i, 3) * base[3 * strideK];
          for (int i = 0; i < 4; ++i) t1[bb * 4 * strideK + off + i * strideK] = v[i];
        }
      // apply ig0 on index 1 (stride 1)
      for (int bb = 0; bb < ncomp / 4; ++bb) {
        double* base = t1.data() + 4 * bb;
        double v[4];
        for (int i = 0; i < 4; ++i)
          v[i] = ig0(i, 0) * base[0] + ig0(i, 1) * base[1] + ig0(i, 2) * base[2] +
                 ig0(i, 3) * base[3];
        for (int i = 0; i < 4; ++i) base[i] = v[i];
      }
      const double a = (en + mass) / np;
      for (int i = 0; i < ncomp; ++i) blk[i] = a * blk[i] - t1[i] / np;
    }
  });
}

void check_massless_dc(const SpinorFieldGrid& f) {
  if (f.mass > 0) return;
  const double* dc = f.at(0, 0, 0);
  double dcn = 0;
  for (int i = 0; i < f.ncomp(); ++i) dcn += dc[i] * dc[i];
  const double tot = f.norm();
  if (tot > 0 && std::sqrt(dcn) > 1e-10 * tot)
    throw Error(Errc::MasslessZeroMomentum,
                "massless field carries content at p = 0");
}

}  // namespace

double SpinorFieldGrid::norm() const {
  return std::sqrt(kernels::ops().nrm2sq(data.size(), data.data()));
}

SpinorFieldGrid SpinorFieldGrid::zero(int j2, double mass, const GridSpec& g,
                                      FieldRep rep) {
  SpinorFieldGrid f;
  f.j2 = j2;
  f.mass = mass;
  f.rep = rep;
  f.grid = g;
  f.data.assign(f.size(), 0.0);
  return f;
}

SpinorFieldGrid gaussian_bump(int j2, double mass, const GridSpec& g, double width,
                              const std::vector<double>& u) {
  SpinorFieldGrid f = SpinorFieldGrid::zero(j2, mass, g);
  if (int(u.size()) != f.ncomp())
    throw Error(Errc::UsageError, "tensor block size mismatch");
  const double c = (g.n / 2) * g.dx;
  for (int x = 0; x < g.n; ++x)
    for (int y = 0; y < g.n; ++y)
      for (int z = 0; z < g.n; ++z) {
        const double dx2 = (x * g.dx - c) * (x * g.dx - c) +
                           (y * g.dx - c) * (y * g.dx - c) +
                           (z * g.dx - c) * (z * g.dx - c);
        const double prof = std::exp(-dx2 / (2.0 * width * width));
        double* blk = f.at(x, y, z);
        for (int i = 0; i < f.ncomp(); ++i) blk[i] = prof * u[i];
      }
  return f;
}

SpinorFieldGrid random_band_limited(int j2, double mass, const GridSpec& g,
                                    std::uint64_t seed, double pfrac) {
  SpinorFieldGrid f = SpinorFieldGrid::zero(j2, mass, g);
  Rng rng(seed);
  for (double& v : f.data) v = rng.normal();
  // filter in momentum space through the realified transform
  fr_transform(f, -1);
  const CellMomenta cm = cell_momenta(g, 0.0);
  const double pcut = pfrac * kPi / g.dx;
  for (std::size_t c = 0; c < f.cells(); ++c) {
    const double p2 =
        cm.px[c] * cm.px[c] + cm.py[c] * cm.py[c] + cm.pz[c] * cm.pz[c];
    const double filt =
        p2 < pcut * pcut ? std::exp(-p2 / (2.0 * pcut * pcut)) : 0.0;
    double* blk = f.data.data() + c * f.ncomp();
    for (int i = 0; i < f.ncomp(); ++i) blk[i] *= filt;
  }
  fr_transform(f, +1);
  const double nrm = f.norm();
  if (nrm > 0)
    for (double& v : f.data) v /= nrm;
  return f;
}

double MomentumKernel::orthogonality_residual() const {
  // pair system [[a, B],[-B, a]] (non-self-paired cells)
  Eigen::Matrix<double, 8, 8> m;
  m.setZero();
  m.block<4, 4>(0, 0) = diag * Mat4::Identity();
  m.block<4, 4>(0, 4) = pair_block;
  m.block<4, 4>(4, 0) = -pair_block;
  m.block<4, 4>(4, 4) = diag * Mat4::Identity();
  double worst =
      (m.transpose() * m - Eigen::Matrix<double, 8, 8>::Identity()).cwiseAbs().maxCoeff();
  if (!pointwise.empty()) {
    // the index-k factor diag - (ig0)_1 (x) pw_k on the 16-dim index pair
    const clifford::CliffordBasis b = clifford::build_majorana_basis();
    Eigen::Matrix<double, 16, 16> k16 =
        diag * Eigen::Matrix<double, 16, 16>::Identity();
    for (int r1 = 0; r1 < 4; ++r1)
      for (int c1 = 0; c1 < 4; ++c1)
        for (int r2 = 0; r2 < 4; ++r2)
          for (int c2 = 0; c2 < 4; ++c2)
            k16(r1 + 4 * r2, c1 + 4 * c2) -=
                b.igamma[0](r1, c1) * pointwise[0](r2, c2);
    worst = std::max(worst,
                     (k16.transpose() * k16 -
                      Eigen::Matrix<double, 16, 16>::Identity())
                         .cwiseAbs()
                         .maxCoeff());
  }
  return worst;
}

MomentumKernel derive_momentum_kernel(const Vec3& p, double mass, int j2,
                                      const CliffordBasis& basis) {
  const double e = std::sqrt(p.squaredNorm() + mass * mass);
  if (e <= 0)
    throw Error(Errc::MasslessZeroMomentum, "kernel undefined at m = 0, p = 0");
  MomentumKernel k;
  k.energy = e;
  k.norm = std::sqrt(e + mass) * std::sqrt(2.0 * e);
  k.diag = (e + mass) / k.norm;
  KernelMatrices km(basis);
  k.pair_block = -(p.x() * km.k_ig[0] + p.y() * km.k_ig[1] + p.z() * km.k_ig[2]) / k.norm;
  const int n_idx = j2 == 0 ? 2 : j2;
  for (int kk = 2; kk <= n_idx; ++kk)
    k.pointwise.push_back(
        Mat4((p.x() * km.ig[0] + p.y() * km.ig[1] + p.z() * km.ig[2]) / k.norm));
  return k;
}

SpinorFieldGrid apply_hamiltonian(const SpinorFieldGrid& f, int k,
                                  const CliffordBasis& basis) {
  check_transformable(f);
  if (f.rep != FieldRep::Coordinate)
    throw Error(Errc::UsageError, "apply_hamiltonian expects a coordinate field");
  if (k < 1 || k > f.n_indexes())
    throw Error(Errc::UsageError, "tensor index out of range");
  const CellMomenta cm = cell_momenta(f.grid, f.mass);

  SpinorFieldGrid mom = f;
  fr_transform(mom, -1);
  SpinorFieldGrid out = SpinorFieldGrid::zero(f.j2, f.mass, f.grid);
  for (int l = 0; l < 3; ++l) {
    SpinorFieldGrid d = mom;
    // multiply by (ig0)_1 p_l: on each index-1 plane this is z *= i p_l
    const std::vector<double>& pl = l == 0 ? cm.px : (l == 1 ? cm.py : cm.pz);
    PlaneBuffers pb = pack_planes(d);
    for (int s = 0; s < pb.nspec; ++s)
      for (int q = 0; q < 2; ++q) {
        std::complex<double>* z = pb.plane(s, q);
        for (std::size_t c = 0; c < pb.plane_size(); ++c)
          z[c] *= std::complex<double>(0.0, pl[c]);
      }
    unpack_planes(pb, d);
    fr_transform(d, +1);
    // g0 g^l = -(ig0)(ig^l) on index k
    apply_on_index(d.data, d.ncomp(), Mat4(basis.igamma[0] * basis.igamma[l + 1]),
                   k - 1);
    kernels::ops().axpy(out.data.size(), -1.0, d.data.data(), out.data.data());
  }
  SpinorFieldGrid massterm = f;
  apply_on_index(massterm.data, massterm.ncomp(), basis.igamma[0], k - 1);
  kernels::ops().axpy(out.data.size(), f.mass, massterm.data.data(),
                      out.data.data());
  return out;
}

SpinorFieldGrid fourier_majorana(const SpinorFieldGrid& f, const CliffordBasis& basis) {
  check_transformable(f);
  if (f.rep != FieldRep::Coordinate)
    throw Error(Errc::UsageError, "fourier_majorana expects a coordinate field");
  SpinorFieldGrid g = f;
  fr_transform(g, -1);
  if (f.mass == 0) check_massless_dc(g);
  const CellMomenta cm = cell_momenta(f.grid, f.mass);
  KernelMatrices km(basis);
  for (int k = 1; k < f.n_indexes(); ++k) pointwise_factor(g, cm, km, k, false);
  pair_mix(g, cm, km, false);
  g.rep = FieldRep::Momentum;
  return g;
}

SpinorFieldGrid inverse_fourier_majorana(const SpinorFieldGrid& f,
                                         const CliffordBasis& basis) {
  check_transformable(f);
  if (f.rep != FieldRep::Momentum)
    throw Error(Errc::UsageError, "inverse_fourier_majorana expects a momentum field");
  SpinorFieldGrid g = f;
  const CellMomenta cm = cell_momenta(f.grid, f.mass);
  KernelMatrices km(basis);
  pair_mix(g, cm, km, true);
  for (int k = 1; k < f.n_indexes(); ++k) pointwise_factor(g, cm, km, k, true);
  fr_transform(g, +1);
  g.rep = FieldRep::Coordinate;
  return g;
}

double bw_residual(const SpinorFieldGrid& f, const CliffordBasis& basis) {
  const double nrm = f.norm();
  if (nrm == 0) return 0.0;
  if (f.n_indexes() < 2) return 0.0;
  const SpinorFieldGrid h1 = apply_hamiltonian(f, 1, basis);
  double worst = 0;
  for (int k = 2; k <= f.n_indexes(); ++k) {
    SpinorFieldGrid hk = apply_hamiltonian(f, k, basis);
    kernels::ops().axpy(hk.data.size(), -1.0, h1.data.data(), hk.data.data());
    worst = std::max(worst, hk.norm() / nrm);
  }
  return worst;
}

JnSplit pinor_jn_split(const SpinorFieldGrid& f, const CliffordBasis& basis) {
  const int n_idx = f.n_indexes();
  const int ncomp = f.ncomp();
  // A = sum_k (ig0)_1 ((ig0)(ig3)(ig5))_k as a dense matrix on the block
  const Mat4 zmat = basis.igamma[0] * basis.igamma[3] * basis.igamma5;
  MatX a = MatX::Zero(ncomp, ncomp);
  auto add_term = [&](const Mat4& m1, const Mat4& mk, int k) {
    // (m1)_1 (mk)_k acting on comp = i1 + 4 i2 ..., explicit Kronecker walk
    for (int row = 0; row < ncomp; ++row)
      for (int col = 0; col < ncomp; ++col) {
        double v = 1.0;
        for (int idx = 0; idx < n_idx; ++idx) {
          const int ri = (row >> (2 * idx)) & 3;
          const int ci = (col >> (2 * idx)) & 3;
          double factor;
          if (idx == 0 && idx == k)
            factor = (m1 * mk)(ri, ci);
          else if (idx == 0)
            factor = m1(ri, ci);
          else if (idx == k)
            factor = mk(ri, ci);
          else
            factor = ri == ci ? 1.0 : 0.0;
          v *= factor;
          if (v == 0.0) break;
        }
        a(row, col) += v;
      }
  };
  for (int k = 0; k < n_idx; ++k) add_term(basis.igamma[0], zmat, k);

  Eigen::SelfAdjointEigenSolver<MatX> es(a);
  if (es.info() != Eigen::Success)
    throw Error(Errc::DegenerateEigenbasis, "jn-split eigensolver failed");
  // cluster eigenvalues to nearest integer 2n
  std::vector<int> labels;
  for (int i = 0; i < ncomp; ++i) {
    const int t = int(std::lround(es.eigenvalues()(i)));
    if (std::find(labels.begin(), labels.end(), t) == labels.end())
      labels.push_back(t);
  }
  std::sort(labels.begin(), labels.end());
  JnSplit out;
  for (int t : labels) {
    MatX proj = MatX::Zero(ncomp, ncomp);
    for (int i = 0; i < ncomp; ++i)
      if (int(std::lround(es.eigenvalues()(i))) == t)
        proj += es.eigenvectors().col(i) * es.eigenvectors().col(i).transpose();
    SpinorFieldGrid comp = f;
    kernels::parallel_for(f.cells(), [&](std::size_t b, std::size_t e) {
      VecX v(ncomp);
      for (std::size_t c = b; c < e; ++c) {
        double* blk = comp.data.data() + c * ncomp;
        for (int i = 0; i < ncomp; ++i) v(i) = blk[i];
        const VecX w = proj * v;
        for (int i = 0; i < ncomp; ++i) blk[i] = w(i);
      }
    });
    out.two_n.push_back(t);
    out.component.push_back(std::move(comp));
  }
  return out;
}

SpinorFieldGrid evolve(const SpinorFieldGrid& f, double t, const CliffordBasis& basis,
                       double bw_tol) {
  if (f.rep != FieldRep::Coordinate)
    throw Error(Errc::UsageError, "evolve expects a coordinate field");
  if (f.n_indexes() >= 2) {
    const double r = bw_residual(f, basis);
    if (r > bw_tol)
      throw Error(Errc::NotBargmannWigner,
                  "field is not Bargmann-Wigner (residual " + std::to_string(r) + ")");
  }
  SpinorFieldGrid g = fourier_majorana(f, basis);
  const CellMomenta cm = cell_momenta(f.grid, f.mass);
  // multiply by exp((ig0)_1 E t): rotate both index-1 planes by E t
  PlaneBuffers pb = pack_planes(g);
  std::vector<double> cs(pb.plane_size()), sn(pb.plane_size());
  for (std::size_t c = 0; c < pb.plane_size(); ++c) {
    cs[c] = std::cos(cm.e[c] * t);
    sn[c] = std::sin(cm.e[c] * t);
  }
  for (int s = 0; s < pb.nspec; ++s)
    for (int q = 0; q < 2; ++q) {
      std::complex<double>* z = pb.plane(s, q);
      // split into re/im arrays for the batched kernel
      std::vector<double> zr(pb.plane_size()), zi(pb.plane_size());
      for (std::size_t c = 0; c < pb.plane_size(); ++c) {
        zr[c] = z[c].real();
        zi[c] = z[c].imag();
      }
      kernels::ops().cmul(pb.plane_size(), zr.data(), zi.data(), cs.data(), sn.data());
      for (std::size_t c = 0; c < pb.plane_size(); ++c) z[c] = {zr[c], zi[c]};
    }
  unpack_planes(pb, g);
  return inverse_fourier_majorana(g, basis);
}

SpinorFieldGrid translate(const SpinorFieldGrid& f, const FourVector& a,
                          const CliffordBasis& basis) {
  (void)basis;
  if (f.rep != FieldRep::Momentum)
    throw Error(Errc::OffShell, "translate expects a momentum-space on-shell field");
  SpinorFieldGrid g = f;
  const CellMomenta cm = cell_momenta(f.grid, f.mass);
  PlaneBuffers pb = pack_planes(g);
  std::vector<double> cs(pb.plane_size()), sn(pb.plane_size());
  for (std::size_t c = 0; c < pb.plane_size(); ++c) {
    const double pa = cm.e[c] * a.t - (cm.px[c] * a.x + cm.py[c] * a.y + cm.pz[c] * a.z);
    cs[c] = std::cos(pa);
    sn[c] = std::sin(-pa);
  }
  for (int s = 0; s < pb.nspec; ++s)
    for (int q = 0; q < 2; ++q) {
      std::complex<double>* z = pb.plane(s, q);
      std::vector<double> zr(pb.plane_size()), zi(pb.plane_size());
      for (std::size_t c = 0; c < pb.plane_size(); ++c) {
        zr[c] = z[c].real();
        zi[c] = z[c].imag();
      }
      kernels::ops().cmul(pb.plane_size(), zr.data(), zi.data(), cs.data(), sn.data());
      for (std::size_t c = 0; c < pb.plane_size(); ++c) z[c] = {zr[c], zi[c]};
    }
  unpack_planes(pb, g);
  return g;
}

namespace {

bool spatial_lattice_exact(const Mat4& lam) {
  if (std::abs(lam(0, 0) - 1.0) > 1e-12) return false;
  for (int i = 1; i < 4; ++i)
    if (std::abs(lam(0, i)) > 1e-12 || std::abs(lam(i, 0)) > 1e-12) return false;
  for (int i = 1; i < 4; ++i) {
    int nonzero = 0;
    for (int j = 1; j < 4; ++j) {
      const double v = std::abs(lam(i, j));
      if (v > 1e-12) {
        ++nonzero;
        if (std::abs(v - 1.0) > 1e-12) return false;
      }
    }
    if (nonzero != 1) return false;
  }
  return true;
}

int wrap_index(double k_over_dp, int n) {
  // signed lattice coordinate -> FFT cell index
  long r = std::lround(k_over_dp);
  long m = ((r % n) + n) % n;
  return int(m);
}

}  // namespace

SpinorFieldGrid poincare_act(const SpinorFieldGrid& f, const PinElement& s,
                             MassCase mass_case, const CliffordBasis& basis) {
  if (f.rep != FieldRep::Momentum)
    throw Error(Errc::OffShell, "poincare_act expects a momentum-space on-shell field");
  if (mass_case == MassCase::Massive && f.mass <= 0)
    throw Error(Errc::ZeroMass, "massive action requires m > 0");
  if (mass_case == MassCase::MasslessHelicity) {
    if (f.mass != 0)
      throw Error(Errc::UsageError, "massless action requires m = 0");
    check_massless_dc(f);
    // helicity constraint (g3 g5)_k psi = ±psi
    const Mat4 hel = -(basis.igamma[3] * basis.igamma5);
    double best = 1e300;
    for (double sign : {1.0, -1.0}) {
      SpinorFieldGrid tst = f;
      for (int k = 0; k < f.n_indexes(); ++k)
        apply_on_index(tst.data, tst.ncomp(), Mat4(sign * hel), k);
      kernels::ops().axpy(tst.data.size(), -1.0, f.data.data(), tst.data.data());
      best = std::min(best, tst.norm() / std::max(f.norm(), 1e-300));
    }
    if (best > 1e-6)
      throw Error(Errc::HelicityViolation,
                  "field does not satisfy the discrete-helicity constraint");
  }

  const groups::LorentzMatrix lam = groups::covering_map(s, basis);
  const Mat4 lam_inv = lam.lambda.inverse();
  const bool exact = spatial_lattice_exact(lam.lambda);
  const CellMomenta cm = cell_momenta(f.grid, f.mass);
  const double dp = f.grid.momentum_spacing();
  const int n = f.grid.n;
  const int ncomp = f.ncomp();

  SpinorFieldGrid out = SpinorFieldGrid::zero(f.j2, f.mass, f.grid, FieldRep::Momentum);
  kernels::parallel_for(std::size_t(n), [&](std::size_t xb, std::size_t xe) {
    VecX v(ncomp);
    for (int x = int(xb); x < int(xe); ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          const std::size_t cp = flat(x, y, z, n);
          const Vec3 p(cm.px[cp], cm.py[cp], cm.pz[cp]);
          const double ep = cm.e[cp];
          if (f.mass == 0 && ep == 0) continue;
          const Vec4 p4(ep, p.x(), p.y(), p.z());
          const Vec4 q4 = lam_inv * p4;
          Vec3 q(q4(1), q4(2), q4(3));
          double eq = q4(0);
          // source value (exact relocation or trilinear interpolation)
          const double* src = nullptr;
          double interp[256];
          if (exact) {
            const int ix = wrap_index(q.x() / dp, n);
            const int iy = wrap_index(q.y() / dp, n);
            const int iz = wrap_index(q.z() / dp, n);
            const std::size_t cq = flat(ix, iy, iz, n);
            src = f.data.data() + cq * ncomp;
            // snap to the exact lattice momentum so the Wigner factor uses
            // the same alpha lift as the source cell's own evaluations
            q = Vec3(cm.px[cq], cm.py[cq], cm.pz[cq]);
            eq = cm.e[cq];
          } else {
            // trilinear with periodic wrap on the dual lattice
            const double fx = q.x() / dp, fy = q.y() / dp, fz = q.z() / dp;
            const int x0 = int(std::floor(fx)), y0 = int(std::floor(fy)),
                      z0 = int(std::floor(fz));
            const double tx = fx - x0, ty = fy - y0, tz = fz - z0;
            for (int i = 0; i < ncomp; ++i) interp[i] = 0.0;
            for (int dx_ = 0; dx_ <= 1; ++dx_)
              for (int dy_ = 0; dy_ <= 1; ++dy_)
                for (int dz_ = 0; dz_ <= 1; ++dz_) {
                  const double w = (dx_ ? tx : 1 - tx) * (dy_ ? ty : 1 - ty) *
                                   (dz_ ? tz : 1 - tz);
                  if (w == 0) continue;
                  const int ix = ((x0 + dx_) % n + n) % n;
                  const int iy = ((y0 + dy_) % n + n) % n;
                  const int iz = ((z0 + dz_) % n + n) % n;
                  const double* sv = f.data.data() + flat(ix, iy, iz, n) * ncomp;
                  for (int i = 0; i < ncomp; ++i) interp[i] += w * sv[i];
                }
            src = interp;
          }
          // Wigner factor per index
          Mat4 w;
          if (mass_case == MassCase::Massive) {
            const Mat4 ap = groups::boost_alpha_p(
                groups::FourVector{ep, p.x(), p.y(), p.z()}, f.mass, basis);
            const Mat4 aq = groups::boost_alpha_p(
                groups::FourVector{eq, q.x(), q.y(), q.z()}, f.mass, basis);
            w = ap.inverse() * s.s * aq;
          } else {
            const Mat4 ap = groups::massless_alpha_p(p, basis);
            const Mat4 aq = groups::massless_alpha_p(q, basis);
            const groups::SE2Params se2 =
                groups::se2_extract(groups::PinElement{Mat4(ap.inverse() * s.s * aq)}, basis);
            w = expm(Mat4(-(basis.igamma[0] * basis.igamma[3] * basis.igamma5) *
                          se2.theta));
          }
          const double jac = std::sqrt(eq / ep);
          for (int i = 0; i < ncomp; ++i) v(i) = src[i];
          // apply w on every tensor index
          for (int k = 0; k < f.n_indexes(); ++k) {
            const int strideK = 1 << (2 * k);
            for (int b = 0; b < ncomp / (4 * strideK); ++b)
              for (int off = 0; off < strideK; ++off) {
                double t[4];
                double* base = v.data() + b * 4 * strideK + off;
                for (int i = 0; i < 4; ++i)
                  t[i] = w(i, 0) * base[0] + w(i, 1) * base[strideK] +
                         w(i, 2) * base[2 * strideK] + w(i, 3) * base[3 * strideK];
                for (int i = 0; i < 4; ++i) base[i * strideK] = t[i];
              }
          }
          double* o = out.data.data() + cp * ncomp;
          for (int i = 0; i < ncomp; ++i) o[i] = jac * v(i);
        }
  });
  return out;
}

double norm_fraction_outside(const SpinorFieldGrid& f, double r) {
  const double c = (f.grid.n / 2) * f.grid.dx;
  double inside = 0, outside = 0;
  for (int x = 0; x < f.grid.n; ++x)
    for (int y = 0; y < f.grid.n; ++y)
      for (int z = 0; z < f.grid.n; ++z) {
        const double rr = std::sqrt((x * f.grid.dx - c) * (x * f.grid.dx - c) +
                                    (y * f.grid.dx - c) * (y * f.grid.dx - c) +
                                    (z * f.grid.dx - c) * (z * f.grid.dx - c));
        const double* blk = f.at(x, y, z);
        double s = 0;
        for (int i = 0; i < f.ncomp(); ++i) s += blk[i] * blk[i];
        (rr > r ? outside : inside) += s;
      }
  const double tot = inside + outside;
  return tot > 0 ? std::sqrt(outside / tot) : 0.0;
}

}  // namespace pinrep::fields
