#include "pinrep/spherical.hpp"

#include <cmath>
#include <complex>

#include "pinrep/kernels.hpp"

namespace pinrep::spherical {
namespace {

constexpr double kPi = 3.14159265358979323846;

// index-1 plane pairs of a 4-component block: (re,im) = (2,0) and (3,1)
inline std::complex<double> plane(const double* blk, int q) {
  return {blk[q ? 3 : 2], blk[q ? 1 : 0]};
}
inline void add_plane(double* blk, int q, std::complex<double> v) {
  blk[q ? 3 : 2] += v.real();
  blk[q ? 1 : 0] += v.imag();
}

struct JnProjectors {
  Mat4 plus, minus;
};

JnProjectors jn_projectors(const CliffordBasis& b) {
  // (g0)(g0 g3 g5) on one index = -(ig3)(ig5), symmetric with eigenvalues ±1
  const Mat4 a = Mat4(b.igamma[0] * (b.igamma[0] * b.igamma[3] * b.igamma5));
  Eigen::SelfAdjointEigenSolver<Mat4> es(a);
  JnProjectors p;
  p.minus = es.eigenvectors().leftCols(2) * es.eigenvectors().leftCols(2).transpose();
  p.plus = es.eigenvectors().rightCols(2) * es.eigenvectors().rightCols(2).transpose();
  return p;
}

// barycentric differentiation matrix on arbitrary nodes (log-scaled weights)
MatX diff_matrix(const std::vector<double>& x) {
  const int n = int(x.size());
  std::vector<double> loglam(n, 0.0);
  std::vector<int> sign(n, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (j != i) {
        const double d = x[i] - x[j];
        loglam[i] += std::log(std::abs(d));
        if (d < 0) sign[i] = -sign[i];
      }
  MatX d = MatX::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double diag = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      d(i, j) = sign[i] * sign[j] * std::exp(loglam[i] - loglam[j]) / (x[i] - x[j]);
      diag -= d(i, j);
    }
    d(i, i) = diag;
  }
  return d;
}

// spectral differentiation matrix on a uniform periodic grid of even size
MatX phi_diff_matrix(int n) {
  MatX d = MatX::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const int k = i - j;
      d(i, j) = 0.5 * std::pow(-1.0, k) / std::tan(kPi * k / n);
    }
  return d;
}

// d/dxi through the associated-Legendre basis per azimuthal mode. Smooth
// 3-D fields carry sqrt(1-xi^2) factors, so raw polynomial collocation in xi
// fails near the poles; the P_l^m basis is the natural spectral family.
// Content with |m| > l_max or l > l_max is truncated (the transform domain).
struct XiDerivative {
  int n_xi, n_phi, l_max;
  std::vector<MatX> d_m;                 // per m in [0, l_max]
  Eigen::MatrixXcd dft, idft;            // phi-mode analysis/synthesis

  XiDerivative(const RadialSphericalSpec& s) {
    n_xi = s.n_xi;
    n_phi = s.n_phi;
    l_max = s.l_max;
    // unnormalized P_l^m values and derivatives at the xi nodes:
    // (1 - xi^2) dP_l^m/dxi = (l+m) P_{l-1}^m - l xi P_l^m
    for (int m = 0; m <= l_max; ++m) {
      MatX pval = MatX::Zero(l_max + 1, n_xi);
      MatX pder = MatX::Zero(l_max + 1, n_xi);
      for (int a = 0; a < n_xi; ++a) {
        const double xi = s.xi[a];
        for (int l = m; l <= l_max; ++l)
          pval(l, a) = special::assoc_legendre(l, m, xi);
        for (int l = m; l <= l_max; ++l) {
          const double prev = l > m ? pval(l - 1, a) : 0.0;
          pder(l, a) = ((l + m) * prev - l * xi * pval(l, a)) / (1.0 - xi * xi);
        }
      }
      // orthonormal scaling on [-1, 1]
      VecX norm(l_max + 1);
      for (int l = m; l <= l_max; ++l) {
        double lograt = 0;
        for (int k = l - m + 1; k <= l + m; ++k) lograt -= std::log(double(k));
        norm(l) = std::sqrt((2 * l + 1) / 2.0 * std::exp(lograt));
      }
      MatX d = MatX::Zero(n_xi, n_xi);
      for (int l = m; l <= l_max; ++l)
        for (int a = 0; a < n_xi; ++a)
          for (int b = 0; b < n_xi; ++b)
            d(a, b) += norm(l) * pder(l, a) * norm(l) * pval(l, b) * s.wxi[b];
      d_m.push_back(d);
    }
    dft.resize(n_phi, n_phi);
    idft.resize(n_phi, n_phi);
    for (int i = 0; i < n_phi; ++i)
      for (int j = 0; j < n_phi; ++j) {
        const double ang = 2.0 * kPi * i * j / n_phi;
        dft(i, j) = std::polar(1.0 / n_phi, -ang);
        idft(i, j) = std::polar(1.0, ang);
      }
  }

  // apply to one (xi, phi) slice of a scalar component; transpose_xi selects
  // the quadrature-transposed per-mode matrices (for adjoints)
  void apply(const double* in, double* out, int stride, bool transpose_xi) const {
    Eigen::MatrixXcd modes(n_xi, n_phi);
    for (int a = 0; a < n_xi; ++a)
      for (int f = 0; f < n_phi; ++f) {
        std::complex<double> acc = 0;
        for (int g = 0; g < n_phi; ++g)
          acc += dft(f, g) * in[(std::size_t(a) * n_phi + g) * stride];
        modes(a, f) = acc;
      }
    Eigen::MatrixXcd dmodes = Eigen::MatrixXcd::Zero(n_xi, n_phi);
    for (int f = 0; f < n_phi; ++f) {
      const int m = f <= n_phi / 2 ? f : f - n_phi;
      const int am = std::abs(m);
      if (am > l_max) continue;  // outside the transform domain
      const MatX& d = d_m[am];
      for (int a = 0; a < n_xi; ++a) {
        std::complex<double> acc = 0;
        for (int b = 0; b < n_xi; ++b)
          acc += (transpose_xi ? d(b, a) : d(a, b)) * modes(b, f);
        dmodes(a, f) = acc;
      }
    }
    for (int a = 0; a < n_xi; ++a)
      for (int f = 0; f < n_phi; ++f) {
        std::complex<double> acc = 0;
        for (int g = 0; g < n_phi; ++g) acc += idft(f, g) * dmodes(a, g);
        out[(std::size_t(a) * n_phi + f) * stride] = acc.real();
      }
  }
};

struct HarmonicTable {
  // Y[l][mu+l] at (xi, phi) grid points
  std::vector<std::vector<std::vector<std::complex<double>>>> y;
};

HarmonicTable harmonic_table(const RadialSphericalSpec& s) {
  HarmonicTable t;
  t.y.resize(s.l_max + 1);
  for (int l = 0; l <= s.l_max; ++l) {
    t.y[l].resize(2 * l + 1);
    for (int mu = -l; mu <= l; ++mu) {
      auto& grid = t.y[l][mu + l];
      grid.resize(std::size_t(s.n_xi) * s.n_phi);
      for (int a = 0; a < s.n_xi; ++a) {
        const double theta = std::acos(s.xi[a]);
        for (int f = 0; f < s.n_phi; ++f) {
          const double phi = 2.0 * kPi * f / s.n_phi;
          grid[std::size_t(a) * s.n_phi + f] =
              special::spherical_harmonic(l, mu, theta, phi);
        }
      }
    }
  }
  return t;
}

struct BesselTable {
  // kern[l][a*n_r + b] = (2 p_a / sqrt(2 pi)) j_l(p_a r_b)
  std::vector<std::vector<double>> kern;
};

BesselTable bessel_table(const RadialSphericalSpec& s) {
  BesselTable t;
  t.kern.resize(s.l_max + 1);
  for (int l = 0; l <= s.l_max; ++l)
    t.kern[l].resize(std::size_t(s.n_p) * s.n_r);
  for (int a = 0; a < s.n_p; ++a)
    for (int b = 0; b < s.n_r; ++b) {
      const std::vector<double> j = special::spherical_bessel_all(s.l_max, s.p[a] * s.r[b]);
      for (int l = 0; l <= s.l_max; ++l)
        t.kern[l][std::size_t(a) * s.n_r + b] =
            2.0 * s.p[a] / std::sqrt(2.0 * kPi) * j[l];
    }
  return t;
}

int channel_index(const std::vector<Channel>& chs, int l, int two_J, int two_nu) {
  for (int i = 0; i < int(chs.size()); ++i)
    if (chs[i].l == l && chs[i].two_J == two_J && chs[i].two_nu == two_nu) return i;
  return -1;
}

void check_coordinate_stage(const SphericalField& f, const char* op) {
  if (f.stage != SphericalField::Stage::Coordinate)
    throw Error(Errc::ResampleRequired,
                std::string(op) + " expects a field sampled on the spherical grid");
  if (f.j2 != 1)
    throw Error(Errc::UnsupportedLabel, "spherical pipeline supports j2 = 1");
}

}  // namespace

RadialSphericalSpec RadialSphericalSpec::make(int l_max, int n_p, double p_max,
                                              int n_r, double r_max) {
  RadialSphericalSpec s;
  s.l_max = l_max;
  s.n_p = n_p;
  s.p_max = p_max;
  s.n_r = n_r;
  s.r_max = r_max;
  s.n_xi = 2 * (l_max + 1);
  s.n_phi = 4 * l_max + 4;
  auto qr = special::gauss_legendre(n_r, 0.0, r_max);
  s.r = qr.x;
  s.wr = qr.w;
  auto qx = special::gauss_legendre(s.n_xi, -1.0, 1.0);
  s.xi = qx.x;
  s.wxi = qx.w;
  auto qp = special::gauss_legendre(n_p, 0.0, p_max);
  s.p = qp.x;
  s.wp = qp.w;
  s.wphi = 2.0 * kPi / s.n_phi;
  return s;
}

std::vector<Channel> enumerate_channels(int l_max) {
  std::vector<Channel> chs;
  for (int l = 0; l <= l_max; ++l) {
    std::vector<int> js;
    if (l == 0)
      js = {1};
    else
      js = {2 * l - 1, 2 * l + 1};
    for (int two_J : js)
      for (int two_nu = -two_J; two_nu <= two_J; two_nu += 2)
        chs.push_back({l, two_J, two_nu});
  }
  return chs;
}

SphericalField SphericalField::zero_coordinate(double mass,
                                               const RadialSphericalSpec& spec) {
  SphericalField f;
  f.mass = mass;
  f.spec = spec;
  f.stage = Stage::Coordinate;
  f.data.assign(std::size_t(spec.n_r) * spec.n_xi * spec.n_phi * 4, 0.0);
  return f;
}

SphericalField SphericalField::zero_momentum(double mass,
                                             const RadialSphericalSpec& spec) {
  SphericalField f;
  f.mass = mass;
  f.spec = spec;
  f.stage = Stage::Momentum;
  f.channels = enumerate_channels(spec.l_max);
  f.data.assign(f.channels.size() * std::size_t(spec.n_p) * 4, 0.0);
  return f;
}

double SphericalField::qnorm() const {
  double acc = 0;
  if (stage == Stage::Coordinate) {
    for (int b = 0; b < spec.n_r; ++b)
      for (int a = 0; a < spec.n_xi; ++a)
        for (int f = 0; f < spec.n_phi; ++f) {
          const double w = spec.wr[b] * spec.r[b] * spec.r[b] * spec.wxi[a] * spec.wphi;
          const double* blk = at(b, a, f);
          for (int i = 0; i < 4; ++i) acc += w * blk[i] * blk[i];
        }
  } else {
    for (int ch = 0; ch < int(channels.size()); ++ch)
      for (int ip = 0; ip < spec.n_p; ++ip) {
        const double* blk = channel_at(ch, ip);
        for (int i = 0; i < 4; ++i) acc += spec.wp[ip] * blk[i] * blk[i];
      }
  }
  return std::sqrt(acc);
}

SphericalField resample_to_spherical(const SpinorFieldGrid& f,
                                     const RadialSphericalSpec& spec,
                                     const CliffordBasis& basis) {
  (void)basis;
  if (f.rep != fields::FieldRep::Coordinate)
    throw Error(Errc::ResampleRequired, "resample needs a coordinate-space field");
  if (f.j2 != 1) throw Error(Errc::UnsupportedLabel, "resample supports j2 = 1");
  const int n = f.grid.n;
  const double dx = f.grid.dx;
  if (spec.r_max > (n / 2) * dx + 1e-12)
    throw Error(Errc::ResampleRequired, "r_max exceeds the inscribed sphere of the box");

  // plane-structured Fourier coefficients of the periodic field
  std::vector<std::complex<double>> c1(f.cells()), c2(f.cells());
  {
    for (std::size_t cell = 0; cell < f.cells(); ++cell) {
      const double* blk = f.data.data() + cell * 4;
      c1[cell] = {blk[2], blk[0]};
      c2[cell] = {blk[3], blk[1]};
    }
    // forward DFT (unnormalized)
    std::vector<std::complex<double>> line(n);
    auto fft3 = [&](std::vector<std::complex<double>>& a) {
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          kernels::fft_pow2(a.data() + (std::size_t(x) * n + y) * n, n, -1);
      for (int x = 0; x < n; ++x)
        for (int z = 0; z < n; ++z) {
          for (int y = 0; y < n; ++y) line[y] = a[(std::size_t(x) * n + y) * n + z];
          kernels::fft_pow2(line.data(), n, -1);
          for (int y = 0; y < n; ++y) a[(std::size_t(x) * n + y) * n + z] = line[y];
        }
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          for (int x = 0; x < n; ++x) line[x] = a[(std::size_t(x) * n + y) * n + z];
          kernels::fft_pow2(line.data(), n, -1);
          for (int x = 0; x < n; ++x) a[(std::size_t(x) * n + y) * n + z] = line[x];
        }
    };
    fft3(c1);
    fft3(c2);
  }

  SphericalField out = SphericalField::zero_coordinate(f.mass, spec);
  std::vector<double> kfreq(n);
  for (int i = 0; i < n; ++i) kfreq[i] = f.grid.momentum(i);
  const double center = (n / 2) * dx;
  const double inv_n3 = 1.0 / (double(n) * n * n);

  const std::size_t npts = std::size_t(spec.n_r) * spec.n_xi * spec.n_phi;
  kernels::parallel_for(npts, [&](std::size_t pb, std::size_t pe) {
    std::vector<std::complex<double>> ph_x(n), ph_y(n), ph_z(n);
    for (std::size_t pt = pb; pt < pe; ++pt) {
      const int iphi = int(pt % spec.n_phi);
      const int ixi = int((pt / spec.n_phi) % spec.n_xi);
      const int ir = int(pt / (std::size_t(spec.n_phi) * spec.n_xi));
      const double st = std::sqrt(std::max(0.0, 1.0 - spec.xi[ixi] * spec.xi[ixi]));
      const double phi = 2.0 * kPi * iphi / spec.n_phi;
      const double px = center + spec.r[ir] * st * std::cos(phi);
      const double py = center + spec.r[ir] * st * std::sin(phi);
      const double pz = center + spec.r[ir] * spec.xi[ixi];
      for (int i = 0; i < n; ++i) {
        ph_x[i] = std::polar(1.0, kfreq[i] * px);
        ph_y[i] = std::polar(1.0, kfreq[i] * py);
        ph_z[i] = std::polar(1.0, kfreq[i] * pz);
      }
      std::complex<double> acc1 = 0, acc2 = 0;
      for (int x = 0; x < n; ++x) {
        std::complex<double> partial1 = 0, partial2 = 0;
        for (int y = 0; y < n; ++y) {
          std::complex<double> inner1 = 0, inner2 = 0;
          const std::size_t base = (std::size_t(x) * n + y) * n;
          for (int z = 0; z < n; ++z) {
            inner1 += c1[base + z] * ph_z[z];
            inner2 += c2[base + z] * ph_z[z];
          }
          partial1 += inner1 * ph_y[y];
          partial2 += inner2 * ph_y[y];
        }
        acc1 += partial1 * ph_x[x];
        acc2 += partial2 * ph_x[x];
      }
      acc1 *= inv_n3;
      acc2 *= inv_n3;
      double* blk = out.data.data() + pt * 4;
      blk[2] = acc1.real();
      blk[0] = acc1.imag();
      blk[3] = acc2.real();
      blk[1] = acc2.imag();
    }
  });
  return out;
}

SphericalField spherical_transform(const SphericalField& f, const CliffordBasis& basis) {
  check_coordinate_stage(f, "spherical_transform");
  const RadialSphericalSpec& s = f.spec;
  const JnProjectors pn = jn_projectors(basis);
  const HarmonicTable yt = harmonic_table(s);
  const BesselTable bt = bessel_table(s);
  SphericalField out = SphericalField::zero_momentum(f.mass, s);

  for (int sector = 0; sector < 2; ++sector) {
    const int two_n = sector == 0 ? 1 : -1;
    const Mat4& proj = sector == 0 ? pn.plus : pn.minus;
    // project the sector pointwise
    std::vector<double> fsec(f.data.size());
    for (std::size_t pt = 0; pt < f.data.size() / 4; ++pt) {
      const double* in = f.data.data() + pt * 4;
      double* o = fsec.data() + pt * 4;
      for (int i = 0; i < 4; ++i)
        o[i] = proj(i, 0) * in[0] + proj(i, 1) * in[1] + proj(i, 2) * in[2] +
               proj(i, 3) * in[3];
    }
    // angular projection per (l, mu): g[l][mu](r) on the two planes
    for (int l = 0; l <= s.l_max; ++l)
      for (int mu = -l; mu <= l; ++mu) {
        std::vector<std::complex<double>> g1(s.n_r, 0.0), g2(s.n_r, 0.0);
        const auto& ygrid = yt.y[l][mu + l];
        for (int b = 0; b < s.n_r; ++b) {
          std::complex<double> a1 = 0, a2 = 0;
          for (int a = 0; a < s.n_xi; ++a)
            for (int ff = 0; ff < s.n_phi; ++ff) {
              const double w = s.wxi[a] * s.wphi;
              const std::complex<double> y = ygrid[std::size_t(a) * s.n_phi + ff];
              const double* blk =
                  fsec.data() +
                  ((std::size_t(b) * s.n_xi + a) * s.n_phi + ff) * 4;
              a1 += w * y * plane(blk, 0);
              a2 += w * y * plane(blk, 1);
            }
          g1[b] = a1;
          g2[b] = a2;
        }
        // radial kernel and CG coupling
        for (int two_J : l == 0 ? std::vector<int>{1}
                                : std::vector<int>{2 * l - 1, 2 * l + 1}) {
          const int two_nu = 2 * mu + two_n;
          if (std::abs(two_nu) > two_J) continue;
          const double cg = special::clebsch_gordan(
              {2 * l, 2 * mu, 1, two_n, two_J, two_nu});
          if (cg == 0.0) continue;
          const int ch = channel_index(out.channels, l, two_J, two_nu);
          for (int a = 0; a < s.n_p; ++a) {
            std::complex<double> h1 = 0, h2 = 0;
            const double* kern = bt.kern[l].data() + std::size_t(a) * s.n_r;
            for (int b = 0; b < s.n_r; ++b) {
              const double w = s.wr[b] * s.r[b] * s.r[b] * kern[b];
              h1 += w * g1[b];
              h2 += w * g2[b];
            }
            double* o = out.channel_at(ch, a);
            add_plane(o, 0, cg * h1);
            add_plane(o, 1, cg * h2);
          }
        }
      }
  }
  return out;
}

SphericalField inverse_spherical_transform(const SphericalField& f,
                                           const CliffordBasis& basis) {
  if (f.stage != SphericalField::Stage::Momentum)
    throw Error(Errc::UsageError, "inverse transform expects a momentum-stage field");
  const RadialSphericalSpec& s = f.spec;
  const JnProjectors pn = jn_projectors(basis);
  const HarmonicTable yt = harmonic_table(s);
  const BesselTable bt = bessel_table(s);
  SphericalField out = SphericalField::zero_coordinate(f.mass, s);

  for (int sector = 0; sector < 2; ++sector) {
    const int two_n = sector == 0 ? 1 : -1;
    const Mat4& proj = sector == 0 ? pn.plus : pn.minus;
    for (int l = 0; l <= s.l_max; ++l)
      for (int mu = -l; mu <= l; ++mu) {
        // gather the CG-weighted sector part of the channels
        std::vector<std::complex<double>> h1(s.n_p, 0.0), h2(s.n_p, 0.0);
        bool any = false;
        for (int two_J : l == 0 ? std::vector<int>{1}
                                : std::vector<int>{2 * l - 1, 2 * l + 1}) {
          const int two_nu = 2 * mu + two_n;
          if (std::abs(two_nu) > two_J) continue;
          const double cg = special::clebsch_gordan(
              {2 * l, 2 * mu, 1, two_n, two_J, two_nu});
          if (cg == 0.0) continue;
          const int ch = channel_index(f.channels, l, two_J, two_nu);
          if (ch < 0) continue;
          any = true;
          for (int a = 0; a < s.n_p; ++a) {
            const double* blk = f.channel_at(ch, a);
            double v[4];
            for (int i = 0; i < 4; ++i)
              v[i] = proj(i, 0) * blk[0] + proj(i, 1) * blk[1] + proj(i, 2) * blk[2] +
                     proj(i, 3) * blk[3];
            h1[a] += cg * std::complex<double>(v[2], v[0]);
            h2[a] += cg * std::complex<double>(v[3], v[1]);
          }
        }
        if (!any) continue;
        // adjoint radial kernel (no r^2: adjoint w.r.t. the r^2 dr measure)
        std::vector<std::complex<double>> g1(s.n_r, 0.0), g2(s.n_r, 0.0);
        for (int b = 0; b < s.n_r; ++b) {
          std::complex<double> a1 = 0, a2 = 0;
          for (int a = 0; a < s.n_p; ++a) {
            const double w = s.wp[a] * bt.kern[l][std::size_t(a) * s.n_r + b];
            a1 += w * h1[a];
            a2 += w * h2[a];
          }
          g1[b] = a1;
          g2[b] = a2;
        }
        // adjoint angular kernel: conj(Y)
        const auto& ygrid = yt.y[l][mu + l];
        for (int b = 0; b < s.n_r; ++b)
          for (int a = 0; a < s.n_xi; ++a)
            for (int ff = 0; ff < s.n_phi; ++ff) {
              const std::complex<double> yc =
                  std::conj(ygrid[std::size_t(a) * s.n_phi + ff]);
              double* blk = out.data.data() +
                            ((std::size_t(b) * s.n_xi + a) * s.n_phi + ff) * 4;
              add_plane(blk, 0, yc * g1[b]);
              add_plane(blk, 1, yc * g2[b]);
            }
      }
  }
  return out;
}

SphericalField dirac_gradient(const SphericalField& f, const CliffordBasis& basis) {
  check_coordinate_stage(f, "dirac_gradient");
  const RadialSphericalSpec& s = f.spec;
  const MatX dr = diff_matrix(s.r);
  const XiDerivative dxi(s);
  const MatX dphi = phi_diff_matrix(s.n_phi);

  const std::size_t npts = std::size_t(s.n_r) * s.n_xi * s.n_phi;
  std::vector<double> fr(npts * 4, 0.0), fxi(npts * 4, 0.0), fphi(npts * 4, 0.0);
  auto at = [&](std::vector<double>& v, int b, int a, int ff) {
    return v.data() + ((std::size_t(b) * s.n_xi + a) * s.n_phi + ff) * 4;
  };
  // d/dr along radial lines
  for (int a = 0; a < s.n_xi; ++a)
    for (int ff = 0; ff < s.n_phi; ++ff)
      for (int i = 0; i < 4; ++i) {
        for (int b = 0; b < s.n_r; ++b) {
          double acc = 0;
          for (int bb = 0; bb < s.n_r; ++bb) acc += dr(b, bb) * f.at(bb, a, ff)[i];
          at(fr, b, a, ff)[i] = acc;
        }
      }
  // d/dxi per azimuthal Legendre mode
  for (int b = 0; b < s.n_r; ++b)
    for (int i = 0; i < 4; ++i)
      dxi.apply(f.at(b, 0, 0) + i, at(fxi, b, 0, 0) + i, 4, false);
  // d/dphi
  for (int b = 0; b < s.n_r; ++b)
    for (int a = 0; a < s.n_xi; ++a)
      for (int i = 0; i < 4; ++i)
        for (int ff = 0; ff < s.n_phi; ++ff) {
          double acc = 0;
          for (int gg = 0; gg < s.n_phi; ++gg) acc += dphi(ff, gg) * f.at(b, a, gg)[i];
          at(fphi, b, a, ff)[i] = acc;
        }

  SphericalField out = SphericalField::zero_coordinate(f.mass, s);
  const Mat4 ig[3] = {basis.igamma[1], basis.igamma[2], basis.igamma[3]};
  for (int b = 0; b < s.n_r; ++b) {
    const double r = s.r[b];
    for (int a = 0; a < s.n_xi; ++a) {
      const double xi = s.xi[a];
      const double st = std::sqrt(std::max(1e-300, 1.0 - xi * xi));
      for (int ff = 0; ff < s.n_phi; ++ff) {
        const double phi = 2.0 * kPi * ff / s.n_phi;
        const double cp = std::cos(phi), sp = std::sin(phi);
        // cartesian gradient from spherical derivatives (xi = cos theta):
        // d_x = st cp d_r + (xi cp / r)(-st d_xi * ...) ... assembled below
        const double xhat[3] = {st * cp, st * sp, xi};
        // d_theta = -st d_xi; theta-hat = (xi cp, xi sp, -st)
        const double that[3] = {xi * cp, xi * sp, -st};
        const double phat[3] = {-sp, cp, 0.0};
        double grad[3][4];
        for (int i = 0; i < 4; ++i) {
          const double gr = at(fr, b, a, ff)[i];
          const double gth = -st * at(fxi, b, a, ff)[i];  // d/dtheta
          const double gph = at(fphi, b, a, ff)[i];
          for (int c = 0; c < 3; ++c)
            grad[c][i] = xhat[c] * gr + that[c] * gth / r + phat[c] * gph / (r * st);
        }
        double* o = out.at(b, a, ff);
        for (int c = 0; c < 3; ++c)
          for (int i = 0; i < 4; ++i) {
            double acc = 0;
            for (int j = 0; j < 4; ++j) acc += ig[c](i, j) * grad[c][j];
            o[i] += acc;
          }
      }
    }
  }
  return out;
}

SphericalField hankel_majorana(const SphericalField& f, const CliffordBasis& basis) {
  check_coordinate_stage(f, "hankel_majorana");
  if (f.mass < 0) throw Error(Errc::MassUnset, "field mass not set");
  const RadialSphericalSpec& s = f.spec;
  // (E_p + H g0)/N = (E_p + m - (ig^k) d_k)/N applied through two transforms
  SphericalField base = spherical_transform(f, basis);
  SphericalField grad = spherical_transform(dirac_gradient(f, basis), basis);
  SphericalField out = SphericalField::zero_momentum(f.mass, s);
  for (int ch = 0; ch < int(out.channels.size()); ++ch)
    for (int ip = 0; ip < s.n_p; ++ip) {
      const double e = std::sqrt(s.p[ip] * s.p[ip] + f.mass * f.mass);
      const double np = std::sqrt(e + f.mass) * std::sqrt(2.0 * e);
      const double* b0 = base.channel_at(ch, ip);
      const double* b1 = grad.channel_at(ch, ip);
      double* o = out.channel_at(ch, ip);
      for (int i = 0; i < 4; ++i) o[i] = ((e + f.mass) * b0[i] - b1[i]) / np;
    }
  return out;
}

SphericalField inverse_hankel_majorana(const SphericalField& f,
                                       const CliffordBasis& basis) {
  if (f.stage != SphericalField::Stage::Momentum)
    throw Error(Errc::UsageError, "inverse transform expects a momentum-stage field");
  if (f.mass < 0) throw Error(Errc::MassUnset, "field mass not set");
  const RadialSphericalSpec& s = f.spec;
  // adjoint of the forward composite
  SphericalField part0 = f, part1 = f;
  for (int ch = 0; ch < int(f.channels.size()); ++ch)
    for (int ip = 0; ip < s.n_p; ++ip) {
      const double e = std::sqrt(s.p[ip] * s.p[ip] + f.mass * f.mass);
      const double np = std::sqrt(e + f.mass) * std::sqrt(2.0 * e);
      double* p0 = part0.channel_at(ch, ip);
      double* p1 = part1.channel_at(ch, ip);
      for (int i = 0; i < 4; ++i) {
        p0[i] *= (e + f.mass) / np;
        p1[i] *= 1.0 / np;
      }
    }
  SphericalField rec = inverse_spherical_transform(part0, basis);
  // the discrete Dirac gradient is quadrature-antisymmetric, so its adjoint
  // is -D up to the band truncation
  SphericalField rec1 = dirac_gradient(inverse_spherical_transform(part1, basis), basis);
  for (std::size_t i = 0; i < rec.data.size(); ++i) rec.data[i] += rec1.data[i];
  return rec;
}

SphericalField angular_momentum_z(const SphericalField& f, const CliffordBasis& basis) {
  check_coordinate_stage(f, "angular_momentum_z");
  const RadialSphericalSpec& s = f.spec;
  const MatX dphi = phi_diff_matrix(s.n_phi);
  SphericalField out = SphericalField::zero_coordinate(f.mass, s);
  // (-x^1 d_2 + x^2 d_1) = -d_phi on the product grid
  for (int b = 0; b < s.n_r; ++b)
    for (int a = 0; a < s.n_xi; ++a)
      for (int i = 0; i < 4; ++i)
        for (int ff = 0; ff < s.n_phi; ++ff) {
          double acc = 0;
          for (int gg = 0; gg < s.n_phi; ++gg)
            acc += dphi(ff, gg) * f.at(b, a, gg)[i];
          out.at(b, a, ff)[i] = -acc;
        }
  // spin part: -(1/2) (ig0 g3 g5)_1 = -(1/2)(ig1)(ig2)
  const Mat4 spin = -(0.5 * basis.igamma[1] * basis.igamma[2]);
  for (std::size_t pt = 0; pt < f.data.size() / 4; ++pt) {
    const double* in = f.data.data() + pt * 4;
    double* o = out.data.data() + pt * 4;
    double v[4];
    for (int i = 0; i < 4; ++i)
      v[i] = spin(i, 0) * in[0] + spin(i, 1) * in[1] + spin(i, 2) * in[2] +
             spin(i, 3) * in[3];
    for (int i = 0; i < 4; ++i) o[i] += v[i];
  }
  return out;
}

}  // namespace pinrep::spherical
