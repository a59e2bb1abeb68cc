#include "pinrep/propagator.hpp"

#include <cmath>

#include "pinrep/kernels.hpp"
#include "pinrep/special.hpp"

namespace pinrep::prop {
namespace {

constexpr double kPi = 3.14159265358979323846;

double j0s(double x) { return std::abs(x) < 1e-8 ? 1.0 - x * x / 6.0 : std::sin(x) / x; }
double j1s(double x) {
  if (std::abs(x) < 1e-5) return x / 3.0;
  return std::sin(x) / (x * x) - std::cos(x) / x;
}

}  // namespace

PropagatorSample delta(const FourVector& x, double mass, const QuadratureSpec& quad,
                       const CliffordBasis& basis) {
  // Phase convention: exp(-(ig0)(p.x - E t)), fixed so that the kernel
  // reproduces the forward evolution exp((ig0)_1 E t) under convolution.
  if (!quad.valid()) throw Error(Errc::UsageError, "invalid quadrature spec");
  const special::Quadrature q = special::gauss_legendre(quad.n_radial, 0.0, quad.p_max);
  const Vec3 xv = x.spatial();
  const double r = xv.norm();
  const double t = x.t;
  double ci = 0, ck = 0, c0 = 0;
  for (int i = 0; i < quad.n_radial; ++i) {
    const double p = q.x[i];
    const double e = std::sqrt(p * p + mass * mass);
    const double reg = std::exp(-p * p / (2.0 * quad.regulator_width * quad.regulator_width));
    const double w = q.w[i] * p * p * reg / (2.0 * kPi * kPi);
    ci += w * std::cos(e * t) * j0s(p * r);
    ck += w * std::sin(e * t) * j1s(p * r) * p / e;
    c0 += w * std::sin(e * t) * j0s(p * r) * mass / e;
  }
  Mat4 val = ci * Mat4::Identity() + c0 * basis.igamma[0];
  if (r > 1e-14) {
    const Vec3 xh = xv / r;
    const Mat4 khat = xh.x() * (basis.igamma[1] * basis.igamma[0]) +
                      xh.y() * (basis.igamma[2] * basis.igamma[0]) +
                      xh.z() * (basis.igamma[3] * basis.igamma[0]);
    val -= ck * khat;
  }
  return PropagatorSample{x, val, quad, mass};
}

std::vector<QuadratureSpec> default_ladder() {
  return {QuadratureSpec{16.0, 512, 2.0}, QuadratureSpec{32.0, 512, 4.0},
          QuadratureSpec{64.0, 512, 8.0}};
}

std::vector<ScanRow> causality_scan(const std::vector<double>& radii, double mass,
                                    const std::vector<QuadratureSpec>& ladder,
                                    const CliffordBasis& basis) {
  if (ladder.empty()) throw Error(Errc::UsageError, "empty quadrature ladder");
  const double base_norm =
      delta(FourVector{0, 0, 0, 0}, mass, ladder.front(), basis).value.cwiseAbs().maxCoeff();
  std::vector<ScanRow> rows;
  for (double r : radii) {
    if (r <= 0) throw Error(Errc::UsageError, "radii must be positive (r = 0 is on the cone)");
    for (int k = 0; k < int(ladder.size()); ++k) {
      const Mat4 v = delta(FourVector{0, 0, 0, r}, mass, ladder[k], basis).value;
      rows.push_back(ScanRow{r, k, v.cwiseAbs().maxCoeff() / base_norm});
    }
  }
  return rows;
}

double reproduce_check(const fields::SpinorFieldGrid& f, double t, double mass,
                       const QuadratureSpec& quad, const CliffordBasis& basis,
                       int probe_stride) {
  if (f.j2 != 1)
    throw Error(Errc::UnsupportedLabel, "reproduce_check runs on spin-1/2 fields");
  if (f.rep != fields::FieldRep::Coordinate)
    throw Error(Errc::NotOnShell, "reproduce_check expects a coordinate field");
  if (std::abs(f.mass - mass) > 1e-12)
    throw Error(Errc::NotOnShell, "field mass disagrees with the propagator mass");

  const fields::SpinorFieldGrid evolved = fields::evolve(f, t, basis);
  const int n = f.grid.n;
  const double dx = f.grid.dx;

  // propagator values are radial: cache the three scalar kernels per integer
  // squared lattice distance (rotational invariance of Delta)
  struct Coeffs {
    double ci = 0, ck = 0, c0 = 0;
    bool set = false;
  };
  const int max_key = 3 * (n / 2) * (n / 2) + 1;
  std::vector<Coeffs> table(max_key + 1);
  const special::Quadrature q =
      special::gauss_legendre(quad.n_radial, 0.0, quad.p_max);
  auto coeffs_at = [&](int key) -> const Coeffs& {
    Coeffs& c = table[key];
    if (!c.set) {
      const double r = std::sqrt(double(key)) * dx;
      for (int i = 0; i < quad.n_radial; ++i) {
        const double p = q.x[i];
        const double e = std::sqrt(p * p + mass * mass);
        const double reg =
            std::exp(-p * p / (2.0 * quad.regulator_width * quad.regulator_width));
        const double w = q.w[i] * p * p * reg / (2.0 * kPi * kPi);
        c.ci += w * std::cos(e * t) * j0s(p * r);
        c.ck += w * std::sin(e * t) * j1s(p * r) * p / e;
        c.c0 += w * std::sin(e * t) * j0s(p * r) * mass / e;
      }
      c.set = true;
    }
    return c;
  };

  const Mat4 kx = basis.igamma[1] * basis.igamma[0];
  const Mat4 ky = basis.igamma[2] * basis.igamma[0];
  const Mat4 kz = basis.igamma[3] * basis.igamma[0];
  const double vol = dx * dx * dx;

  double num = 0, den = 0;
  for (int px = 0; px < n; px += probe_stride)
    for (int py = 0; py < n; py += probe_stride)
      for (int pz = 0; pz < n; pz += probe_stride) {
        Vec4 acc = Vec4::Zero();
        for (int yx = 0; yx < n; ++yx)
          for (int yy = 0; yy < n; ++yy)
            for (int yz = 0; yz < n; ++yz) {
              // minimal-image displacement on the periodic box
              auto wrap = [n](int d) {
                if (d > n / 2) d -= n;
                if (d < -n / 2) d += n;
                return d;
              };
              const int ix = wrap(px - yx), iy = wrap(py - yy), iz = wrap(pz - yz);
              const int key = ix * ix + iy * iy + iz * iz;
              const double ox = ix * dx, oy = iy * dx, oz = iz * dx;
              const double r = std::sqrt(double(key)) * dx;
              const Coeffs& c = coeffs_at(key);
              Mat4 dmat = c.ci * Mat4::Identity() + c.c0 * basis.igamma[0];
              if (key > 0)
                dmat -= (c.ck / r) * (ox * kx + oy * ky + oz * kz);
              const double* v = f.at(yx, yy, yz);
              acc += dmat * Vec4(v[0], v[1], v[2], v[3]) * vol;
            }
        const double* ev = evolved.at(px, py, pz);
        for (int i = 0; i < 4; ++i) {
          num += (acc(i) - ev[i]) * (acc(i) - ev[i]);
          den += ev[i] * ev[i];
        }
      }
  return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace pinrep::prop
