#include "support.hpp"

namespace pinrep::oracle {

fields::SpinorFieldGrid direct_fm(const fields::SpinorFieldGrid& f,
                                  const clifford::CliffordBasis& basis) {
  const int n = f.grid.n;
  const std::size_t cells = f.cells();
  std::vector<std::complex<double>> z1(cells), z2(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    z1[c] = {f.data[c * 4 + 2], f.data[c * 4 + 0]};
    z2[c] = {f.data[c * 4 + 3], f.data[c * 4 + 1]};
  }
  auto idx = [n](int x, int y, int z) { return (std::size_t(x) * n + y) * n + z; };
  std::vector<double> k(n);
  for (int i = 0; i < n; ++i) k[i] = f.grid.momentum(i);
  const std::complex<double> im(0, 1);

  std::vector<std::complex<double>> c1(cells, 0.0), c2(cells, 0.0);
  for (int px = 0; px < n; ++px)
    for (int py = 0; py < n; ++py)
      for (int pz = 0; pz < n; ++pz)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
              const double ph = -(k[px] * x + k[py] * y + k[pz] * z) * f.grid.dx;
              const auto w = std::polar(1.0, ph);
              c1[idx(px, py, pz)] += w * z1[idx(x, y, z)];
              c2[idx(px, py, pz)] += w * z2[idx(x, y, z)];
            }
  std::vector<std::complex<double>> d1[3], d2[3];
  for (int l = 0; l < 3; ++l) {
    d1[l].assign(cells, 0.0);
    d2[l].assign(cells, 0.0);
  }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int px = 0; px < n; ++px)
          for (int py = 0; py < n; ++py)
            for (int pz = 0; pz < n; ++pz) {
              const double ph = (k[px] * x + k[py] * y + k[pz] * z) * f.grid.dx;
              const auto w = std::polar(1.0, ph) / double(cells);
              const double kl[3] = {k[px], k[py], k[pz]};
              for (int l = 0; l < 3; ++l) {
                d1[l][idx(x, y, z)] += im * kl[l] * w * c1[idx(px, py, pz)];
                d2[l][idx(x, y, z)] += im * kl[l] * w * c2[idx(px, py, pz)];
              }
            }
  std::vector<double> hpart(cells * 4, 0.0), dpsi(cells * 4);
  for (int l = 0; l < 3; ++l) {
    for (std::size_t c = 0; c < cells; ++c) {
      dpsi[c * 4 + 2] = d1[l][c].real();
      dpsi[c * 4 + 0] = d1[l][c].imag();
      dpsi[c * 4 + 3] = d2[l][c].real();
      dpsi[c * 4 + 1] = d2[l][c].imag();
    }
    for (std::size_t c = 0; c < cells; ++c)
      for (int i = 0; i < 4; ++i) {
        double acc = 0;
        for (int j = 0; j < 4; ++j) acc += basis.igamma[l + 1](i, j) * dpsi[c * 4 + j];
        hpart[c * 4 + i] -= acc;
      }
  }
  fields::SpinorFieldGrid out =
      fields::SpinorFieldGrid::zero(1, f.mass, f.grid, fields::FieldRep::Momentum);
  const double scale = 1.0 / std::pow(double(n), 1.5);
  for (int px = 0; px < n; ++px)
    for (int py = 0; py < n; ++py)
      for (int pz = 0; pz < n; ++pz) {
        const double e = std::sqrt(k[px] * k[px] + k[py] * k[py] + k[pz] * k[pz] +
                                   f.mass * f.mass);
        const double np = std::sqrt(e + f.mass) * std::sqrt(2.0 * e);
        Vec4 acc = Vec4::Zero();
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
              const double ph = (k[px] * x + k[py] * y + k[pz] * z) * f.grid.dx;
              const double cph = std::cos(ph), sph = std::sin(ph);
              const std::size_t c = idx(x, y, z);
              Vec4 v;
              for (int i = 0; i < 4; ++i)
                v(i) = (e + f.mass) * f.data[c * 4 + i] + hpart[c * 4 + i];
              acc += cph * v - sph * (basis.igamma[0] * v);
            }
        double* o = out.at(px, py, pz);
        for (int i = 0; i < 4; ++i) o[i] = scale * acc(i) / np;
      }
  return out;
}

}  // namespace pinrep::oracle
