#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "pinrep/group.hpp"
#include "pinrep/linalg.hpp"

namespace pinrep::fields {

using clifford::CliffordBasis;
using groups::FourVector;
using groups::PinElement;

struct GridSpec {
  int n = 16;          // points per axis, power of two
  double dx = 0.25;    // spacing
  bool periodic = true;

  bool valid() const { return n > 0 && (n & (n - 1)) == 0 && dx > 0; }
  double momentum_spacing() const { return 2.0 * 3.14159265358979323846 / (n * dx); }
  /// signed momentum of cell index i (FFT ordering, Nyquist negative)
  double momentum(int i) const {
    const int s = i <= n / 2 - 1 ? i : i - n;
    return (i == n / 2) ? -double(n / 2) * momentum_spacing()
                        : double(s) * momentum_spacing();
  }
};

enum class FieldRep { Coordinate, Momentum };

/// A sampled real spinor-tensor field on a periodic cubic grid. Tensor
/// component index c encodes the Majorana indexes as c = i1 + 4 i2 + ...
/// (index 1 fastest). j2 = 0 uses the antisymmetric two-index space, so the
/// stored index count is max(j2, 2) there.
struct SpinorFieldGrid {
  int j2 = 1;
  double mass = 1.0;
  FieldRep rep = FieldRep::Coordinate;
  GridSpec grid;
  std::vector<double> data;  // [x][y][z][comp], comp fastest

  int n_indexes() const { return j2 == 0 ? 2 : j2; }
  int ncomp() const { return 1 << (2 * n_indexes()); }
  std::size_t cells() const { return std::size_t(grid.n) * grid.n * grid.n; }
  std::size_t size() const { return cells() * ncomp(); }
  double* at(int x, int y, int z) {
    return data.data() + ((std::size_t(x) * grid.n + y) * grid.n + z) * ncomp();
  }
  const double* at(int x, int y, int z) const {
    return data.data() + ((std::size_t(x) * grid.n + y) * grid.n + z) * ncomp();
  }
  double norm() const;  // plain l2 over all samples and components

  static SpinorFieldGrid zero(int j2, double mass, const GridSpec& g,
                              FieldRep rep = FieldRep::Coordinate);
};

/// Gaussian profile exp(-r^2/(2 width^2)) centered in the box times the
/// constant tensor block `u` (size ncomp).
SpinorFieldGrid gaussian_bump(int j2, double mass, const GridSpec& g, double width,
                              const std::vector<double>& u);

/// Random field with momentum support below `pfrac`*p_nyquist (Gaussian
/// spectral envelope); unit norm.
SpinorFieldGrid random_band_limited(int j2, double mass, const GridSpec& g,
                                    std::uint64_t seed, double pfrac = 0.35);

/// Per-cell unitary factor of the Fourier-Majorana transform at momentum p.
/// The first Majorana index couples cells p and -p through the conjugate
/// block; the remaining indexes act pointwise.
struct MomentumKernel {
  double energy;       // E_p
  double norm;         // sqrt(E+m) sqrt(2E)
  double diag;         // (E+m)/norm, scalar part
  Mat4 pair_block;     // sum_l p_l (ig^l)(ig0) / norm, applied to the -p value
  std::vector<Mat4> pointwise;  // per index k >= 2: (E+m - p_l (ig0)_1(ig^l)_k)/norm
                                 // stored as the 4x4 factor on index k paired with
                                 // (ig0) on index 1 (see apply in fields.cpp)
  double orthogonality_residual() const;
};

/// Kernel factors at momentum p. Throws MasslessZeroMomentum for m = 0, p = 0.
MomentumKernel derive_momentum_kernel(const Vec3& p, double mass, int j2,
                                      const CliffordBasis& basis);

/// iH applied on tensor index k (1-based): (ig0 ig^l)_k d_l + m (ig0)_k with
/// the derivative realized spectrally through the (ig0)_1-realified transform.
/// Throws NonPeriodicGrid.
SpinorFieldGrid apply_hamiltonian(const SpinorFieldGrid& f, int k,
                                  const CliffordBasis& basis);

/// Unitary Fourier-Majorana transform (coordinate -> momentum).
SpinorFieldGrid fourier_majorana(const SpinorFieldGrid& f, const CliffordBasis& basis);
/// Adjoint/inverse transform (momentum -> coordinate).
SpinorFieldGrid inverse_fourier_majorana(const SpinorFieldGrid& f,
                                         const CliffordBasis& basis);

/// max_k ||iH_k psi - iH_1 psi|| / ||psi|| (Bargmann-Wigner membership).
double bw_residual(const SpinorFieldGrid& f, const CliffordBasis& basis);

/// Orthogonal decomposition into eigenfields of
/// sum_k (ig0)_1 ((ig0)(ig3)(ig5))_k with eigenvalue 2n; returned in
/// ascending 2n order together with the eigenvalues.
struct JnSplit {
  std::vector<int> two_n;
  std::vector<SpinorFieldGrid> component;
};
JnSplit pinor_jn_split(const SpinorFieldGrid& f, const CliffordBasis& basis);

/// Time evolution by exp((ig0)_1 E_p t) in the Fourier-Majorana picture.
/// Requires a Bargmann-Wigner field (residual below `bw_tol`) so that the
/// first-index evolution equals every index's evolution.
SpinorFieldGrid evolve(const SpinorFieldGrid& f, double t, const CliffordBasis& basis,
                       double bw_tol = 1e-6);

enum class MassCase { Massive, MasslessHelicity };

/// Poincare translation T_a = exp(-(ig0)_1 p.a) on a momentum-space field.
SpinorFieldGrid translate(const SpinorFieldGrid& f, const FourVector& a,
                          const CliffordBasis& basis);

/// Lorentz action L_S on a momentum-space on-shell field. Exact when the
/// spatial part of Lambda(S) permutes the momentum lattice (axis rotations,
/// parity); otherwise trilinear interpolation on the dual lattice is used.
/// Massless fields must satisfy the helicity constraint (g3 g5)_k psi = ±psi
/// and carry no content at p = 0.
SpinorFieldGrid poincare_act(const SpinorFieldGrid& f, const PinElement& s,
                             MassCase mass_case, const CliffordBasis& basis);

/// Relative norm of the field outside radius `r` from the box center.
double norm_fraction_outside(const SpinorFieldGrid& f, double r);

}  // namespace pinrep::fields
