#pragma once

#include <vector>

#include "pinrep/fields.hpp"
#include "pinrep/special.hpp"

namespace pinrep::spherical {

using clifford::CliffordBasis;
using fields::SpinorFieldGrid;

/// Product quadrature grid for the spherical transforms: Gauss-Legendre in r
/// on [0, r_max] and in cos(theta), uniform periodic phi, Gauss-Legendre
/// momentum nodes on [0, p_max].
struct RadialSphericalSpec {
  int l_max = 8;
  int n_r = 64, n_xi = 18, n_phi = 36, n_p = 64;
  double r_max = 5.0, p_max = 12.566370614359172;
  std::vector<double> r, wr, xi, wxi, p, wp;
  double wphi = 0;

  static RadialSphericalSpec make(int l_max = 8, int n_p = 64, double p_max = 4.0 * kPiVal,
                                  int n_r = 64, double r_max = 5.0);
  static constexpr double kPiVal = 3.14159265358979323846;
};

struct Channel {
  int l, two_J, two_nu;
};

/// A spin-1/2 field on the spherical product grid (coordinate stage) or in
/// the (p, l, J, nu) channel representation (momentum stage).
struct SphericalField {
  enum class Stage { Coordinate, Momentum };
  int j2 = 1;
  double mass = 1.0;
  Stage stage = Stage::Coordinate;
  RadialSphericalSpec spec;
  // Coordinate stage: [r][xi][phi][4]; momentum stage: [channel][p][4]
  std::vector<Channel> channels;
  std::vector<double> data;

  double* at(int ir, int ixi, int iphi) {
    return data.data() + ((std::size_t(ir) * spec.n_xi + ixi) * spec.n_phi + iphi) * 4;
  }
  const double* at(int ir, int ixi, int iphi) const {
    return data.data() + ((std::size_t(ir) * spec.n_xi + ixi) * spec.n_phi + iphi) * 4;
  }
  double* channel_at(int ch, int ip) {
    return data.data() + (std::size_t(ch) * spec.n_p + ip) * 4;
  }
  const double* channel_at(int ch, int ip) const {
    return data.data() + (std::size_t(ch) * spec.n_p + ip) * 4;
  }
  /// quadrature-weighted L2 norm in the appropriate stage
  double qnorm() const;

  static SphericalField zero_coordinate(double mass, const RadialSphericalSpec& spec);
  static SphericalField zero_momentum(double mass, const RadialSphericalSpec& spec);
};

std::vector<Channel> enumerate_channels(int l_max);

/// Exact trigonometric resampling of a periodic cartesian field onto the
/// spherical product grid centered at the box center. Spin-1/2 fields only.
SphericalField resample_to_spherical(const SpinorFieldGrid& f,
                                     const RadialSphericalSpec& spec,
                                     const CliffordBasis& basis);

/// Spherical transform of a coordinate-stage spin-1/2 field: jn-split,
/// (ig0)_1-realified harmonic projection, radial Bessel kernel and
/// Clebsch-Gordan coupling into (p, l, J, nu) channels.
/// Throws ResampleRequired unless the field is on the spherical grid.
SphericalField spherical_transform(const SphericalField& f, const CliffordBasis& basis);

/// Quadrature adjoint of spherical_transform (inverse on band-limited data).
SphericalField inverse_spherical_transform(const SphericalField& f,
                                           const CliffordBasis& basis);

/// Hankel-Majorana transform: spherical transform composed with the unitary
/// momentum kernel (E_p + H gamma^0)/(sqrt(E_p+m) sqrt(2 E_p)) realized
/// through grid derivatives. Throws MassUnset for negative mass.
SphericalField hankel_majorana(const SphericalField& f, const CliffordBasis& basis);
SphericalField inverse_hankel_majorana(const SphericalField& f,
                                       const CliffordBasis& basis);

/// z angular momentum (-x^1 d_2 + x^2 d_1 - 1/2 (ig0 g3 g5)-spin term) on the
/// spherical grid; the momentum-stage image is multiplication by nu (ig0)_1.
SphericalField angular_momentum_z(const SphericalField& f, const CliffordBasis& basis);

/// Dirac-operator contraction (ig^k) d_k on the spherical grid (collocation
/// derivatives in r and cos theta, spectral in phi).
SphericalField dirac_gradient(const SphericalField& f, const CliffordBasis& basis);

}  // namespace pinrep::spherical
