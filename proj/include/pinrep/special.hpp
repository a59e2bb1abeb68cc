#pragma once

#include <complex>
#include <vector>

#include "pinrep/linalg.hpp"

namespace pinrep::special {

struct AngularLabel {
  int l;
  int mu;
  bool valid() const { return l >= 0 && std::abs(mu) <= l; }
};

/// All angular labels are carried as doubled integers so half-integer spins
/// stay exact.
struct CouplingLabel {
  int two_l, two_mu;  // orbital
  int two_j, two_n;   // spin
  int two_J, two_nu;  // total
};

/// Spherical Bessel function of the first kind, l <= 20. Upward recurrence
/// for x > l, Miller's downward recurrence otherwise.
double spherical_bessel(int l, double x);

/// j_0..j_lmax at one argument (shares the recurrence sweep).
std::vector<double> spherical_bessel_all(int lmax, double x);

/// Associated Legendre P_l^mu with the Condon-Shortley phase; negative mu via
/// P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m.
double assoc_legendre(int l, int mu, double xi);

/// Y_lmu(theta, phi) with the standard sqrt((2l+1)/4pi (l-mu)!/(l+mu)!)
/// normalization.
std::complex<double> spherical_harmonic(int l, int mu, double theta, double phi);

/// Clebsch-Gordan coefficient <l mu j n | J nu> in the Condon-Shortley
/// convention, evaluated by the Racah sum in exact big-integer rational
/// arithmetic. Invalid couplings return 0. Throws UnsupportedOrder when any
/// angular momentum exceeds J = 8.
double clebsch_gordan(const CouplingLabel& c);
double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M);

/// Gauss-Legendre nodes and weights on [a, b].
struct Quadrature {
  std::vector<double> x, w;
};
Quadrature gauss_legendre(int n, double a, double b);

}  // namespace pinrep::special
