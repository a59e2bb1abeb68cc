#pragma once

#include <vector>

#include "pinrep/fields.hpp"
#include "pinrep/group.hpp"
#include "pinrep/linalg.hpp"

namespace pinrep::prop {

using clifford::CliffordBasis;
using groups::FourVector;

struct QuadratureSpec {
  double p_max = 16.0;
  int n_radial = 512;
  double regulator_width = 2.0;  // sigma of exp(-p^2/(2 sigma^2))
  bool valid() const { return p_max > 0 && n_radial >= 64 && regulator_width > 0; }
};

struct PropagatorSample {
  FourVector x;
  Mat4 value;
  QuadratureSpec quadrature;
  double mass;
};

/// Causal spin-1/2 propagator by the analytically angular-reduced radial
/// quadrature of (pslash g0 + m)/sqrt(E+m) e^{-ig0 p.x} (same)/sqrt(E+m)
/// over d3p/((2pi)^3 2Ep), Gaussian-regulated.
PropagatorSample delta(const FourVector& x, double mass, const QuadratureSpec& quad,
                       const CliffordBasis& basis);

/// Default three-rung ladder: sigma in {2, 4, 8}, p_max = 8 sigma.
std::vector<QuadratureSpec> default_ladder();

struct ScanRow {
  double radius;
  int rung;
  double normalized_norm;  // ||Delta((0, r e3))||inf / ||Delta(0)||inf at rung 1
};

/// Spacelike scan at t = 0: the normalized norm must collapse with the rung
/// while timelike points converge to a nonzero value.
std::vector<ScanRow> causality_scan(const std::vector<double>& radii, double mass,
                                    const std::vector<QuadratureSpec>& ladder,
                                    const CliffordBasis& basis);

/// Relative error between evolve(field, t) and the spatial convolution of the
/// field with Delta at time t on a coarse probe set.
double reproduce_check(const fields::SpinorFieldGrid& f, double t, double mass,
                       const QuadratureSpec& quad, const CliffordBasis& basis,
                       int probe_stride = 4);

}  // namespace pinrep::prop
