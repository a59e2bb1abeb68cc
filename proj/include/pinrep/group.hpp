#pragma once

#include <array>

#include "pinrep/clifford.hpp"
#include "pinrep/linalg.hpp"

namespace pinrep::groups {

using clifford::CliffordBasis;

struct BoostRotationParams {
  Vec3 theta = Vec3::Zero();  // rotation parameters (half the vector angle)
  Vec3 boost = Vec3::Zero();  // boost parameters (half the vector rapidity)
};

struct PinElement {
  Mat4 s;
};

struct LorentzMatrix {
  Mat4 lambda;
  double metric_residual() const {
    const Mat4 eta = clifford::minkowski_metric();
    return (lambda.transpose() * eta * lambda - eta).cwiseAbs().maxCoeff();
  }
};

struct FourVector {
  double t = 0, x = 0, y = 0, z = 0;

  Vec3 spatial() const { return Vec3(x, y, z); }
  Vec4 components() const { return Vec4(t, x, y, z); }
  static FourVector on_shell(double mass, const Vec3& p) {
    return FourVector{std::sqrt(p.squaredNorm() + mass * mass), p.x(), p.y(), p.z()};
  }
  bool is_on_shell(double mass, double tol = 1e-12) const {
    return std::abs(t - std::sqrt(spatial().squaredNorm() + mass * mass)) < tol;
  }
};

/// p_mu-contraction of the basis: islash(p) = p^0 ig0 + p^k igk.
Mat4 islash(const FourVector& p, const CliffordBasis& basis);

/// exp(theta^j ig5 g0 g^j + b^j g0 g^j) as a real matrix exponential. The
/// covering map doubles the parameters: a pure boost b along z gives
/// Lambda^0_0 = cosh(2b).
PinElement spin_element(const BoostRotationParams& params, const CliffordBasis& basis);

/// Residuals of the Pin(3,1) membership conditions for s.
struct PinResiduals {
  double det;       // | |det s| - 1 |
  double maj_span;  // projection residual of s^-1 (ig mu) s onto span{ig nu}
};
PinResiduals pin_residuals(const PinElement& s, const CliffordBasis& basis);

/// Two-to-one covering homomorphism: Lambda(S)^mu_nu ig^nu = S^-1 ig^mu S,
/// expanded in the trace inner product <A,B> = tr(A^T B)/4.
/// Throws NotMajPreserving if the expansion residual exceeds 1e-8.
LorentzMatrix covering_map(const PinElement& s, const CliffordBasis& basis);

/// The discrete Pin subgroup {±1, ±ig0, ±g0 g5, ±ig5}.
std::array<PinElement, 8> discrete_omega(const CliffordBasis& basis);

/// Massive standard boost alpha_p = (pslash g0 + m)/(sqrt(E+m) sqrt(2m)).
/// Throws ZeroMass for m <= 0; requires p on shell.
Mat4 boost_alpha_p(const FourVector& p, double mass, const CliffordBasis& basis);

/// Massless standard boost alpha_p = B_v R_p mapping the lightlike reference
/// l = (1,0,0,1) onto p. Throws MasslessZeroMomentum at p = 0.
Mat4 massless_alpha_p(const Vec3& p, const CliffordBasis& basis);

/// ||g islash(l) - islash(l) g||_inf; membership in the little group G_l
/// means this is below tolerance.
double little_group_check(const PinElement& g, const FourVector& l,
                          const CliffordBasis& basis);

/// SE(2) little-group element (1 + ig5 (g1 a + g2 b)(g0 + g3)) exp(ig0g3g5 th).
PinElement se2_element(double a, double b, double theta, const CliffordBasis& basis);

struct SE2Params {
  double a, b, theta;
  double rebuild_residual;
};

/// Recovers (a, b, theta) of an SE(2) element; theta is resolved within the
/// double cover by minimizing the rebuild residual.
SE2Params se2_extract(const PinElement& w, const CliffordBasis& basis);

}  // namespace pinrep::groups
