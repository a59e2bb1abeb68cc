#include "pinrep/group.hpp"

#include <cmath>

namespace pinrep::groups {

Mat4 islash(const FourVector& p, const CliffordBasis& b) {
  return p.t * b.igamma[0] + p.x * b.igamma[1] + p.y * b.igamma[2] +
         p.z * b.igamma[3];
}

PinElement spin_element(const BoostRotationParams& params, const CliffordBasis& b) {
  Mat4 gen = Mat4::Zero();
  for (int j = 0; j < 3; ++j) {
    // ig5 g0 g^j = -(ig5)(ig0)(igj),  g0 g^j = -(ig0)(igj)
    gen += params.theta(j) * (-(b.igamma5 * b.igamma[0] * b.igamma[j + 1]));
    gen += params.boost(j) * (-(b.igamma[0] * b.igamma[j + 1]));
  }
  return PinElement{expm(gen)};
}

PinResiduals pin_residuals(const PinElement& s, const CliffordBasis& b) {
  PinResiduals r;
  r.det = std::abs(std::abs(s.s.determinant()) - 1.0);
  const Mat4 sinv = s.s.inverse();
  double worst = 0;
  for (int mu = 0; mu < 4; ++mu) {
    const Mat4 m = sinv * b.igamma[mu] * s.s;
    Mat4 rem = m;
    for (int nu = 0; nu < 4; ++nu) {
      const double coef = (b.igamma[nu].transpose() * m).trace() / 4.0;
      rem -= coef * b.igamma[nu];
    }
    worst = std::max(worst, rem.cwiseAbs().maxCoeff());
  }
  r.maj_span = worst;
  return r;
}

LorentzMatrix covering_map(const PinElement& s, const CliffordBasis& b) {
  const Mat4 sinv = s.s.inverse();
  Mat4 lam;
  double worst = 0;
  for (int mu = 0; mu < 4; ++mu) {
    const Mat4 m = sinv * b.igamma[mu] * s.s;
    Mat4 rem = m;
    for (int nu = 0; nu < 4; ++nu) {
      const double coef = (b.igamma[nu].transpose() * m).trace() / 4.0;
      lam(mu, nu) = coef;
      rem -= coef * b.igamma[nu];
    }
    worst = std::max(worst, rem.cwiseAbs().maxCoeff());
  }
  if (worst > 1e-8)
    throw Error(Errc::NotMajPreserving,
                "conjugation does not preserve the Majorana span");
  return LorentzMatrix{lam};
}

std::array<PinElement, 8> discrete_omega(const CliffordBasis& b) {
  const Mat4 one = Mat4::Identity();
  const Mat4 g0g5 = -(b.igamma[0] * b.igamma5);  // g0 g5 = -(ig0)(ig5)
  return {PinElement{one},          PinElement{-one},
          PinElement{b.igamma[0]},  PinElement{-b.igamma[0]},
          PinElement{g0g5},         PinElement{-g0g5},
          PinElement{b.igamma5},    PinElement{-b.igamma5}};
}

Mat4 boost_alpha_p(const FourVector& p, double mass, const CliffordBasis& b) {
  if (mass <= 0) throw Error(Errc::ZeroMass, "massive boost needs m > 0");
  if (!p.is_on_shell(mass, 1e-9))
    throw Error(Errc::NotOnShell, "boost_alpha_p requires an on-shell momentum");
  const double e = p.t;
  // pslash g0 = p^0 - p^k (igk)(ig0)
  Mat4 num = (e + mass) * Mat4::Identity();
  num -= p.x * (b.igamma[1] * b.igamma[0]);
  num -= p.y * (b.igamma[2] * b.igamma[0]);
  num -= p.z * (b.igamma[3] * b.igamma[0]);
  return num / (std::sqrt(e + mass) * std::sqrt(2.0 * mass));
}

Mat4 massless_alpha_p(const Vec3& p, const CliffordBasis& b) {
  const double e = p.norm();
  if (e <= 0) throw Error(Errc::MasslessZeroMomentum, "p = 0 excluded for m = 0");
  const double phi_pol = std::acos(std::clamp(p.z() / e, -1.0, 1.0));
  const double th_az = std::atan2(p.y(), p.x());
  const Mat4 rp = expm(Mat4(b.igamma[2] * b.igamma[1] * (th_az / 2.0))) *
                  expm(Mat4(b.igamma[1] * b.igamma[3] * (phi_pol / 2.0)));
  BoostRotationParams bz;
  bz.boost = Vec3(0, 0, -std::log(e) / 2.0);
  return rp * spin_element(bz, b).s;
}

double little_group_check(const PinElement& g, const FourVector& l,
                          const CliffordBasis& b) {
  const Mat4 ls = islash(l, b);
  return (g.s * ls - ls * g.s).cwiseAbs().maxCoeff();
}

PinElement se2_element(double a, double bb, double theta, const CliffordBasis& b) {
  const Mat4 trans =
      Mat4::Identity() -
      b.igamma5 * (a * b.igamma[1] + bb * b.igamma[2]) * (b.igamma[0] + b.igamma[3]);
  const Mat4 rot = expm(Mat4(-(b.igamma[0] * b.igamma[3] * b.igamma5) * theta));
  return PinElement{trans * rot};
}

SE2Params se2_extract(const PinElement& w, const CliffordBasis& b) {
  const LorentzMatrix lam = covering_map(w, b);
  // The x-y block of Lambda is a clean rotation by 2*theta.
  const double two_theta =
      std::atan2(lam.lambda(2, 1) - lam.lambda(1, 2),
                 lam.lambda(1, 1) + lam.lambda(2, 2));
  const Mat4 ba = -(b.igamma5 * b.igamma[1] * (b.igamma[0] + b.igamma[3]));
  const Mat4 bbm = -(b.igamma5 * b.igamma[2] * (b.igamma[0] + b.igamma[3]));
  SE2Params best{0, 0, 0, 1e300};
  for (double cand : {two_theta / 2.0, two_theta / 2.0 + 3.14159265358979323846}) {
    const Mat4 rot = expm(Mat4(-(b.igamma[0] * b.igamma[3] * b.igamma5) * cand));
    const Mat4 trans = w.s * rot.inverse();
    const Mat4 n = trans - Mat4::Identity();
    // least-squares coefficients on the two nilpotent directions
    Eigen::Matrix2d gram;
    gram << (ba.transpose() * ba).trace(), (ba.transpose() * bbm).trace(),
        (bbm.transpose() * ba).trace(), (bbm.transpose() * bbm).trace();
    const Eigen::Vector2d rhs((ba.transpose() * n).trace(),
                              (bbm.transpose() * n).trace());
    const Eigen::Vector2d coef = gram.ldlt().solve(rhs);
    const double na = coef(0), nb = coef(1);
    const Mat4 rebuild = (Mat4::Identity() + na * ba + nb * bbm) * rot;
    const double resid = (rebuild - w.s).cwiseAbs().maxCoeff();
    if (resid < best.rebuild_residual) best = SE2Params{na, nb, cand, resid};
  }
  return best;
}

}  // namespace pinrep::groups
