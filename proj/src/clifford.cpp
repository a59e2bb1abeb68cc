#include "pinrep/clifford.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace pinrep::clifford {

Mat4 minkowski_metric() {
  Mat4 eta = Mat4::Zero();
  eta.diagonal() << 1, -1, -1, -1;
  return eta;
}

CliffordBasis build_majorana_basis() {
  CliffordBasis b;
  b.igamma[0] << 0, 0, 1, 0,
                 0, 0, 0, 1,
                -1, 0, 0, 0,
                 0, -1, 0, 0;
  b.igamma[1] << 1, 0, 0, 0,
                 0, -1, 0, 0,
                 0, 0, -1, 0,
                 0, 0, 0, 1;
  b.igamma[2] << 0, 0, 1, 0,
                 0, 0, 0, 1,
                 1, 0, 0, 0,
                 0, 1, 0, 0;
  b.igamma[3] << 0, 1, 0, 0,
                 1, 0, 0, 0,
                 0, 0, 0, -1,
                 0, 0, -1, 0;
  b.igamma5 = b.igamma[0] * b.igamma[1] * b.igamma[2] * b.igamma[3];
  return b;
}

double anticommutator_residual(const std::array<Mat4, 4>& g) {
  const Mat4 eta = minkowski_metric();
  double worst = 0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = mu; nu < 4; ++nu) {
      const Mat4 r =
          g[mu] * g[nu] + g[nu] * g[mu] + 2.0 * eta(mu, nu) * Mat4::Identity();
      worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
  return worst;
}

double anticommutator_residual(const CliffordBasis& basis) {
  return anticommutator_residual(basis.igamma);
}

double orthogonality_residual(const CliffordBasis& basis) {
  double worst = 0;
  auto check = [&](const Mat4& m) {
    worst = std::max(
        worst, (m.transpose() * m - Mat4::Identity()).cwiseAbs().maxCoeff());
  };
  for (const Mat4& m : basis.igamma) check(m);
  check(basis.igamma5);
  return worst;
}

double gamma5_product_residual(const CliffordBasis& b) {
  const Mat4 prod = b.igamma[0] * b.igamma[1] * b.igamma[2] * b.igamma[3];
  return (b.igamma5 - prod).cwiseAbs().maxCoeff();
}

double intertwining_residual(const std::array<Mat4, 4>& alpha,
                             const std::array<Mat4, 4>& beta, const Mat4& s) {
  double worst = 0;
  for (int mu = 0; mu < 4; ++mu)
    worst = std::max(worst, (beta[mu] * s - s * alpha[mu]).cwiseAbs().maxCoeff());
  return worst;
}

Mat4 solve_real_similarity(const std::array<Mat4, 4>& alpha,
                           const std::array<Mat4, 4>& beta,
                           const SimilarityOptions& opt) {
  if (anticommutator_residual(alpha) > opt.clifford_tol ||
      anticommutator_residual(beta) > opt.clifford_tol)
    throw Error(Errc::NotCliffordSet,
                "input matrices do not satisfy the Clifford relations");

  // Each row of the stacked system is one entry of beta^mu X - X alpha^mu,
  // with X vectorized column-major.
  MatX sys(64, 16);
  sys.setZero();
  for (int mu = 0; mu < 4; ++mu)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const int row = 16 * mu + 4 * c + r;
        for (int k = 0; k < 4; ++k) {
          sys(row, 4 * c + k) += beta[mu](r, k);   // (B X)(r,c)
          sys(row, 4 * k + r) -= alpha[mu](k, c);  // (X A)(r,c)
        }
      }

  Eigen::JacobiSVD<MatX> svd(sys, Eigen::ComputeFullV);
  const VecX& sv = svd.singularValues();
  int kdim = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= sv(0) * opt.kernel_tol) ++kdim;
  if (kdim != 1)
    throw Error(Errc::NoSolution, "intertwining kernel is not one-dimensional");

  const VecX v = svd.matrixV().col(15);
  Mat4 s;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) s(i, j) = v(4 * j + i);

  const double det = std::abs(s.determinant());
  if (det < 1e-14) throw Error(Errc::NoSolution, "singular intertwiner");
  s /= std::pow(det, 0.25);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (std::abs(s(i, j)) > opt.sign_entry_tol) {
        if (s(i, j) < 0) s = -s;
        return s;
      }
  return s;
}

}  // namespace pinrep::clifford
