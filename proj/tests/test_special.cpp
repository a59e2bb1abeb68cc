#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gsl/gsl_sf_bessel.h>
#include <gsl/gsl_sf_legendre.h>

#include <map>

#include "pinrep/special.hpp"

using namespace pinrep;
using namespace pinrep::special;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Brute-force Clebsch-Gordan oracle: diagonalize the total angular momentum
// on the product of two standard spin multiplets and fix phases by the
// Condon-Shortley convention (highest-weight coefficient positive, lowering
// operator normalization).
class CgOracle {
 public:
  CgOracle(int two_j1, int two_j2) : tj1_(two_j1), tj2_(two_j2) {
    const int d1 = two_j1 + 1, d2 = two_j2 + 1;
    dim_ = d1 * d2;
    // basis index = a*d2 + b with m1 = j1 - a, m2 = j2 - b
    auto jz_of = [](int tj, int idx) { return tj - 2 * idx; };  // doubled m
    // J- on the product
    MatX jminus = MatX::Zero(dim_, dim_);
    MatX jz = MatX::Zero(dim_, dim_);
    for (int a = 0; a < d1; ++a)
      for (int b = 0; b < d2; ++b) {
        const int i = a * d2 + b;
        jz(i, i) = 0.5 * (jz_of(two_j1, a) + jz_of(two_j2, b));
        // J- |j m> = sqrt(j(j+1) - m(m-1)) |j m-1>
        const double j1 = two_j1 / 2.0, m1 = jz_of(two_j1, a) / 2.0;
        const double j2 = two_j2 / 2.0, m2 = jz_of(two_j2, b) / 2.0;
        if (a + 1 < d1)
          jminus((a + 1) * d2 + b, i) += std::sqrt(j1 * (j1 + 1) - m1 * (m1 - 1));
        if (b + 1 < d2)
          jminus(a * d2 + (b + 1), i) += std::sqrt(j2 * (j2 + 1) - m2 * (m2 - 1));
      }
    // build multiplets top-down: for each J from j1+j2 downward, the highest
    // weight vector is the unit vector in the M = J subspace orthogonal to
    // the already-built multiplets, with positive m1 = j1 coefficient.
    for (int tJ = two_j1 + two_j2; tJ >= std::abs(two_j1 - two_j2); tJ -= 2) {
      // M = J subspace basis
      std::vector<int> idxs;
      for (int a = 0; a < d1; ++a)
        for (int b = 0; b < d2; ++b)
          if (jz_of(two_j1, a) + jz_of(two_j2, b) == tJ) idxs.push_back(a * d2 + b);
      MatX sub = MatX::Zero(dim_, int(idxs.size()));
      for (int c = 0; c < int(idxs.size()); ++c) sub(idxs[c], c) = 1.0;
      // project out earlier highest-weight descendants at this M
      VecX v;
      if (idxs.size() == 1) {
        v = sub.col(0);
      } else {
        MatX prev(dim_, 0);
        for (const auto& [key, vec] : states_) {
          if (key.second == tJ) {
            prev.conservativeResize(dim_, prev.cols() + 1);
            prev.col(prev.cols() - 1) = vec;
          }
        }
        // orthonormal complement within the subspace
        MatX proj = sub.transpose() * prev;  // coords of prev inside sub
        MatX comp = MatX::Identity(int(idxs.size()), int(idxs.size()));
        if (prev.cols() > 0) comp -= proj * proj.transpose();
        Eigen::SelfAdjointEigenSolver<MatX> es(comp);
        v = sub * es.eigenvectors().col(int(idxs.size()) - 1);
      }
      // Condon-Shortley: coefficient of the maximal m1 basis vector positive
      for (int a = 0; a < d1; ++a) {
        bool fixed = false;
        for (int b = 0; b < d2; ++b)
          if (std::abs(v(a * d2 + b)) > 1e-9) {
            if (v(a * d2 + b) < 0) v = -v;
            fixed = true;
            break;
          }
        if (fixed) break;
      }
      states_[{tJ, tJ}] = v;
      // lower through the multiplet
      VecX cur = v;
      for (int tM = tJ - 2; tM >= -tJ; tM -= 2) {
        const double J = tJ / 2.0, M = (tM + 2) / 2.0;
        cur = VecX(jminus * cur / std::sqrt(J * (J + 1) - M * (M - 1)));
        states_[{tJ, tM}] = cur;
      }
    }
  }

  double coeff(int two_m1, int two_m2, int two_J, int two_M) const {
    const auto it = states_.find({two_J, two_M});
    if (it == states_.end()) return 0.0;
    const int a = (tj1_ - two_m1) / 2, b = (tj2_ - two_m2) / 2;
    if (a < 0 || a > tj1_ || b < 0 || b > tj2_) return 0.0;
    return it->second(a * (tj2_ + 1) + b);
  }

 private:
  int tj1_, tj2_, dim_;
  std::map<std::pair<int, int>, VecX> states_;
};

}  // namespace

TEST_CASE("spherical bessel closed forms") {
  CHECK(spherical_bessel(0, 0.0) == doctest::Approx(1.0));
  for (double r : {0.3, 1.7, 9.2}) {
    CHECK(spherical_bessel(0, r) == doctest::Approx(std::sin(r) / r).epsilon(1e-14));
    CHECK(spherical_bessel(1, r) ==
          doctest::Approx(std::sin(r) / (r * r) - std::cos(r) / r).epsilon(1e-13));
  }
  // small-argument suppression r^l / (2l+1)!!
  const double j5 = spherical_bessel(5, 0.01);
  CHECK(std::abs(j5) < 1e-10);
  CHECK(j5 == doctest::Approx(std::pow(0.01, 5) / 10395.0).epsilon(1e-3));
}

TEST_CASE("spherical bessel against the gsl oracle") {
  for (int l : {0, 1, 2, 5, 8, 13, 20})
    for (double x : {0.05, 0.7, 3.0, 11.5, 40.0}) {
      const double ref = gsl_sf_bessel_jl(l, x);
      CHECK(spherical_bessel(l, x) == doctest::Approx(ref).epsilon(1e-11));
    }
  CHECK_THROWS_AS((void)spherical_bessel(21, 1.0), Error);
}

TEST_CASE("bessel recurrence consistency") {
  for (int l : {1, 4, 9})
    for (double x : {0.4, 2.2, 17.0}) {
      const double lhs = (2 * l + 1) / x * spherical_bessel(l, x);
      const double rhs = spherical_bessel(l - 1, x) + spherical_bessel(l + 1, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("associated legendre values and recurrence") {
  for (double xi : {-0.8, -0.1, 0.33, 0.9}) {
    CHECK(assoc_legendre(0, 0, xi) == doctest::Approx(1.0));
    CHECK(assoc_legendre(1, 0, xi) == doctest::Approx(xi));
  }
  // P_1^1(0) = -1 (Condon-Shortley)
  CHECK(assoc_legendre(1, 1, 0.0) == doctest::Approx(-1.0));
  // (l - mu + 1) P_{l+1}^mu = (2l+1) xi P_l^mu - (l + mu) P_{l-1}^mu
  for (int l : {1, 3, 6})
    for (int mu = 0; mu <= l - 1; ++mu)
      for (double xi : {-0.7, 0.2, 0.65}) {
        const double lhs = (l - mu + 1) * assoc_legendre(l + 1, mu, xi);
        const double rhs =
            (2 * l + 1) * xi * assoc_legendre(l, mu, xi) -
            (l + mu) * assoc_legendre(l - 1, mu, xi);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
      }
  // against gsl (which uses the same Condon-Shortley convention)
  for (int l : {2, 5, 8})
    for (int mu = 0; mu <= l; ++mu)
      for (double xi : {-0.5, 0.1, 0.8}) {
        const double ref = gsl_sf_legendre_Plm(l, mu, xi);
        CHECK(assoc_legendre(l, mu, xi) == doctest::Approx(ref).epsilon(1e-11));
      }
  CHECK_THROWS_AS((void)assoc_legendre(1, 2, 0.0), Error);
}

TEST_CASE("spherical harmonics") {
  // Y_00 = 1/sqrt(4pi)
  const auto y00 = spherical_harmonic(0, 0, 0.7, 1.3);
  CHECK(y00.real() == doctest::Approx(1.0 / std::sqrt(4 * kPi)).epsilon(1e-14));
  CHECK(y00.imag() == 0.0);
  // Y_10 = sqrt(3/4pi) cos(theta)
  for (double th : {0.3, 1.2, 2.8}) {
    const auto y10 = spherical_harmonic(1, 0, th, 0.4);
    CHECK(y10.real() ==
          doctest::Approx(std::sqrt(3.0 / (4 * kPi)) * std::cos(th)).epsilon(1e-13));
    CHECK(y10.imag() == 0.0);
  }
  // conjugation symmetry Y_{l,-mu} = (-1)^mu conj(Y_{l,mu})
  for (int l : {1, 3, 5})
    for (int mu = 1; mu <= l; ++mu) {
      const auto yp = spherical_harmonic(l, mu, 0.9, -0.7);
      const auto ym = spherical_harmonic(l, -mu, 0.9, -0.7);
      const auto expect = (mu % 2 ? -1.0 : 1.0) * std::conj(yp);
      CHECK(std::abs(ym - expect) < 1e-12);
    }
}

TEST_CASE("spherical harmonic quadrature orthonormality") {
  // Gauss-Legendre in cos(theta) x trapezoid in phi
  const int nxi = 12, nphi = 24;
  const Quadrature q = gauss_legendre(nxi, -1.0, 1.0);
  const double wphi = 2 * kPi / nphi;
  for (int l = 0; l <= 4; ++l)
    for (int lp = 0; lp <= 4; ++lp)
      for (int mu = -std::min(l, lp); mu <= std::min(l, lp); ++mu) {
        std::complex<double> acc = 0;
        for (int a = 0; a < nxi; ++a)
          for (int f = 0; f < nphi; ++f) {
            const double th = std::acos(q.x[a]);
            const double phi = 2 * kPi * f / nphi;
            acc += q.w[a] * wphi * spherical_harmonic(l, mu, th, phi) *
                   std::conj(spherical_harmonic(lp, mu, th, phi));
          }
        const double expect = l == lp ? 1.0 : 0.0;
        CHECK(std::abs(acc - expect) < 1e-10);
      }
}

TEST_CASE("clebsch-gordan reference values") {
  // trivial coupling with l = 0
  CHECK(clebsch_gordan({0, 0, 1, 1, 1, 1}) == doctest::Approx(1.0));
  // <1 0 1/2 1/2 | 3/2 1/2> = sqrt(2/3)
  CHECK(clebsch_gordan({2, 0, 1, 1, 3, 1}) ==
        doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  // <1 0 1/2 1/2 | 1/2 1/2> = -sqrt(1/3)
  CHECK(clebsch_gordan({2, 0, 1, 1, 1, 1}) ==
        doctest::Approx(-std::sqrt(1.0 / 3.0)).epsilon(1e-15));
  // invalid couplings return zero
  CHECK(clebsch_gordan({2, 0, 1, 1, 3, 3}) == 0.0);
  CHECK(clebsch_gordan({2, 4, 1, 1, 3, 1}) == 0.0);
  CHECK_THROWS_AS((void)clebsch_gordan({40, 0, 0, 0, 40, 0}), Error);
  CHECK_THROWS_AS((void)clebsch_gordan({18, 0, 0, 0, 18, 0}), Error);
}

TEST_CASE("clebsch-gordan matches the diagonalization oracle for J <= 3") {
  for (int tj1 = 0; tj1 <= 6; ++tj1)
    for (int tj2 = 0; tj2 <= tj1; ++tj2) {
      if (tj1 + tj2 > 6) continue;  // all total J <= 3
      const CgOracle oracle(tj1, tj2);
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
        for (int tM = -tJ; tM <= tJ; tM += 2)
          for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
            const int tm2 = tM - tm1;
            if (std::abs(tm2) > tj2) continue;
            const double ref = oracle.coeff(tm1, tm2, tJ, tM);
            const double val = clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM);
            CHECK(std::abs(val - ref) < 1e-12);
          }
    }
}

TEST_CASE("clebsch-gordan orthogonality both ways") {
  const int tj1 = 4, tj2 = 3;  // j1 = 2, j2 = 3/2
  // rows: sum_{J,M} <m1 m2|J M>^2 = 1
  for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2)
    for (int tm2 = -tj2; tm2 <= tj2; tm2 += 2) {
      double acc = 0;
      for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2) {
        const double c = clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tm1 + tm2);
        acc += c * c;
      }
      CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
    }
  // columns: sum_{m1} <m1, M-m1|J M><m1, M-m1|J' M> = delta_JJ'
  for (int tJ = std::abs(tj1 - tj2); tJ <= tj1 + tj2; tJ += 2)
    for (int tJp = std::abs(tj1 - tj2); tJp <= tj1 + tj2; tJp += 2) {
      const int tM = 1;
      double acc = 0;
      for (int tm1 = -tj1; tm1 <= tj1; tm1 += 2) {
        const int tm2 = tM - tm1;
        if (std::abs(tm2) > tj2) continue;
        acc += clebsch_gordan(tj1, tm1, tj2, tm2, tJ, tM) *
               clebsch_gordan(tj1, tm1, tj2, tm2, tJp, tM);
      }
      if (std::abs(tM) <= tJ && std::abs(tM) <= tJp)
        CHECK(acc == doctest::Approx(tJ == tJp ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const Quadrature q = gauss_legendre(8, -1.0, 3.0);
  // degree 15 polynomial x^15 over [-1, 3]
  double acc = 0;
  for (int i = 0; i < 8; ++i) acc += q.w[i] * std::pow(q.x[i], 15);
  const double exact = (std::pow(3.0, 16) - std::pow(-1.0, 16)) / 16.0;
  CHECK(acc == doctest::Approx(exact).epsilon(1e-12));
  // weights positive, nodes increasing
  for (int i = 0; i < 8; ++i) CHECK(q.w[i] > 0);
  for (int i = 1; i < 8; ++i) CHECK(q.x[i] > q.x[i - 1]);
}

TEST_CASE("bessel closure near-identity on a band-limited grid") {
  // discretized Hankel matrix: sum_a wp (2 p_a^2 / pi) j_l(p_a r) j_l(p_a r')
  // approximates delta(r - r')/r^2; check off-diagonal leakage through the
  // reconstruction of a smooth radial profile.
  const int n = 64;
  const Quadrature qr = gauss_legendre(n, 0.0, 5.0);
  const Quadrature qp = gauss_legendre(n, 0.0, 12.566370614359172);
  for (int l : {0, 2}) {
    std::vector<double> f(n), rec(n, 0.0);
    for (int b = 0; b < n; ++b)
      f[b] = std::exp(-(qr.x[b] - 1.1) * (qr.x[b] - 1.1) / (2 * 0.45 * 0.45)) *
             std::pow(qr.x[b] / (1 + qr.x[b]), l);
    std::vector<double> fp(n, 0.0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        fp[a] += qr.w[b] * qr.x[b] * qr.x[b] * (2 * qp.x[a] / std::sqrt(2 * kPi)) *
                 spherical_bessel(l, qp.x[a] * qr.x[b]) * f[b];
    for (int b = 0; b < n; ++b)
      for (int a = 0; a < n; ++a)
        rec[b] += qp.w[a] * (2 * qp.x[a] / std::sqrt(2 * kPi)) *
                  spherical_bessel(l, qp.x[a] * qr.x[b]) * fp[a];
    double num = 0, den = 0;
    for (int b = 0; b < n; ++b) {
      const double w = qr.w[b] * qr.x[b] * qr.x[b];
      num += w * (rec[b] - f[b]) * (rec[b] - f[b]);
      den += w * f[b] * f[b];
    }
    CHECK(std::sqrt(num / den) < 1e-3);
  }
}
