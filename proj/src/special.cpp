#include "pinrep/special.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

namespace pinrep::special {

namespace {
constexpr double kPi = 3.14159265358979323846;
using BigInt = boost::multiprecision::cpp_int;

BigInt big_factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

struct BigRational {
  BigInt num, den;  // den > 0
  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    BigInt g = boost::multiprecision::gcd(num < 0 ? BigInt(-num) : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  BigRational& operator+=(const BigRational& o) {
    num = num * o.den + o.num * den;
    den *= o.den;
    reduce();
    return *this;
  }
  double to_double() const {
    return num.convert_to<double>() / den.convert_to<double>();
  }
};

}  // namespace

double spherical_bessel(int l, double x) {
  if (l < 0 || l > 20) throw Error(Errc::UnsupportedOrder, "l must be in [0, 20]");
  if (x < 0) throw Error(Errc::InvalidOrder, "argument must be nonnegative");
  return spherical_bessel_all(l, x)[l];
}

std::vector<double> spherical_bessel_all(int lmax, double x) {
  if (lmax < 0 || lmax > 20)
    throw Error(Errc::UnsupportedOrder, "l must be in [0, 20]");
  std::vector<double> j(lmax + 1, 0.0);
  if (x < 1e-12) {
    j[0] = 1.0 - x * x / 6.0;
    if (lmax >= 1) j[1] = x / 3.0;
    return j;  // higher orders vanish like x^l
  }
  j[0] = std::sin(x) / x;
  if (lmax == 0) return j;
  if (x > double(lmax)) {
    // upward recurrence is stable for x > l
    j[1] = std::sin(x) / (x * x) - std::cos(x) / x;
    for (int n = 2; n <= lmax; ++n)
      j[n] = (2 * n - 1) / x * j[n - 1] - j[n - 2];
    return j;
  }
  // Miller's downward recurrence, normalized by j_0
  const int start = lmax + int(std::ceil(std::sqrt(40.0 * lmax))) + 20;
  double jp = 0.0, jc = 1e-300;
  std::vector<double> tmp(lmax + 1, 0.0);
  for (int n = start; n >= 1; --n) {
    const double jm = (2 * n + 1) / x * jc - jp;
    jp = jc;
    jc = jm;
    if (n - 1 <= lmax) tmp[n - 1] = jc;
    if (std::abs(jc) > 1e250) {
      jc *= 1e-250;
      jp *= 1e-250;
      for (double& v : tmp) v *= 1e-250;
    }
  }
  const double scale = j[0] / tmp[0];
  for (int n = 1; n <= lmax; ++n) j[n] = tmp[n] * scale;
  return j;
}

double assoc_legendre(int l, int mu, double xi) {
  if (l < 0 || std::abs(mu) > l)
    throw Error(Errc::InvalidOrder, "require |mu| <= l, l >= 0");
  const int m = std::abs(mu);
  // P_m^m, then upward in l
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt(std::max(0.0, (1.0 - xi) * (1.0 + xi)));
    double fact = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= -fact * somx2;
      fact += 2.0;
    }
  }
  double plm;
  if (l == m) {
    plm = pmm;
  } else {
    double pmmp1 = xi * (2 * m + 1) * pmm;
    if (l == m + 1) {
      plm = pmmp1;
    } else {
      plm = 0;
      for (int ll = m + 2; ll <= l; ++ll) {
        plm = (xi * (2 * ll - 1) * pmmp1 - (ll + m - 1) * pmm) / (ll - m);
        pmm = pmmp1;
        pmmp1 = plm;
      }
    }
  }
  if (mu >= 0) return plm;
  double ratio = 1.0;  // (l-m)!/(l+m)!
  for (int k = l - m + 1; k <= l + m; ++k) ratio /= double(k);
  return (m % 2 ? -1.0 : 1.0) * ratio * plm;
}

std::complex<double> spherical_harmonic(int l, int mu, double theta, double phi) {
  if (l < 0 || std::abs(mu) > l)
    throw Error(Errc::InvalidOrder, "require |mu| <= l, l >= 0");
  const int m = std::abs(mu);
  double lograt = 0.0;  // log((l-m)!/(l+m)!)
  for (int k = l - m + 1; k <= l + m; ++k) lograt -= std::log(double(k));
  const double norm = std::sqrt((2 * l + 1) / (4.0 * kPi) * std::exp(lograt));
  const double p = assoc_legendre(l, m, std::cos(theta));
  std::complex<double> y =
      norm * p * std::complex<double>(std::cos(m * phi), std::sin(m * phi));
  if (mu >= 0) return y;
  return (m % 2 ? -1.0 : 1.0) * std::conj(y);
}

double clebsch_gordan(int two_j1, int two_m1, int two_j2, int two_m2,
                      int two_J, int two_M) {
  // exact-rational range: covers l <= 8 coupled to spin 1/2 (J <= 17/2)
  for (int two_j : {two_j1, two_j2, two_J})
    if (two_j > 17) throw Error(Errc::UnsupportedOrder, "J <= 17/2 supported");
  // selection rules: all zero-coefficient cases return 0
  if (two_j1 < 0 || two_j2 < 0 || two_J < 0) return 0.0;
  if (two_M != two_m1 + two_m2) return 0.0;
  if (std::abs(two_m1) > two_j1 || std::abs(two_m2) > two_j2 ||
      std::abs(two_M) > two_J)
    return 0.0;
  if (two_J < std::abs(two_j1 - two_j2) || two_J > two_j1 + two_j2) return 0.0;
  // parities: j - m integer per jm-pair, triangle sum integer
  if ((two_j1 - two_m1) % 2 || (two_j2 - two_m2) % 2 || (two_J - two_M) % 2)
    return 0.0;
  if ((two_j1 + two_j2 - two_J) % 2) return 0.0;

  const int j1pj2mJ = (two_j1 + two_j2 - two_J) / 2;
  const int j1mj2pJ = (two_j1 - two_j2 + two_J) / 2;
  const int mj1pj2pJ = (-two_j1 + two_j2 + two_J) / 2;
  const int j1pj2pJp1 = (two_j1 + two_j2 + two_J) / 2 + 1;
  const int j1pm1 = (two_j1 + two_m1) / 2;
  const int j1mm1 = (two_j1 - two_m1) / 2;
  const int j2pm2 = (two_j2 + two_m2) / 2;
  const int j2mm2 = (two_j2 - two_m2) / 2;
  const int Jpm = (two_J + two_M) / 2;
  const int Jmm = (two_J - two_M) / 2;

  // prefactor^2 = (2J+1) * triangle * j/m factorials / (j1+j2+J+1)!
  BigRational pref2{BigInt(two_J + 1) * big_factorial(j1pj2mJ) *
                        big_factorial(j1mj2pJ) * big_factorial(mj1pj2pJ) *
                        big_factorial(j1pm1) * big_factorial(j1mm1) *
                        big_factorial(j2pm2) * big_factorial(j2mm2) *
                        big_factorial(Jpm) * big_factorial(Jmm),
                    big_factorial(j1pj2pJp1)};
  pref2.reduce();

  const int kmin = std::max({0, (two_j2 - two_J - two_m1) / 2,
                             (two_j1 - two_J + two_m2) / 2});
  const int kmax = std::min({j1pj2mJ, j1mm1, j2pm2});
  BigRational sum{BigInt(0), BigInt(1)};
  for (int k = kmin; k <= kmax; ++k) {
    BigInt den = big_factorial(k) * big_factorial(j1pj2mJ - k) *
                 big_factorial(j1mm1 - k) * big_factorial(j2pm2 - k) *
                 big_factorial((two_J - two_j2 + two_m1) / 2 + k) *
                 big_factorial((two_J - two_j1 - two_m2) / 2 + k);
    BigRational term{BigInt(k % 2 ? -1 : 1), den};
    sum += term;
  }
  if (sum.num == 0) return 0.0;
  const double value = sum.to_double() * std::sqrt(pref2.to_double());
  return value;
}

double clebsch_gordan(const CouplingLabel& c) {
  return clebsch_gordan(c.two_l, c.two_mu, c.two_j, c.two_n, c.two_J, c.two_nu);
}

Quadrature gauss_legendre(int n, double a, double b) {
  Quadrature q;
  q.x.resize(n);
  q.w.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev estimate
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2 * j + 1) * z * p1 - j * p2) / (j + 1);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    const double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    q.x[i] = xm - xl * z;
    q.x[n - 1 - i] = xm + xl * z;
    q.w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    q.w[n - 1 - i] = q.w[i];
  }
  return q;
}

}  // namespace pinrep::special
