#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pinrep {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;
using Vec3 = Eigen::Vector3d;
using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

enum class Errc {
  NotCliffordSet,
  NoSolution,
  NotMajPreserving,
  ZeroMass,
  MasslessZeroMomentum,
  InvalidLabel,
  UnsupportedLabel,
  UnexpectedDimension,
  NoComplexStructure,
  DegenerateEigenbasis,
  UnsupportedOrder,
  InvalidOrder,
  NonPeriodicGrid,
  MassUnset,
  ResampleRequired,
  NotBargmannWigner,
  OffShell,
  HelicityViolation,
  NotOnShell,
  FormatError,
  UsageError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

const char* errc_name(Errc c);

/// Matrix exponential by scaling-and-squaring with a truncated Taylor series.
/// Accurate to ~1e-15 relative for the small dense matrices used here.
template <typename Derived>
typename Derived::PlainObject expm(const Eigen::MatrixBase<Derived>& a_in) {
  using Mat = typename Derived::PlainObject;
  Mat a = a_in;
  const Eigen::Index n = a.rows();
  double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (nrm > 0.25) {
    a *= 0.5;
    nrm *= 0.5;
    ++squarings;
  }
  Mat x = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = term * a / double(k);
    x += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) x = x * x;
  return x;
}

/// Orthonormal basis of the kernel of `m`, columns of the result.
/// Singular values below `rel_tol`*sigma_max count as zero.
MatX nullspace(const MatX& m, double rel_tol = 1e-10);

/// Number of singular values of `m` below rel_tol*sigma_max.
int kernel_dimension(const MatX& m, double rel_tol);

/// Deterministic RNG with platform-independent uniform/normal generation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() { return std::ldexp(double(next() >> 11), -53); }
  double normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  Vec3 normal3() { return Vec3(normal(), normal(), normal()); }

 private:
  std::uint64_t s_;
};

}  // namespace pinrep
