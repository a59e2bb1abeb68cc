#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pinrep/group.hpp"
#include "pinrep/linalg.hpp"

namespace pinrep::reps {

using clifford::CliffordBasis;
using groups::BoostRotationParams;

enum class Subgroup { Full, Rotations };

/// A finite-dimensional real representation given by a generator sampler.
struct RepSpec {
  int dim = 0;
  std::function<MatX(const BoostRotationParams&)> rho;
  std::optional<std::pair<int, int>> label;      // doubled (2m, 2n)
  std::vector<MatX> algebra;                     // Lie-algebra images, if known
  std::optional<MatX> complex_structure;         // J with J^2 = -1, if designated
};

struct CommutantClass {
  enum Kind { RealType, ComplexType, QuaternionType } kind;
  int dimension;  // 1, 2 or 4
  const char* name() const {
    switch (kind) {
      case RealType: return "RealType";
      case ComplexType: return "ComplexType";
      case QuaternionType: return "QuaternionType";
    }
    return "?";
  }
};

struct TensorProjector {
  MatX matrix;
  double idempotency_residual() const {
    return (matrix * matrix - matrix).cwiseAbs().maxCoeff();
  }
  double symmetry_residual() const {
    return (matrix.transpose() - matrix).cwiseAbs().maxCoeff();
  }
};

/// Majorana spinors under the full group or the rotation subgroup.
RepSpec make_pinor_rep(const CliffordBasis& basis, Subgroup subgroup);

/// span{1, g0 g^j} with action A -> S A S^T (the vector representation).
RepSpec make_w_half_half_span_rep(const CliffordBasis& basis);

/// Realified SU(2) Pauli-spinor representation (4 real dimensions).
RepSpec make_pauli_su2_realified();

/// Doubled-dimension complexification C (x) W with its block imaginary unit.
RepSpec complexify(const RepSpec& rep);

/// Scalar restriction of a complex structure J: validates J^2 = -1 and
/// commutation with sampled generators, then records J on the result.
/// Throws NoComplexStructure on failure.
RepSpec realify(const RepSpec& rep, const MatX& j, std::uint64_t check_seed = 17);

struct CommutantOptions {
  int samples = 32;
  std::uint64_t seed = 2024;
  double kernel_tol = 1e-8;
  double param_scale = 0.8;
  bool stability_check = true;  // doubling samples must not change the answer
};

/// Numerical commutant of the sampled representation: kernel dimension of the
/// stacked X rho - rho X system with classification 1 -> R, 2 -> C, 4 -> H.
/// Throws UnexpectedDimension otherwise (or when unstable under doubling).
CommutantClass commutant(const RepSpec& rep, const CommutantOptions& opt = {});

/// Kernel dimension only (no classification), for diagnostics.
int commutant_kernel_dim(const RepSpec& rep, int samples, std::uint64_t seed,
                         double kernel_tol = 1e-8, double param_scale = 0.8);

/// Real irreducible representation W_(m,n) realized inside (R^4)^(x N),
/// N = m2 + n2, by symmetrization, chirality-pair constraints and the
/// (1 + ig5 (x) ig5)/2 projector. Supported label range: m2 + n2 <= 4.
struct WmnRep {
  int m2, n2;
  MatX subspace;  // 4^N x dim, orthonormal columns
  RepSpec rep;
  std::vector<TensorProjector> projectors;
};
WmnRep build_w_mn(int m2, int n2, const CliffordBasis& basis);

/// Residual of subspace invariance under the parity element ig0 applied to
/// every tensor index: ||(1 - Q Q^T) P Q||_inf.
double parity_closure_check(const MatX& subspace, int n_indexes,
                            const CliffordBasis& basis);
double parity_closure_check(const WmnRep& w, const CliffordBasis& basis);

enum class PinorGrading {
  Gamma3Gamma5,  // g3 g5 M± = ±M±
  Gamma0Gamma3,  // g0 g3 M± = ±M±
};

/// Orthogonal identification of realified Pauli spinors with Majorana
/// spinors: columns are the images of {P+, P-, iP+, iP-}, i.e.
/// {M+, M-, ig0 M+, ig0 M-}. Intertwines multiplication by i with left
/// multiplication by ig0. Throws DegenerateEigenbasis if the grading
/// eigenbasis cannot be built.
Mat4 pauli_pinor_iso(const CliffordBasis& basis,
                     PinorGrading grading = PinorGrading::Gamma3Gamma5);

}  // namespace pinrep::reps
