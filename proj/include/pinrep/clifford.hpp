#pragma once

#include <array>

#include "pinrep/linalg.hpp"

namespace pinrep::clifford {

/// Minkowski metric diag(+1,-1,-1,-1).
Mat4 minkowski_metric();

/// The five real orthogonal matrices i\gamma^0..i\gamma^3, i\gamma^5 in the
/// Majorana basis, satisfying {i\gamma^mu, i\gamma^nu} = -2 eta^{mu nu}.
struct CliffordBasis {
  std::array<Mat4, 4> igamma;
  Mat4 igamma5;
};

/// Integer-entry Majorana basis; igamma5 = (ig0)(ig1)(ig2)(ig3).
CliffordBasis build_majorana_basis();

/// Max-norm residual of all ten anticommutation relations of a generator set.
double anticommutator_residual(const std::array<Mat4, 4>& gens);
double anticommutator_residual(const CliffordBasis& basis);

/// Max over the five basis matrices of ||m^T m - 1||_inf.
double orthogonality_residual(const CliffordBasis& basis);

/// Residual of igamma5 against the product of the four generators.
double gamma5_product_residual(const CliffordBasis& basis);

struct SimilarityOptions {
  double clifford_tol = 1e-6;   // precondition residual bound on inputs
  double kernel_tol = 1e-10;    // singular values below this (relative) are null
  double sign_entry_tol = 1e-6; // first row-major entry larger than this fixes the sign
};

/// Solves beta^mu S = S alpha^mu for the unique-up-to-sign real S with
/// |det S| = 1 (stacked 64x16 intertwining system, SVD kernel). The sign is
/// fixed so the first row-major entry above `sign_entry_tol` is positive.
/// Throws NotCliffordSet if either input violates the relations, NoSolution
/// if the kernel is not one-dimensional.
Mat4 solve_real_similarity(const std::array<Mat4, 4>& alpha,
                           const std::array<Mat4, 4>& beta,
                           const SimilarityOptions& opt = {});

/// Max over mu of ||beta^mu S - S alpha^mu||_inf.
double intertwining_residual(const std::array<Mat4, 4>& alpha,
                             const std::array<Mat4, 4>& beta, const Mat4& s);

}  // namespace pinrep::clifford
