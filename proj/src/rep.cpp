#include "pinrep/rep.hpp"

#include <algorithm>
#include <complex>

namespace pinrep::reps {
namespace {

BoostRotationParams sample_params(Rng& rng, double scale, bool rotations_only) {
  BoostRotationParams p;
  p.theta = rng.normal3() * scale;
  if (!rotations_only) p.boost = rng.normal3() * scale;
  return p;
}

MatX kron(const MatX& a, const MatX& b) {
  MatX out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

MatX op_on_index(const Mat4& m, int k, int n_idx) {
  MatX out = MatX::Identity(1, 1);
  for (int i = 0; i < n_idx; ++i)
    out = kron(out, i == k ? MatX(m) : MatX(Mat4::Identity()));
  return out;
}

MatX tensor_power(const Mat4& m, int n_idx) {
  MatX out = MatX::Identity(1, 1);
  for (int i = 0; i < n_idx; ++i) out = kron(out, MatX(m));
  return out;
}

// permutation of tensor indexes as a matrix on (R^4)^(x n): acts on basis
// digits, digit i of the output taken from digit perm[i] of the input.
MatX perm_matrix(const std::vector<int>& perm, int n_idx) {
  const int dim = 1 << (2 * n_idx);
  MatX p = MatX::Zero(dim, dim);
  std::vector<int> digits(n_idx), nd(n_idx);
  for (int idx = 0; idx < dim; ++idx) {
    int t = idx;
    for (int i = n_idx - 1; i >= 0; --i) {
      digits[i] = t & 3;
      t >>= 2;
    }
    for (int i = 0; i < n_idx; ++i) nd[i] = digits[perm[i]];
    int j = 0;
    for (int i = 0; i < n_idx; ++i) j = 4 * j + nd[i];
    p(j, idx) = 1.0;
  }
  return p;
}

void permutations_rec(std::vector<int>& cur, std::vector<bool>& used,
                      std::vector<std::vector<int>>& out) {
  const int n = int(used.size());
  if (int(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    cur.push_back(i);
    permutations_rec(cur, used, out);
    cur.pop_back();
    used[i] = false;
  }
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::vector<bool> used(n, false);
  permutations_rec(cur, used, out);
  return out;
}

}  // namespace

RepSpec make_pinor_rep(const CliffordBasis& basis, Subgroup subgroup) {
  RepSpec spec;
  spec.dim = 4;
  spec.label = std::make_pair(1, 0);
  const bool rot_only = subgroup == Subgroup::Rotations;
  spec.rho = [basis, rot_only](const BoostRotationParams& p) -> MatX {
    BoostRotationParams q = p;
    if (rot_only) q.boost.setZero();
    return groups::spin_element(q, basis).s;
  };
  for (int j = 1; j <= 3; ++j) {
    spec.algebra.push_back(MatX(-(basis.igamma5 * basis.igamma[0] * basis.igamma[j])));
    if (!rot_only)
      spec.algebra.push_back(MatX(-(basis.igamma[0] * basis.igamma[j])));
  }
  return spec;
}

RepSpec make_w_half_half_span_rep(const CliffordBasis& basis) {
  std::array<Mat4, 4> base{Mat4::Identity(),
                           Mat4(-(basis.igamma[0] * basis.igamma[1])),
                           Mat4(-(basis.igamma[0] * basis.igamma[2])),
                           Mat4(-(basis.igamma[0] * basis.igamma[3]))};
  RepSpec spec;
  spec.dim = 4;
  spec.label = std::make_pair(1, 1);
  spec.rho = [basis, base](const BoostRotationParams& p) -> MatX {
    const Mat4 s = groups::spin_element(p, basis).s;
    MatX m(4, 4);
    for (int b = 0; b < 4; ++b) {
      const Mat4 img = s * base[b] * s.transpose();
      for (int a = 0; a < 4; ++a)
        m(a, b) = (base[a].transpose() * img).trace() / 4.0;
    }
    return m;
  };
  return spec;
}

RepSpec make_pauli_su2_realified() {
  // realified 2x2 complex: [[Re, -Im], [Im, Re]] blocks on (Re psi, Im psi)
  RepSpec spec;
  spec.dim = 4;
  spec.rho = [](const BoostRotationParams& p) -> MatX {
    using C = std::complex<double>;
    Eigen::Matrix2cd gen;
    gen.setZero();
    const C i(0, 1);
    Eigen::Matrix2cd s1, s2, s3;
    s1 << 0, 1, 1, 0;
    s2 << 0, C(0, -1), C(0, 1), 0;
    s3 << 1, 0, 0, -1;
    gen = i * (p.theta(0) * s1 + p.theta(1) * s2 + p.theta(2) * s3);
    const Eigen::Matrix2cd u = expm(gen);
    MatX m(4, 4);
    m.block<2, 2>(0, 0) = u.real();
    m.block<2, 2>(0, 2) = -u.imag();
    m.block<2, 2>(2, 0) = u.imag();
    m.block<2, 2>(2, 2) = u.real();
    return m;
  };
  MatX j = MatX::Zero(4, 4);
  j.block<2, 2>(0, 2) = -Eigen::Matrix2d::Identity();
  j.block<2, 2>(2, 0) = Eigen::Matrix2d::Identity();
  spec.complex_structure = j;
  return spec;
}

RepSpec complexify(const RepSpec& rep) {
  RepSpec out;
  out.dim = 2 * rep.dim;
  auto inner = rep.rho;
  const int d = rep.dim;
  out.rho = [inner, d](const BoostRotationParams& p) -> MatX {
    MatX m = MatX::Zero(2 * d, 2 * d);
    const MatX r = inner(p);
    m.topLeftCorner(d, d) = r;
    m.bottomRightCorner(d, d) = r;
    return m;
  };
  MatX j = MatX::Zero(2 * d, 2 * d);
  j.topRightCorner(d, d) = -MatX::Identity(d, d);
  j.bottomLeftCorner(d, d) = MatX::Identity(d, d);
  out.complex_structure = j;
  for (const MatX& a : rep.algebra) {
    MatX m = MatX::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = a;
    m.bottomRightCorner(d, d) = a;
    out.algebra.push_back(m);
  }
  return out;
}

RepSpec realify(const RepSpec& rep, const MatX& j, std::uint64_t check_seed) {
  if (j.rows() != rep.dim || j.cols() != rep.dim)
    throw Error(Errc::NoComplexStructure, "J has the wrong dimension");
  if ((j * j + MatX::Identity(rep.dim, rep.dim)).cwiseAbs().maxCoeff() > 1e-8)
    throw Error(Errc::NoComplexStructure, "J^2 != -1");
  Rng rng(check_seed);
  for (int i = 0; i < 8; ++i) {
    const MatX r = rep.rho(sample_params(rng, 0.8, false));
    if ((j * r - r * j).cwiseAbs().maxCoeff() > 1e-8)
      throw Error(Errc::NoComplexStructure, "J does not commute with the action");
  }
  RepSpec out = rep;
  out.complex_structure = j;
  return out;
}

int commutant_kernel_dim(const RepSpec& rep, int samples, std::uint64_t seed,
                         double kernel_tol, double param_scale) {
  const int d = rep.dim;
  Rng rng(seed);
  MatX sys(samples * d * d, d * d);
  sys.setZero();
  for (int s = 0; s < samples; ++s) {
    const MatX r = rep.rho(sample_params(rng, param_scale, false));
    // rows: entries of X r - r X, X vectorized column-major
    for (int c = 0; c < d; ++c)
      for (int rr = 0; rr < d; ++rr) {
        const int row = s * d * d + c * d + rr;
        for (int k = 0; k < d; ++k) {
          sys(row, k * d + rr) += r(k, c);   // (X r)(rr, c)
          sys(row, c * d + k) -= r(rr, k);   // (r X)(rr, c)
        }
      }
  }
  return kernel_dimension(sys, kernel_tol);
}

CommutantClass commutant(const RepSpec& rep, const CommutantOptions& opt) {
  if (opt.samples < 8)
    throw Error(Errc::UsageError, "commutant needs at least 8 samples");
  const int kdim = commutant_kernel_dim(rep, opt.samples, opt.seed,
                                        opt.kernel_tol, opt.param_scale);
  if (opt.stability_check) {
    const int kdim2 = commutant_kernel_dim(rep, 2 * opt.samples, opt.seed + 1,
                                           opt.kernel_tol, opt.param_scale);
    if (kdim2 != kdim)
      throw Error(Errc::UnexpectedDimension,
                  "commutant dimension unstable under sample doubling");
  }
  if (!rep.algebra.empty()) {
    const int d = rep.dim;
    MatX sys(int(rep.algebra.size()) * d * d, d * d);
    sys.setZero();
    for (int s = 0; s < int(rep.algebra.size()); ++s) {
      const MatX& r = rep.algebra[s];
      for (int c = 0; c < d; ++c)
        for (int rr = 0; rr < d; ++rr) {
          const int row = s * d * d + c * d + rr;
          for (int k = 0; k < d; ++k) {
            sys(row, k * d + rr) += r(k, c);
            sys(row, c * d + k) -= r(rr, k);
          }
        }
    }
    if (kernel_dimension(sys, opt.kernel_tol) != kdim)
      throw Error(Errc::UnexpectedDimension,
                  "Lie-algebra cross-check disagrees with sampled commutant");
  }
  switch (kdim) {
    case 1: return {CommutantClass::RealType, 1};
    case 2: return {CommutantClass::ComplexType, 2};
    case 4: return {CommutantClass::QuaternionType, 4};
    default:
      throw Error(Errc::UnexpectedDimension,
                  "commutant dimension " + std::to_string(kdim) +
                      " is not 1, 2 or 4 (reducible or under-sampled)");
  }
}

WmnRep build_w_mn(int m2, int n2, const CliffordBasis& basis) {
  if (m2 < n2) throw Error(Errc::InvalidLabel, "label requires m >= n");
  if (m2 < 0 || n2 < 0) throw Error(Errc::InvalidLabel, "negative label");
  if (m2 + n2 > 4)
    throw Error(Errc::UnsupportedLabel, "supported label range is m2+n2 <= 4");

  WmnRep w;
  w.m2 = m2;
  w.n2 = n2;
  const int n_idx = m2 + n2;
  if (n_idx == 0) {
    w.subspace = MatX::Identity(1, 1);
    w.rep.dim = 1;
    w.rep.label = std::make_pair(0, 0);
    w.rep.rho = [](const BoostRotationParams&) { return MatX::Identity(1, 1); };
    return w;
  }
  const int dim = 1 << (2 * n_idx);
  std::vector<MatX> constraints;  // rows stacked; kernel = the subspace

  // block symmetrizers
  for (auto [start, size] : {std::pair{0, m2}, std::pair{m2, n2}}) {
    if (size < 2) continue;
    MatX sym = MatX::Zero(dim, dim);
    for (const auto& p : all_permutations(size)) {
      std::vector<int> full(n_idx);
      for (int i = 0; i < n_idx; ++i) full[i] = i;
      for (int i = 0; i < size; ++i) full[start + i] = start + p[i];
      sym += perm_matrix(full, n_idx);
    }
    double nperm = 1;
    for (int i = 2; i <= size; ++i) nperm *= i;
    sym /= nperm;
    constraints.push_back(MatX::Identity(dim, dim) - sym);
    w.projectors.push_back(TensorProjector{sym});
  }
  // chirality pairing within blocks: (ig5)_first (ig5)_k w = -w
  for (auto [start, size] : {std::pair{0, m2}, std::pair{m2, n2}}) {
    for (int k = start + 1; k < start + size; ++k) {
      const MatX c =
          op_on_index(basis.igamma5, start, n_idx) * op_on_index(basis.igamma5, k, n_idx);
      constraints.push_back((MatX::Identity(dim, dim) + c) / 2.0);
      w.projectors.push_back(TensorProjector{(MatX::Identity(dim, dim) - c) / 2.0});
    }
  }
  // cross projector between the two blocks
  if (m2 > 0 && n2 > 0) {
    const MatX c =
        op_on_index(basis.igamma5, 0, n_idx) * op_on_index(basis.igamma5, m2, n_idx);
    constraints.push_back((MatX::Identity(dim, dim) - c) / 2.0);
    w.projectors.push_back(TensorProjector{(MatX::Identity(dim, dim) + c) / 2.0});
  }
  // block swap symmetrization for m = n
  if (m2 == n2 && m2 > 0) {
    std::vector<int> perm(n_idx);
    for (int i = 0; i < m2; ++i) {
      perm[i] = m2 + i;
      perm[m2 + i] = i;
    }
    constraints.push_back(MatX::Identity(dim, dim) - perm_matrix(perm, n_idx));
  }

  int rows = 0;
  for (const MatX& c : constraints) rows += int(c.rows());
  if (rows == 0) {
    // no constraints (single-index labels): the whole tensor space
    w.subspace = MatX::Identity(dim, dim);
  } else {
    MatX stacked(rows, dim);
    int at = 0;
    for (const MatX& c : constraints) {
      stacked.middleRows(at, c.rows()) = c;
      at += int(c.rows());
    }
    w.subspace = nullspace(stacked, 1e-10);
  }

  const MatX q = w.subspace;
  w.rep.dim = int(q.cols());
  w.rep.label = std::make_pair(m2, n2);
  w.rep.rho = [basis, q, n_idx](const BoostRotationParams& p) -> MatX {
    const Mat4 s = groups::spin_element(p, basis).s;
    return q.transpose() * tensor_power(s, n_idx) * q;
  };
  return w;
}

double parity_closure_check(const MatX& subspace, int n_indexes,
                            const CliffordBasis& basis) {
  const MatX p = tensor_power(basis.igamma[0], n_indexes);
  const MatX img = p * subspace;
  return (img - subspace * (subspace.transpose() * img)).cwiseAbs().maxCoeff();
}

double parity_closure_check(const WmnRep& w, const CliffordBasis& basis) {
  if (w.m2 + w.n2 == 0) return 0.0;
  return parity_closure_check(w.subspace, w.m2 + w.n2, basis);
}

Mat4 pauli_pinor_iso(const CliffordBasis& basis, PinorGrading grading) {
  // Each grading choice comes with the imaginary-unit companion that
  // commutes with it: g3 g5 with ig0, g0 g3 with ig5.
  const Mat4 g = grading == PinorGrading::Gamma3Gamma5
                     ? Mat4(-(basis.igamma[3] * basis.igamma5))
                     : Mat4(-(basis.igamma[0] * basis.igamma[3]));
  const Mat4 j_comp =
      grading == PinorGrading::Gamma3Gamma5 ? basis.igamma[0] : basis.igamma5;
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw Error(Errc::DegenerateEigenbasis, "grading matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Mat4> es(g);
  if (es.info() != Eigen::Success)
    throw Error(Errc::DegenerateEigenbasis, "eigensolver failed");
  // eigenvalues sorted ascending: (-1, -1, +1, +1)
  for (double ev : {es.eigenvalues()(0) + 1, es.eigenvalues()(1) + 1,
                    es.eigenvalues()(2) - 1, es.eigenvalues()(3) - 1})
    if (std::abs(ev) > 1e-10)
      throw Error(Errc::DegenerateEigenbasis, "grading eigenvalues are not ±1");
  const Vec4 m_plus = es.eigenvectors().col(2);
  const Vec4 m_minus = es.eigenvectors().col(0);
  Mat4 theta;
  theta.col(0) = m_plus;
  theta.col(1) = m_minus;
  theta.col(2) = j_comp * m_plus;
  theta.col(3) = j_comp * m_minus;
  return theta;
}

}  // namespace pinrep::reps
