#pragma once

// Shared oracles for the acceptance suite: these deliberately avoid the
// library's fast paths so every comparison is against an independent route.

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "pinrep/clifford.hpp"
#include "pinrep/fields.hpp"
#include "pinrep/linalg.hpp"

namespace pinrep::oracle {

// Clebsch-Gordan by diagonalizing the total angular momentum on the product
// of two standard multiplets (Condon-Shortley phases fixed by positive
// highest-weight coefficients and the lowering-operator convention).
class CgOracle {
 public:
  CgOracle(int two_j1, int two_j2) : tj1_(two_j1), tj2_(two_j2) {
    const int d1 = two_j1 + 1, d2 = two_j2 + 1;
    dim_ = d1 * d2;
    auto two_m_of = [](int tj, int idx) { return tj - 2 * idx; };
    MatX jminus = MatX::Zero(dim_, dim_);
    for (int a = 0; a < d1; ++a)
      for (int b = 0; b < d2; ++b) {
        const int i = a * d2 + b;
        const double j1 = two_j1 / 2.0, m1 = two_m_of(two_j1, a) / 2.0;
        const double j2 = two_j2 / 2.0, m2 = two_m_of(two_j2, b) / 2.0;
        if (a + 1 < d1)
          jminus((a + 1) * d2 + b, i) += std::sqrt(j1 * (j1 + 1) - m1 * (m1 - 1));
        if (b + 1 < d2)
          jminus(a * d2 + (b + 1), i) += std::sqrt(j2 * (j2 + 1) - m2 * (m2 - 1));
      }
    for (int tJ = two_j1 + two_j2; tJ >= std::abs(two_j1 - two_j2); tJ -= 2) {
      std::vector<int> idxs;
      for (int a = 0; a < d1; ++a)
        for (int b = 0; b < d2; ++b)
          if (two_m_of(two_j1, a) + two_m_of(two_j2, b) == tJ)
            idxs.push_back(a * d2 + b);
      MatX sub = MatX::Zero(dim_, int(idxs.size()));
      for (int c = 0; c < int(idxs.size()); ++c) sub(idxs[c], c) = 1.0;
      VecX v;
      if (idxs.size() == 1) {
        v = sub.col(0);
      } else {
        MatX prev(dim_, 0);
        for (const auto& [key, vec] : states_)
          if (key.second == tJ) {
            prev.conservativeResize(dim_, prev.cols() + 1);
            prev.col(prev.cols() - 1) = vec;
          }
        MatX comp = MatX::Identity(int(idxs.size()), int(idxs.size()));
        if (prev.cols() > 0) {
          const MatX proj = sub.transpose() * prev;
          comp -= proj * proj.transpose();
        }
        Eigen::SelfAdjointEigenSolver<MatX> es(comp);
        v = sub * es.eigenvectors().col(int(idxs.size()) - 1);
      }
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

// Direct quadrature of the transform integral on a small grid (dense DFT
// sums, no shared code with the factorized fast path).
fields::SpinorFieldGrid direct_fm(const fields::SpinorFieldGrid& f,
                                  const clifford::CliffordBasis& basis);

}  // namespace pinrep::oracle
