#include "pinrep/linalg.hpp"

#include <Eigen/SVD>

namespace pinrep {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotCliffordSet: return "NotCliffordSet";
    case Errc::NoSolution: return "NoSolution";
    case Errc::NotMajPreserving: return "NotMajPreserving";
    case Errc::ZeroMass: return "ZeroMass";
    case Errc::MasslessZeroMomentum: return "MasslessZeroMomentum";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::UnsupportedLabel: return "UnsupportedLabel";
    case Errc::UnexpectedDimension: return "UnexpectedDimension";
    case Errc::NoComplexStructure: return "NoComplexStructure";
    case Errc::DegenerateEigenbasis: return "DegenerateEigenbasis";
    case Errc::UnsupportedOrder: return "UnsupportedOrder";
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::NonPeriodicGrid: return "NonPeriodicGrid";
    case Errc::MassUnset: return "MassUnset";
    case Errc::ResampleRequired: return "ResampleRequired";
    case Errc::NotBargmannWigner: return "NotBargmannWigner";
    case Errc::OffShell: return "OffShell";
    case Errc::HelicityViolation: return "HelicityViolation";
    case Errc::NotOnShell: return "NotOnShell";
    case Errc::FormatError: return "FormatError";
    case Errc::UsageError: return "UsageError";
  }
  return "Unknown";
}

MatX nullspace(const MatX& m, double rel_tol) {
  Eigen::JacobiSVD<MatX> svd(m, Eigen::ComputeFullV);
  const VecX& sv = svd.singularValues();
  const double cut = sv.size() ? sv(0) * rel_tol : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  return svd.matrixV().rightCols(m.cols() - rank);
}

int kernel_dimension(const MatX& m, double rel_tol) {
  Eigen::JacobiSVD<MatX> svd(m);
  const VecX& sv = svd.singularValues();
  if (!sv.size()) return int(m.cols());
  const double cut = sv(0) * rel_tol;
  int null_count = int(m.cols()) - int(sv.size());
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) <= cut) ++null_count;
  return null_count;
}

}  // namespace pinrep
