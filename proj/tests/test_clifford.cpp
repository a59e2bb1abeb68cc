#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pinrep/clifford.hpp"
#include "pinrep/group.hpp"

using namespace pinrep;
using clifford::build_majorana_basis;

TEST_CASE("majorana basis satisfies the anticommutation relations exactly") {
  const auto b = build_majorana_basis();
  CHECK(clifford::anticommutator_residual(b) == 0.0);
  CHECK(clifford::orthogonality_residual(b) == 0.0);
  // (ig0)^2 = -1 since -2 eta^00 = -2
  CHECK(Mat4(b.igamma[0] * b.igamma[0] + Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
  // spatial squares are +1
  for (int k = 1; k < 4; ++k)
    CHECK(Mat4(b.igamma[k] * b.igamma[k] - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("igamma1 is the printed diagonal matrix") {
  const auto b = build_majorana_basis();
  const Mat4 expected = Vec4(1, -1, -1, 1).asDiagonal();
  CHECK((b.igamma[1] - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("igamma5 equals the product of the four generators") {
  // The printed basis satisfies ig5 = (ig0)(ig1)(ig2)(ig3) entrywise
  // (equivalently gamma^5 = -i g0 g1 g2 g3 for these matrices).
  const auto b = build_majorana_basis();
  CHECK(clifford::gamma5_product_residual(b) == 0.0);
  // explicit entries of the display
  Mat4 ig5;
  ig5 << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1, 0;
  CHECK((b.igamma5 - ig5).cwiseAbs().maxCoeff() == 0.0);
  // ig5 anticommutes with every generator and squares to -1
  for (const auto& g : b.igamma)
    CHECK(Mat4(b.igamma5 * g + g * b.igamma5).cwiseAbs().maxCoeff() == 0.0);
  CHECK(Mat4(b.igamma5 * b.igamma5 + Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("metric invariants") {
  const Mat4 eta = clifford::minkowski_metric();
  CHECK((eta * eta - Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(eta.trace() == -2.0);
}

TEST_CASE("anticommutator residual flags a broken set") {
  auto b = build_majorana_basis();
  auto broken = b.igamma;
  broken[1] = Mat4::Identity();
  CHECK(clifford::anticommutator_residual(broken) >= 2.0);
}

TEST_CASE("anticommutator residual survives orthogonal conjugation") {
  const auto b = build_majorana_basis();
  Rng rng(42);
  Mat4 g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = rng.normal();
  const Mat4 q = Eigen::HouseholderQR<Mat4>(g).householderQ();
  std::array<Mat4, 4> conj;
  for (int mu = 0; mu < 4; ++mu) conj[mu] = q * b.igamma[mu] * q.transpose();
  CHECK(clifford::anticommutator_residual(conj) < 1e-12);
}

TEST_CASE("similarity solver returns the identity for identical sets") {
  const auto b = build_majorana_basis();
  const Mat4 s = clifford::solve_real_similarity(b.igamma, b.igamma);
  CHECK((s - Mat4::Identity()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("similarity solver recovers a random orthogonal conjugation") {
  const auto b = build_majorana_basis();
  Rng rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Mat4 g;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) g(i, j) = rng.normal();
    Mat4 q = Eigen::HouseholderQR<Mat4>(g).householderQ();
    std::array<Mat4, 4> conj;
    for (int mu = 0; mu < 4; ++mu) conj[mu] = q * b.igamma[mu] * q.transpose();
    const Mat4 s = clifford::solve_real_similarity(b.igamma, conj);
    CHECK(clifford::intertwining_residual(b.igamma, conj, s) < 1e-8);
    CHECK(std::abs(std::abs(s.determinant()) - 1.0) < 1e-10);
    // recovered up to the fixed sign convention
    const double match = std::min((s - q).cwiseAbs().maxCoeff(),
                                  (s + q).cwiseAbs().maxCoeff());
    CHECK(match < 1e-8);
  }
}

TEST_CASE("similarity solver rejects non-clifford inputs") {
  const auto b = build_majorana_basis();
  auto bad = b.igamma;
  bad[2] = 2.0 * Mat4::Identity();
  CHECK_THROWS_AS((void)clifford::solve_real_similarity(b.igamma, bad), Error);
  try {
    (void)clifford::solve_real_similarity(b.igamma, bad);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCliffordSet);
  }
}

TEST_CASE("similarity solver sign convention is deterministic") {
  const auto b = build_majorana_basis();
  const Mat4 s = clifford::solve_real_similarity(b.igamma, b.igamma);
  // first nonzero row-major entry positive
  bool found = false;
  for (int i = 0; i < 4 && !found; ++i)
    for (int j = 0; j < 4 && !found; ++j)
      if (std::abs(s(i, j)) > 1e-6) {
        CHECK(s(i, j) > 0);
        found = true;
      }
  CHECK(found);
}
