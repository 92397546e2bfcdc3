#include <gtest/gtest.h>

#include "common.hpp"
#include "sbpp/sbp1d.hpp"

using namespace sbpp;
using namespace testing_util;

namespace {

struct Flavor {
  int order;
  Closure closure;
};

const Flavor kFlavors[] = {{2, Closure::standard}, {2, Closure::wide}, {4, Closure::standard}, {6, Closure::standard}};

}  // namespace

TEST(Sbp1d, WideSecondOrderFirstRow) {
  const SbpPair1D op = build_sbp1d(2, 10, Closure::wide);
  const RowVec row = op.h * op.D.matrix().row(0);
  EXPECT_DOUBLE_EQ(row(0), -1.5);
  EXPECT_DOUBLE_EQ(row(1), 2.0);
  EXPECT_DOUBLE_EQ(row(2), -0.5);
  EXPECT_EQ(row.tail(8).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Sbp1d, StandardSecondOrderFirstRow) {
  const SbpPair1D op = build_sbp1d(2, 10);
  const RowVec row = op.h * op.D.matrix().row(0);
  EXPECT_DOUBLE_EQ(row(0), -1.0);
  EXPECT_DOUBLE_EQ(row(1), 1.0);
  EXPECT_DOUBLE_EQ(op.H().diag()(0), 0.5 * op.h);
}

TEST(Sbp1d, ConstantsAreAnnihilated) {
  for (const Flavor f : kFlavors) {
    const SbpPair1D op = build_sbp1d(f.order, min_intervals(f.order, f.closure) + 4, f.closure);
    EXPECT_LT(max_abs(op.D.matrix() * Vec::Ones(op.points())), 1e-11) << f.order;
  }
}

TEST(Sbp1d, NormIdentities) {
  for (const Flavor f : kFlavors) {
    const SbpPair1D op = build_sbp1d(f.order, min_intervals(f.order, f.closure) + 7, f.closure);
    const Vec one = Vec::Ones(op.points());
    EXPECT_NEAR(inner(op.space, one, one), 1.0, 1e-13);
    const auto& c = closure_data(f.order, f.closure);
    double s = 0.0;
    for (double w : c.norm) s += w;
    EXPECT_NEAR(s, static_cast<double>(c.norm.size()) - 0.5, 1e-13);
    EXPECT_EQ(op.closure_width, static_cast<int>(c.norm.size()));
  }
}

TEST(Sbp1d, MatrixSummationByParts) {
  for (const Flavor f : kFlavors)
    for (Index extra : {0, 1, 5, 20}) {
      const SbpPair1D op = build_sbp1d(f.order, min_intervals(f.order, f.closure) + extra, f.closure, 2.5);
      const Mat HD = op.H().matrix() * op.D.matrix();
      EXPECT_LT(max_abs(HD + HD.transpose() - boundary_matrix_1d(op.points())), 1e-12)
          << "order " << f.order << " N " << op.N;
    }
}

TEST(Sbp1d, NormStructureIsReflected) {
  const SbpPair1D op = build_sbp1d(6, 30);
  const Vec h = op.H().diag();
  EXPECT_LT(max_abs(h - h.reverse()), 1e-16);
  EXPECT_TRUE(op.H().is_diagonal());
}

TEST(Sbp1d, InteriorStencilIsAntisymmetric) {
  const SbpPair1D op = build_sbp1d(6, 30);
  const Mat& D = op.D.matrix();
  for (Index k = 1; k <= 3; ++k) EXPECT_DOUBLE_EQ(D(15, 15 + k), -D(15, 15 - k));
  EXPECT_EQ(D(15, 15), 0.0);
  EXPECT_NEAR(op.h * D(15, 16), 0.75, 1e-15);
}

TEST(Sbp1d, RightClosureIsAntiReflection) {
  const SbpPair1D op = build_sbp1d(4, 20);
  const Mat& D = op.D.matrix();
  const Mat right = D.bottomRightCorner(4, 6);
  const Mat left = D.topLeftCorner(4, 6);
  EXPECT_LT(max_abs(right + anti_reflect(left)), 1e-14);
}

TEST(Sbp1d, MinimumSizeEnforced) {
  for (const Flavor f : kFlavors) {
    const Index n = min_intervals(f.order, f.closure);
    EXPECT_NO_THROW(build_sbp1d(f.order, n, f.closure));
    EXPECT_THROW(build_sbp1d(f.order, n - 1, f.closure), Error);
  }
  EXPECT_THROW(build_sbp1d(3, 20), Error);
  EXPECT_THROW(build_sbp1d(4, 20, Closure::wide), Error);
  EXPECT_THROW(build_sbp1d(2, 20, Closure::standard, -1.0), Error);
}

TEST(AntiReflect, Examples) {
  EXPECT_EQ(anti_reflect(Mat::Identity(3, 3)), Mat(Mat::Identity(3, 3)));
  const Mat a = (Mat(2, 3) << 1, 2, 3, 4, 5, 6).finished();
  const Mat expected = (Mat(2, 3) << 6, 5, 4, 3, 2, 1).finished();
  EXPECT_EQ(anti_reflect(a), expected);
}

TEST(AntiReflect, CommutesWithInverse) {
  std::mt19937_64 rng(5);
  const Mat a = randn(rng, 5, 5) + 5.0 * Mat::Identity(5, 5);
  EXPECT_LT(rel_diff(anti_reflect(a.inverse()), anti_reflect(a).inverse()), 1e-13);
}

TEST(AccuracyReport, FourthOrderLinearExact) {
  const auto rows = accuracy_report(build_sbp1d(4, 20), 4);
  EXPECT_LE(rows[1].interior_defect, 1e-12);
  EXPECT_LE(rows[1].closure_defect, 1e-12);
  EXPECT_LE(rows[2].closure_defect, 1e-10);
  EXPECT_GT(rows[3].closure_defect, 1e-6);
  EXPECT_LE(rows[4].interior_defect, 1e-9);
}

TEST(AccuracyReport, SixthOrderCubicOnClosure) {
  const SbpPair1D op = build_sbp1d(6, 30);
  const auto rows = accuracy_report(op, 6);
  EXPECT_LE(rows[3].closure_defect, 1e-10);
  EXPECT_GT(rows[4].closure_defect, 1e-6);
  EXPECT_LE(rows[6].interior_defect, 1e-7);
}

TEST(AccuracyReport, SecondOrderQuadraticInteriorOnly) {
  const auto rows = accuracy_report(build_sbp1d(2, 10), 2);
  EXPECT_LE(rows[2].interior_defect, 1e-12);
  EXPECT_GT(rows[2].closure_defect, 1e-3);
  EXPECT_THROW(accuracy_report(build_sbp1d(2, 10), 3), Error);
}

TEST(SbpDefect, ConstantAndLinear) {
  const SbpPair1D op = build_sbp1d(4, 16);
  const Vec one = Vec::Ones(op.points());
  EXPECT_NEAR(sbp_defect(op, one, one), 0.0, 1e-14);
  EXPECT_NEAR(sbp_defect(op, op.grid(), one), 0.0, 1e-13);
}

TEST(SbpDefect, RandomPairs) {
  std::mt19937_64 rng(17);
  for (const Flavor f : kFlavors) {
    const SbpPair1D op = build_sbp1d(f.order, min_intervals(f.order, f.closure) + 9, f.closure);
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
      const Vec u = randv(rng, op.points()), v = randv(rng, op.points());
      const double scale = std::max(1.0, norm_of(op.space, u) * norm_of(op.space, op.D(v)));
      worst = std::max(worst, std::abs(sbp_defect(op, u, v)) / scale);
    }
    EXPECT_LE(worst, 1e-12) << "order " << f.order;
  }
}

TEST(SbpDefect, LengthMismatch) { EXPECT_THROW(sbp_defect(build_sbp1d(2, 4), Vec::Ones(3), Vec::Ones(5)), Error); }
