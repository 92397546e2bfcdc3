#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "common.hpp"
#include "sbpp/bc.hpp"
#include "sbpp/solvers.hpp"

using namespace sbpp;
using namespace testing_util;

TEST(Rk4, ConstantStateUnchanged) {
  const Vec w = (Vec(3) << 1.0, -2.0, 3.0).finished();
  const RhsFn f = [](double, const Vec& u) { return Vec(Vec::Zero(u.size())); };
  EXPECT_EQ(rk4_step(f, 0.0, w, 0.1), w);
  EXPECT_THROW(rk4_step(f, 0.0, w, 0.0), Error);
}

TEST(Rk4, FourthOrderOnScalarExponential) {
  const RhsFn f = [](double, const Vec& u) { return Vec(-1.5 * u); };
  auto run = [&](int n) {
    Vec w = Vec::Ones(1);
    const double dt = 1.0 / n;
    for (int k = 0; k < n; ++k) w = rk4_step(f, k * dt, w, dt);
    return std::abs(w(0) - std::exp(-1.5));
  };
  EXPECT_NEAR(std::log2(run(10) / run(20)), 4.0, 0.15);
}

TEST(Rk4, TimeDependentForcing) {
  // w' = cos t, w(0) = 0.
  const RhsFn f = [](double t, const Vec&) { return Vec(Vec::Constant(1, std::cos(t))); };
  Vec w = Vec::Zero(1);
  for (int k = 0; k < 40; ++k) w = rk4_step(f, k * 0.05, w, 0.05);
  EXPECT_NEAR(w(0), std::sin(2.0), 1e-8);
}

TEST(Rk4, RotationMatrixExponential) {
  Mat A(2, 2);
  A << 0.0, 2.0, -2.0, 0.0;
  const RhsFn f = [&A](double, const Vec& u) { return Vec(A * u); };
  auto err = [&](int n) {
    Vec w = (Vec(2) << 1.0, 0.0).finished();
    for (int k = 0; k < n; ++k) w = rk4_step(f, 0.0, w, 1.0 / n);
    return std::hypot(w(0) - std::cos(2.0), w(1) + std::sin(2.0));
  };
  EXPECT_NEAR(std::log2(err(20) / err(40)), 4.0, 0.15);
}

TEST(Spectrum, ZeroAndRotation) {
  const auto z = spectrum(Mat::Zero(4, 4));
  EXPECT_EQ(z.size(), 4u);
  EXPECT_EQ(real_part_ratio(z), 0.0);
  Mat R(2, 2);
  R << 0.0, 3.0, -3.0, 0.0;
  const auto ev = spectrum(R);
  EXPECT_NEAR(std::abs(ev[0].imag()), 3.0, 1e-14);
  EXPECT_LT(real_part_ratio(ev), 1e-15);
  EXPECT_THROW(spectrum(Mat::Zero(2, 3)), Error);
}

TEST(Spectrum, OutflowAdvectionIsStable) {
  for (int order : {2, 4, 6}) {
    const SbpPair1D op = build_sbp1d(order, min_intervals(order) + 6);
    const BoundaryProjection bp = boundary_projection(bc_char_scalar(true, false, op.N), op.H());
    const Mat& P = bp.P.matrix();
    const Mat Q = -P * op.D.matrix() * P;
    EXPECT_LT(max_real_part(spectrum(Q)), 1e-10) << order;
    // Energy form: HQ + (HQ)^T is negative semidefinite.
    const Mat HQ = op.H().matrix() * Q;
    const Eigen::SelfAdjointEigenSolver<Mat> es(HQ + HQ.transpose());
    EXPECT_LT(es.eigenvalues().maxCoeff(), 1e-12) << order;
  }
}

TEST(Advection, FrozenSpeedKeepsEnergy) {
  AdvectionConfig cfg;
  cfg.pattern = SpeedPattern::zero;
  cfg.N = 20;
  cfg.t_final = 0.2;
  const AdvectionTrace tr = advection_demo_1d(cfg);
  for (double e : tr.energy) EXPECT_EQ(e, tr.energy.front());
  EXPECT_TRUE(tr.swap_times.empty());
}

TEST(Advection, PositiveSpeedEnergyNonIncreasing) {
  for (AdvectionFlavor fl : {AdvectionFlavor::single, AdvectionFlavor::multiblock_skew}) {
    AdvectionConfig cfg;
    cfg.flavor = fl;
    cfg.pattern = SpeedPattern::positive;
    cfg.N = 20;
    cfg.t_final = 0.6;
    const AdvectionTrace tr = advection_demo_1d(cfg);
    EXPECT_LE(tr.max_relative_increase, 1e-12);
    EXPECT_LT(tr.energy.back(), tr.energy.front());
    for (double d : tr.boundary_defect) EXPECT_LT(d, 1e-12);
    EXPECT_NEAR(tr.t.back(), 0.6, 1e-14);
  }
}

TEST(Advection, SignFlipSwapsProjectionOnce) {
  for (AdvectionFlavor fl : {AdvectionFlavor::single, AdvectionFlavor::multiblock_skew}) {
    AdvectionConfig cfg;
    cfg.flavor = fl;
    cfg.N = 20;
    cfg.t_final = 1.0;
    cfg.switch_time = 0.4;
    const AdvectionTrace tr = advection_demo_1d(cfg);
    ASSERT_EQ(tr.swap_times.size(), 1u);
    EXPECT_NEAR(tr.swap_times[0], 0.4, 1e-12);
    EXPECT_LE(tr.max_relative_increase, 1e-12);
    for (std::size_t k = 1; k < tr.energy.size(); ++k) EXPECT_LE(tr.energy[k], tr.energy[k - 1] * (1 + 1e-12));
  }
}

TEST(Advection, SkewFormEnergyEstimate) {
  const auto m = assemble_multiblock1d(build_sbp1d(4, 10, Closure::standard, 0.5),
                                       build_sbp1d(4, 15, Closure::standard, 0.5));
  const Vec x = m.grid();
  const Vec c = (1.0 + 0.5 * (6.0 * x.array()).sin()).matrix();
  const Mat P = boundary_projection(bc_char_scalar(true, false, m.N()), m.H()).P.matrix();
  const Mat HA = m.H().matrix() * advection_skew_matrix(m, c, P);
  const Eigen::SelfAdjointEigenSolver<Mat> es(HA + HA.transpose());
  EXPECT_LT(es.eigenvalues().maxCoeff(), 1e-12);
}

TEST(Advection, RejectsBadTimes) {
  AdvectionConfig cfg;
  cfg.t_final = -1.0;
  EXPECT_THROW(advection_demo_1d(cfg), Error);
}
