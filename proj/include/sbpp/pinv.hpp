#pragma once

#include <array>
#include <utility>
#include <vector>

#include "sbpp/space.hpp"

namespace sbpp {

constexpr double kRankTol = 1e-12;

// Weighted pseudoinverse through Cholesky factors of both norms and an SVD.
LinearMap pinv_svd(const LinearMap& T, double rank_tol = kRankTol);
// Numerical rank of G2^T T G1^{-T}.
int weighted_rank(const LinearMap& T, double rank_tol = kRankTol);

struct TikhonovResult {
  LinearMap result;
  std::vector<double> deltas;
  std::vector<Mat> iterates;
};

// (T*T + delta^2 I)^{-1} T* for each delta; result is the last one.
TikhonovResult pinv_tikhonov(const LinearMap& T, const std::vector<double>& deltas);

// Row-recursive pseudoinverse, Euclidean norms only.
Mat pinv_greville(const std::vector<RowVec>& rows, double branch_tol = 1e-10);
Mat pinv_greville(const Mat& L, double branch_tol = 1e-10);

struct PenroseReport {
  std::array<double, 4> residuals{};
  int rank_estimate = 0;
  double tolerance = 0.0;
  bool pass = false;
};

PenroseReport check_penrose(const LinearMap& T, const LinearMap& S, double tol);

// (T+T, TT+)
std::pair<LinearMap, LinearMap> canonical_projections(const LinearMap& T);

}  // namespace sbpp
