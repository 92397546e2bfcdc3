#pragma once

#include <optional>

#include "sbpp/sbp1d.hpp"

namespace sbpp {

enum class BoundaryOrigin { char_scalar, char_system, neumann_heat, custom };

struct BoundaryOperator {
  Mat L;  // gamma_dim x state_dim
  BoundaryOrigin origin = BoundaryOrigin::custom;

  Index gamma_dim() const { return L.rows(); }
  Index state_dim() const { return L.cols(); }
};

enum class Side { left, right };
enum class BoundaryNormChoice { identity, matched };

struct BoundaryProjection {
  LinearMap P;
  LinearMap Lplus;
  BoundaryOperator source;
  bool matched_used = false;
};

BoundaryOperator bc_char_scalar(bool delta0, bool delta1, Index N);

// Rows L_i = delta_i (e_i^T - sum_{j != i} c_ij (1 - delta_j) e_j^T) at one boundary point of an
// (N+1)-point grid carrying d = lambda.size() components per point (component index innermost).
BoundaryOperator bc_char_system(const Vec& lambda, const Mat& couplings, Side side, Index N);
// Left and right blocks stacked, as in the two-boundary operator.
BoundaryOperator bc_char_system_both(const Vec& lambda, const Mat& c_left, const Mat& c_right, Index N);
// Point block only (d x d).
Mat char_block(const Vec& lambda, const Mat& couplings, Side side);

BoundaryOperator bc_neumann_heat(const SbpPair1D& op);

BoundaryProjection boundary_projection(const BoundaryOperator& L, const Norm& H,
                                       BoundaryNormChoice choice = BoundaryNormChoice::identity);
BoundaryProjection boundary_projection(const BoundaryOperator& L, const Norm& H, const Norm& H_gamma);

// H_bar with L H = H_bar L when it exists (checked to tol), padded to be SPD off range(L).
std::optional<Mat> matched_boundary_norm(const Mat& L, const Mat& H, double tol = 1e-12);

Vec lift_boundary_data(const BoundaryProjection& bp, const Vec& g);

}  // namespace sbpp
