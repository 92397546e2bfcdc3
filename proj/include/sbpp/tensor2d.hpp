#pragma once

#include <array>
#include <vector>

#include "sbpp/multiblock1d.hpp"

namespace sbpp {

// One-directional factor of a tensor-product operator: D, diagonal norm weights, nodes.
// Row bands are cached so that line sweeps skip structural zeros.
class Factor1D {
 public:
  Factor1D(Mat D, Vec h, Vec x, int boundary_order);
  static Factor1D from(const SbpPair1D& op);
  static Factor1D from(const MultiBlockAssembly1D& m);

  const Mat& D() const { return D_; }
  const Vec& h() const { return h_; }
  const Vec& x() const { return x_; }
  int boundary_order() const { return bo_; }
  Index points() const { return D_.rows(); }
  Index intervals() const { return D_.rows() - 1; }
  Index band_lo(Index i) const { return lo_[i]; }
  Index band_hi(Index i) const { return hi_[i]; }

  // Same D, h, x up to tol (relative).
  bool matches(const Factor1D& o, double tol = 1e-13) const;

 private:
  Mat D_;
  Vec h_, x_;
  int bo_;
  std::vector<Index> lo_, hi_;
};

// D = H^{-1} E^T H+ D+ E for two diagonal-norm factors; b is shifted to start where a ends.
Factor1D join_factors(const Factor1D& a, const Factor1D& b);

// Row-major layout: point (i, j) at index j*(N1+1) + i; components innermost when present.
struct Grid2D {
  Index N1, N2;

  Index nx() const { return N1 + 1; }
  Index ny() const { return N2 + 1; }
  Index size() const { return nx() * ny(); }
  Index index(Index i, Index j) const { return j * nx() + i; }
  // Column view: point (i, j) at i*(N2+1) + j.
  Vec to_column_view(const Vec& u) const;
  Vec from_column_view(const Vec& u) const;
};

class Ops2D {
 public:
  Ops2D(Factor1D fx, Factor1D fy);

  const Grid2D& grid() const { return grid_; }
  const Factor1D& fx() const { return fx_; }
  const Factor1D& fy() const { return fy_; }

  Vec weights() const;  // diag(H2 ⊗ H1)
  Norm H() const;
  Mat Hx() const;  // I2 ⊗ H1
  Mat Hy() const;  // H2 ⊗ I1
  LinearMap Dx() const;
  LinearMap Dy() const;

  Vec xs() const;  // node coordinates per point
  Vec ys() const;

  // Structured application; ncomp components stored innermost.
  Vec apply_dx(const Vec& u, Index ncomp = 1) const;
  Vec apply_dy(const Vec& u, Index ncomp = 1) const;
  void apply_dx(const double* u, double* out, Index ncomp) const;
  void apply_dy(const double* u, double* out, Index ncomp) const;

 private:
  Factor1D fx_, fy_;
  Grid2D grid_;
};

Mat kron(const Mat& a, const Mat& b);

Ops2D build_ops2d(const SbpPair1D& opx, const SbpPair1D& opy);
Ops2D build_ops2d(const Factor1D& fx, const Factor1D& fy);

// Factored joins; throw constraint_violation when the shared-direction factors differ.
Ops2D assemble_two_block_x(const Ops2D& left, const Ops2D& right);
Ops2D assemble_two_block_y(const Ops2D& bottom, const Ops2D& top);
// blocks[i][j]: i is the x position, j the y position. x-joins first, then the y-join.
Ops2D assemble_four_block(const std::array<std::array<Ops2D, 2>, 2>& blocks);

// Dense operators assembled through the 2D embedding matrices; used as an independent route.
struct DenseOps2D {
  Index nx, ny;
  Mat H, Dx, Dy;
};
DenseOps2D dense_ops(const Ops2D& ops);
Mat embedding_x(Index nx_left, Index nx_right, Index ny);    // rows: [left state; right state]
Mat embedding_y(Index nx, Index ny_bottom, Index ny_top);    // rows: [bottom state; top state]
DenseOps2D join_x_dense(const DenseOps2D& left, const DenseOps2D& right);
DenseOps2D join_y_dense(const DenseOps2D& bottom, const DenseOps2D& top);
DenseOps2D four_block_dense(const std::array<std::array<Ops2D, 2>, 2>& blocks, bool x_first);

// Boundary segments in counterclockwise traversal: bottom, right, top (reversed), left (reversed).
struct BoundaryTrace2D {
  std::array<Vec, 4> segments;
  Vec embedded() const;    // length 2(N1+N2+2)
  Vec restricted() const;  // each segment without its last entry, length 2(N1+N2)
};

std::array<std::vector<Index>, 4> segment_points(const Grid2D& g);
BoundaryTrace2D boundary_trace(const Vec& u, const Grid2D& g);
// E: restricted -> embedded, 2(N+2) x 2N.
Mat boundary_embedding(const Grid2D& g);
// Restricted trace as a selection matrix, 2N x (N1+1)(N2+1).
Mat boundary_restriction(const Grid2D& g);
// diag(H1, H2, J H1 J, J H2 J) over the embedded boundary state.
Vec boundary_weights_plus(const Vec& h1, const Vec& h2);
Norm boundary_norm_gamma(const Grid2D& g, const Vec& h1, const Vec& h2);

// Characteristic boundary operator with per-point blocks for the four sides (bottom, right, top, left),
// each side in its natural (unreversed) ordering; d = blocks[k].cols() components per point.
Mat char_bc_2d(const Grid2D& g, const std::array<Mat, 4>& blocks);
// diag(h2_00 H1, h1_NN H2, h2_NN H1, h1_00 H2), each expanded by the block's row count.
Mat char_bc_norm_2d(const Vec& h1, const Vec& h2, const std::array<Mat, 4>& blocks);

}  // namespace sbpp
