#include "sbpp/bc.hpp"

#include "sbpp/pinv.hpp"

namespace sbpp {

BoundaryOperator bc_char_scalar(bool delta0, bool delta1, Index N) {
  require(N >= 1, ErrorCode::invalid_argument, "bc_char_scalar: N must be positive");
  Mat L = Mat::Zero(2, N + 1);
  L(0, 0) = delta0 ? 1.0 : 0.0;
  L(1, N) = delta1 ? 1.0 : 0.0;
  return {L, BoundaryOrigin::char_scalar};
}

Mat char_block(const Vec& lambda, const Mat& couplings, Side side) {
  const Index d = lambda.size();
  require(d >= 1, ErrorCode::invalid_argument, "char_block: empty wave-speed vector");
  require(couplings.rows() == d && couplings.cols() == d, ErrorCode::dimension_mismatch,
          "char_block: couplings must be d x d");
  Vec delta(d);
  for (Index i = 0; i < d; ++i)
    delta(i) = (side == Side::left ? lambda(i) > 0.0 : lambda(i) < 0.0) ? 1.0 : 0.0;
  Mat blk = Mat::Zero(d, d);
  for (Index i = 0; i < d; ++i) {
    if (delta(i) == 0.0) continue;
    blk(i, i) = 1.0;
    for (Index j = 0; j < d; ++j)
      if (j != i) blk(i, j) = -couplings(i, j) * (1.0 - delta(j));
  }
  return blk;
}

BoundaryOperator bc_char_system(const Vec& lambda, const Mat& couplings, Side side, Index N) {
  require(N >= 1, ErrorCode::invalid_argument, "bc_char_system: N must be positive");
  const Index d = lambda.size();
  Mat L = Mat::Zero(d, (N + 1) * d);
  const Index point = side == Side::left ? 0 : N;
  L.block(0, point * d, d, d) = char_block(lambda, couplings, side);
  return {L, BoundaryOrigin::char_system};
}

BoundaryOperator bc_char_system_both(const Vec& lambda, const Mat& c_left, const Mat& c_right, Index N) {
  const Index d = lambda.size();
  Mat L(2 * d, (N + 1) * d);
  L.topRows(d) = bc_char_system(lambda, c_left, Side::left, N).L;
  L.bottomRows(d) = bc_char_system(lambda, c_right, Side::right, N).L;
  return {L, BoundaryOrigin::char_system};
}

BoundaryOperator bc_neumann_heat(const SbpPair1D& op) {
  const Mat& d = op.D.matrix();
  Mat L(2, op.points());
  L.row(0) = d.row(0);
  L.row(1) = d.row(op.N);
  return {L, BoundaryOrigin::neumann_heat};
}

std::optional<Mat> matched_boundary_norm(const Mat& L, const Mat& H, double tol) {
  const Index g = L.rows();
  const LinearMap le(L, Space::euclidean(L.cols()), Space::euclidean(g));
  const Mat lp = pinv_svd(le).matrix();
  const Mat lh = L * H;
  Mat hbar = lh * lp;
  if (rel_diff(lh, hbar * L) > tol) return std::nullopt;
  hbar = (0.5 * (hbar + hbar.transpose()) + (Mat::Identity(g, g) - L * lp)).eval();
  Eigen::LLT<Mat> llt(hbar);
  if (llt.info() != Eigen::Success) return std::nullopt;
  return hbar;
}

namespace {

BoundaryProjection project_with(const BoundaryOperator& L, const Norm& H, Norm hg, bool matched) {
  require(L.state_dim() == H.dim(), ErrorCode::dimension_mismatch,
          "boundary_projection: L columns differ from state dimension");
  require(hg.dim() == L.gamma_dim(), ErrorCode::dimension_mismatch,
          "boundary_projection: boundary norm size differs from L rows");
  const Space v(H);
  const Space vg(std::move(hg));
  const LinearMap lmap(L.L, v, vg);
  LinearMap lp = pinv_svd(lmap);
  const Index n = H.dim();
  Mat p = Mat::Identity(n, n) - lp.matrix() * L.L;
  return BoundaryProjection{LinearMap(std::move(p), v, v), std::move(lp), L, matched};
}

}  // namespace

BoundaryProjection boundary_projection(const BoundaryOperator& L, const Norm& H, BoundaryNormChoice choice) {
  require(L.gamma_dim() >= 1, ErrorCode::invalid_argument, "boundary_projection: L has no rows");
  if (choice == BoundaryNormChoice::matched) {
    if (auto hbar = matched_boundary_norm(L.L, H.matrix()))
      return project_with(L, H, Norm::detect(std::move(*hbar)), true);
  }
  return project_with(L, H, Norm::identity(L.gamma_dim()), false);
}

BoundaryProjection boundary_projection(const BoundaryOperator& L, const Norm& H, const Norm& H_gamma) {
  return project_with(L, H, H_gamma, false);
}

Vec lift_boundary_data(const BoundaryProjection& bp, const Vec& g) {
  require(g.size() == bp.source.gamma_dim(), ErrorCode::dimension_mismatch,
          "lift_boundary_data: g length differs from boundary dimension");
  return bp.Lplus.matrix() * g;
}

}  // namespace sbpp
