#include "sbpp/tensor2d.hpp"

#include <cstring>

namespace sbpp {

Factor1D::Factor1D(Mat D, Vec h, Vec x, int boundary_order)
    : D_(std::move(D)), h_(std::move(h)), x_(std::move(x)), bo_(boundary_order) {
  const Index n = D_.rows();
  require(D_.cols() == n && h_.size() == n && x_.size() == n, ErrorCode::dimension_mismatch,
          "Factor1D: inconsistent sizes");
  lo_.assign(n, 0);
  hi_.assign(n, -1);
  for (Index i = 0; i < n; ++i) {
    Index lo = n, hi = -1;
    for (Index k = 0; k < n; ++k)
      if (D_(i, k) != 0.0) {
        lo = std::min(lo, k);
        hi = k;
      }
    if (hi >= 0) {
      lo_[i] = lo;
      hi_[i] = hi;
    }
  }
}

Factor1D Factor1D::from(const SbpPair1D& op) {
  return Factor1D(op.D.matrix(), op.H().diag(), op.grid(), op.boundary_order);
}

Factor1D Factor1D::from(const MultiBlockAssembly1D& m) {
  return Factor1D(m.D.matrix(), m.H().diag(), m.grid(), m.boundary_order());
}

bool Factor1D::matches(const Factor1D& o, double tol) const {
  if (points() != o.points()) return false;
  return rel_diff(D_, o.D_) <= tol && rel_diff(h_, o.h_) <= tol && rel_diff(x_, o.x_) <= tol;
}

Factor1D join_factors(const Factor1D& a, const Factor1D& b) {
  const Index n1 = a.points(), n2 = b.points();
  const Mat E = build_embedding1d(n1 - 1, n2 - 1);
  Vec hplus(n1 + n2);
  hplus << a.h(), b.h();
  Mat dplus = Mat::Zero(n1 + n2, n1 + n2);
  dplus.topLeftCorner(n1, n1) = a.D();
  dplus.bottomRightCorner(n2, n2) = b.D();
  const Vec hd = E.transpose() * hplus;
  Mat D = hd.cwiseInverse().asDiagonal() * (E.transpose() * (hplus.asDiagonal() * (dplus * E)));
  Vec x(n1 + n2 - 1);
  x.head(n1) = a.x();
  x.tail(n2 - 1) = (b.x().tail(n2 - 1).array() - b.x()(0) + a.x()(n1 - 1)).matrix();
  return Factor1D(std::move(D), hd, std::move(x), std::min(a.boundary_order(), b.boundary_order()));
}

Vec Grid2D::to_column_view(const Vec& u) const {
  require(u.size() == size(), ErrorCode::dimension_mismatch, "to_column_view: wrong length");
  Vec out(size());
  for (Index j = 0; j < ny(); ++j)
    for (Index i = 0; i < nx(); ++i) out(i * ny() + j) = u(index(i, j));
  return out;
}

Vec Grid2D::from_column_view(const Vec& u) const {
  require(u.size() == size(), ErrorCode::dimension_mismatch, "from_column_view: wrong length");
  Vec out(size());
  for (Index j = 0; j < ny(); ++j)
    for (Index i = 0; i < nx(); ++i) out(index(i, j)) = u(i * ny() + j);
  return out;
}

Ops2D::Ops2D(Factor1D fx, Factor1D fy)
    : fx_(std::move(fx)), fy_(std::move(fy)), grid_{fx_.intervals(), fy_.intervals()} {}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vec Ops2D::weights() const {
  Vec w(grid_.size());
  for (Index j = 0; j < grid_.ny(); ++j)
    for (Index i = 0; i < grid_.nx(); ++i) w(grid_.index(i, j)) = fy_.h()(j) * fx_.h()(i);
  return w;
}

Norm Ops2D::H() const { return Norm::diagonal(weights()); }

Mat Ops2D::Hx() const {
  return kron(Mat::Identity(grid_.ny(), grid_.ny()), Mat(fx_.h().asDiagonal()));
}

Mat Ops2D::Hy() const {
  return kron(Mat(fy_.h().asDiagonal()), Mat::Identity(grid_.nx(), grid_.nx()));
}

LinearMap Ops2D::Dx() const {
  Space s(H());
  return LinearMap(kron(Mat::Identity(grid_.ny(), grid_.ny()), fx_.D()), s, s);
}

LinearMap Ops2D::Dy() const {
  Space s(H());
  return LinearMap(kron(fy_.D(), Mat::Identity(grid_.nx(), grid_.nx())), s, s);
}

Vec Ops2D::xs() const {
  Vec x(grid_.size());
  for (Index j = 0; j < grid_.ny(); ++j) x.segment(j * grid_.nx(), grid_.nx()) = fx_.x();
  return x;
}

Vec Ops2D::ys() const {
  Vec y(grid_.size());
  for (Index j = 0; j < grid_.ny(); ++j) y.segment(j * grid_.nx(), grid_.nx()).setConstant(fy_.x()(j));
  return y;
}

void Ops2D::apply_dx(const double* u, double* out, Index ncomp) const {
  const Index nx = grid_.nx(), ny = grid_.ny();
  const Mat& D = fx_.D();
  for (Index j = 0; j < ny; ++j) {
    const double* uj = u + j * nx * ncomp;
    double* oj = out + j * nx * ncomp;
    for (Index i = 0; i < nx; ++i) {
      double* o = oj + i * ncomp;
      for (Index c = 0; c < ncomp; ++c) o[c] = 0.0;
      for (Index k = fx_.band_lo(i); k <= fx_.band_hi(i); ++k) {
        const double d = D(i, k);
        const double* uk = uj + k * ncomp;
        for (Index c = 0; c < ncomp; ++c) o[c] += d * uk[c];
      }
    }
  }
}

void Ops2D::apply_dy(const double* u, double* out, Index ncomp) const {
  const Index nx = grid_.nx(), ny = grid_.ny();
  const Index row = nx * ncomp;
  const Mat& D = fy_.D();
  for (Index j = 0; j < ny; ++j) {
    Eigen::Map<Eigen::ArrayXd> o(out + j * row, row);
    o.setZero();
    for (Index k = fy_.band_lo(j); k <= fy_.band_hi(j); ++k)
      o += D(j, k) * Eigen::Map<const Eigen::ArrayXd>(u + k * row, row);
  }
}

Vec Ops2D::apply_dx(const Vec& u, Index ncomp) const {
  require(u.size() == grid_.size() * ncomp, ErrorCode::dimension_mismatch, "apply_dx: wrong length");
  Vec out(u.size());
  apply_dx(u.data(), out.data(), ncomp);
  return out;
}

Vec Ops2D::apply_dy(const Vec& u, Index ncomp) const {
  require(u.size() == grid_.size() * ncomp, ErrorCode::dimension_mismatch, "apply_dy: wrong length");
  Vec out(u.size());
  apply_dy(u.data(), out.data(), ncomp);
  return out;
}

Ops2D build_ops2d(const SbpPair1D& opx, const SbpPair1D& opy) {
  return Ops2D(Factor1D::from(opx), Factor1D::from(opy));
}

Ops2D build_ops2d(const Factor1D& fx, const Factor1D& fy) { return Ops2D(fx, fy); }

Ops2D assemble_two_block_x(const Ops2D& left, const Ops2D& right) {
  require(left.fy().matches(right.fy()), ErrorCode::constraint_violation,
          "assemble_two_block_x: blocks do not share the y-direction norm and operator");
  return Ops2D(join_factors(left.fx(), right.fx()), left.fy());
}

Ops2D assemble_two_block_y(const Ops2D& bottom, const Ops2D& top) {
  require(bottom.fx().matches(top.fx()), ErrorCode::constraint_violation,
          "assemble_two_block_y: blocks do not share the x-direction norm and operator");
  return Ops2D(bottom.fx(), join_factors(bottom.fy(), top.fy()));
}

Ops2D assemble_four_block(const std::array<std::array<Ops2D, 2>, 2>& b) {
  for (int i = 0; i < 2; ++i)
    require(b[i][0].fx().matches(b[i][1].fx()), ErrorCode::constraint_violation,
            "assemble_four_block: blocks in one column must share the x-direction factor");
  for (int j = 0; j < 2; ++j)
    require(b[0][j].fy().matches(b[1][j].fy()), ErrorCode::constraint_violation,
            "assemble_four_block: blocks in one row must share the y-direction factor");
  const Ops2D bottom = assemble_two_block_x(b[0][0], b[1][0]);
  const Ops2D top = assemble_two_block_x(b[0][1], b[1][1]);
  return assemble_two_block_y(bottom, top);
}

DenseOps2D dense_ops(const Ops2D& ops) {
  return {ops.grid().nx(), ops.grid().ny(), Mat(ops.weights().asDiagonal()), ops.Dx().matrix(), ops.Dy().matrix()};
}

Mat embedding_x(Index nxa, Index nxb, Index ny) {
  const Index nx = nxa + nxb - 1;
  Mat E = Mat::Zero((nxa + nxb) * ny, nx * ny);
  for (Index j = 0; j < ny; ++j) {
    for (Index i = 0; i < nxa; ++i) E(j * nxa + i, j * nx + i) = 1.0;
    for (Index i = 0; i < nxb; ++i) E(nxa * ny + j * nxb + i, j * nx + nxa - 1 + i) = 1.0;
  }
  return E;
}

Mat embedding_y(Index nx, Index nya, Index nyb) {
  const Index ny = nya + nyb - 1;
  Mat E = Mat::Zero(nx * (nya + nyb), nx * ny);
  for (Index j = 0; j < nya; ++j)
    for (Index i = 0; i < nx; ++i) E(j * nx + i, j * nx + i) = 1.0;
  for (Index j = 0; j < nyb; ++j)
    for (Index i = 0; i < nx; ++i) E(nx * nya + j * nx + i, (nya - 1 + j) * nx + i) = 1.0;
  return E;
}

namespace {

DenseOps2D join_dense(const DenseOps2D& a, const DenseOps2D& b, const Mat& E, Index nx, Index ny) {
  const Index na = a.H.rows(), nb = b.H.rows();
  Mat hplus = Mat::Zero(na + nb, na + nb);
  hplus.topLeftCorner(na, na) = a.H;
  hplus.bottomRightCorner(nb, nb) = b.H;
  auto blockdiag = [&](const Mat& x, const Mat& y) {
    Mat m = Mat::Zero(na + nb, na + nb);
    m.topLeftCorner(na, na) = x;
    m.bottomRightCorner(nb, nb) = y;
    return m;
  };
  const Mat H = E.transpose() * hplus * E;
  const Mat et_hp = E.transpose() * hplus;
  Eigen::LLT<Mat> llt(H);
  require(llt.info() == Eigen::Success, ErrorCode::not_spd, "join_dense: assembled norm not SPD");
  const Mat Dx = llt.solve(et_hp * blockdiag(a.Dx, b.Dx) * E);
  const Mat Dy = llt.solve(et_hp * blockdiag(a.Dy, b.Dy) * E);
  return {nx, ny, H, Dx, Dy};
}

}  // namespace

DenseOps2D join_x_dense(const DenseOps2D& a, const DenseOps2D& b) {
  require(a.ny == b.ny, ErrorCode::constraint_violation, "join_x_dense: row counts differ");
  return join_dense(a, b, embedding_x(a.nx, b.nx, a.ny), a.nx + b.nx - 1, a.ny);
}

DenseOps2D join_y_dense(const DenseOps2D& a, const DenseOps2D& b) {
  require(a.nx == b.nx, ErrorCode::constraint_violation, "join_y_dense: column counts differ");
  return join_dense(a, b, embedding_y(a.nx, a.ny, b.ny), a.nx, a.ny + b.ny - 1);
}

DenseOps2D four_block_dense(const std::array<std::array<Ops2D, 2>, 2>& b, bool x_first) {
  const DenseOps2D d00 = dense_ops(b[0][0]), d10 = dense_ops(b[1][0]);
  const DenseOps2D d01 = dense_ops(b[0][1]), d11 = dense_ops(b[1][1]);
  if (x_first) return join_y_dense(join_x_dense(d00, d10), join_x_dense(d01, d11));
  return join_x_dense(join_y_dense(d00, d01), join_y_dense(d10, d11));
}

std::array<std::vector<Index>, 4> segment_points(const Grid2D& g) {
  std::array<std::vector<Index>, 4> s;
  for (Index i = 0; i <= g.N1; ++i) s[0].push_back(g.index(i, 0));
  for (Index j = 0; j <= g.N2; ++j) s[1].push_back(g.index(g.N1, j));
  for (Index i = g.N1; i >= 0; --i) s[2].push_back(g.index(i, g.N2));
  for (Index j = g.N2; j >= 0; --j) s[3].push_back(g.index(0, j));
  return s;
}

Vec BoundaryTrace2D::embedded() const {
  Index n = 0;
  for (const auto& s : segments) n += s.size();
  Vec out(n);
  Index o = 0;
  for (const auto& s : segments) {
    out.segment(o, s.size()) = s;
    o += s.size();
  }
  return out;
}

Vec BoundaryTrace2D::restricted() const {
  Index n = 0;
  for (const auto& s : segments) n += s.size() - 1;
  Vec out(n);
  Index o = 0;
  for (const auto& s : segments) {
    out.segment(o, s.size() - 1) = s.head(s.size() - 1);
    o += s.size() - 1;
  }
  return out;
}

BoundaryTrace2D boundary_trace(const Vec& u, const Grid2D& g) {
  require(u.size() == g.size(), ErrorCode::dimension_mismatch, "boundary_trace: wrong state length");
  BoundaryTrace2D t;
  const auto pts = segment_points(g);
  for (int k = 0; k < 4; ++k) {
    t.segments[k].resize(pts[k].size());
    for (std::size_t m = 0; m < pts[k].size(); ++m) t.segments[k](m) = u(pts[k][m]);
  }
  return t;
}

Mat boundary_embedding(const Grid2D& g) {
  const std::array<Index, 4> len{g.N1 + 1, g.N2 + 1, g.N1 + 1, g.N2 + 1};
  const Index nr = 2 * (g.N1 + g.N2);
  Mat E = Mat::Zero(nr + 4, nr);
  Index row = 0, col = 0;
  for (int k = 0; k < 4; ++k) {
    for (Index m = 0; m + 1 < len[k]; ++m) E(row++, col++) = 1.0;
    E(row++, col % nr) = 1.0;  // segment end is the next segment's first point
  }
  return E;
}

Mat boundary_restriction(const Grid2D& g) {
  const auto pts = segment_points(g);
  Mat R = Mat::Zero(2 * (g.N1 + g.N2), g.size());
  Index row = 0;
  for (const auto& s : pts)
    for (std::size_t m = 0; m + 1 < s.size(); ++m) R(row++, s[m]) = 1.0;
  return R;
}

Vec boundary_weights_plus(const Vec& h1, const Vec& h2) {
  Vec w(2 * (h1.size() + h2.size()));
  w << h1, h2, h1.reverse(), h2.reverse();
  return w;
}

Norm boundary_norm_gamma(const Grid2D& g, const Vec& h1, const Vec& h2) {
  require(h1.size() == g.nx() && h2.size() == g.ny(), ErrorCode::dimension_mismatch,
          "boundary_norm_gamma: weight lengths differ from grid");
  const Mat E = boundary_embedding(g);
  return Norm::detect(E.transpose() * boundary_weights_plus(h1, h2).asDiagonal() * E);
}

Mat char_bc_2d(const Grid2D& g, const std::array<Mat, 4>& blocks) {
  const Index d = blocks[0].cols();
  for (const auto& b : blocks)
    require(b.cols() == d, ErrorCode::dimension_mismatch, "char_bc_2d: blocks must share the component count");
  const std::array<Index, 4> npts{g.nx(), g.ny(), g.nx(), g.ny()};
  Index rows = 0;
  for (int k = 0; k < 4; ++k) rows += npts[k] * blocks[k].rows();
  Mat L = Mat::Zero(rows, g.size() * d);
  Index r = 0;
  for (int k = 0; k < 4; ++k) {
    const Mat& b = blocks[k];
    for (Index m = 0; m < npts[k]; ++m) {
      Index p = 0;
      switch (k) {
        case 0: p = g.index(m, 0); break;
        case 1: p = g.index(g.N1, m); break;
        case 2: p = g.index(m, g.N2); break;
        default: p = g.index(0, m); break;
      }
      L.block(r, p * d, b.rows(), d) = b;
      r += b.rows();
    }
  }
  return L;
}

Mat char_bc_norm_2d(const Vec& h1, const Vec& h2, const std::array<Mat, 4>& blocks) {
  const std::array<double, 4> scale{h2(0), h1(h1.size() - 1), h2(h2.size() - 1), h1(0)};
  const std::array<const Vec*, 4> w{&h1, &h2, &h1, &h2};
  Index rows = 0;
  for (int k = 0; k < 4; ++k) rows += w[k]->size() * blocks[k].rows();
  Vec diag(rows);
  Index r = 0;
  for (int k = 0; k < 4; ++k)
    for (Index m = 0; m < w[k]->size(); ++m)
      for (Index c = 0; c < blocks[k].rows(); ++c) diag(r++) = scale[k] * (*w[k])(m);
  return diag.asDiagonal();
}

}  // namespace sbpp
