#include "sbpp/space.hpp"

#include <cmath>
#include <string>

namespace sbpp {

namespace {

constexpr double kSymTol = 1e-13;

bool is_exactly_diagonal(const Mat& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (i != j && m(i, j) != 0.0) return false;
  return true;
}

bool is_restricted_full(const Mat& m) {
  const Index n = m.rows();
  if (n < 2) return true;
  for (Index k = 1; k < n; ++k) {
    if (m(0, k) != 0.0 || m(k, 0) != 0.0) return false;
    if (m(n - 1, k - 1) != 0.0 || m(k - 1, n - 1) != 0.0) return false;
  }
  return true;
}

}  // namespace

const char* to_string(NormStructure s) {
  switch (s) {
    case NormStructure::diagonal: return "diagonal";
    case NormStructure::restricted_full: return "restricted-full";
    case NormStructure::full: return "full";
  }
  return "?";
}

Norm::Norm(Mat m, NormStructure s) : m_(std::move(m)), s_(s) {
  require(m_.rows() > 0 && m_.rows() == m_.cols(), ErrorCode::dimension_mismatch,
          "norm matrix must be square and non-empty");
  const double scale = max_abs(m_);
  require(scale > 0.0 && std::isfinite(scale), ErrorCode::not_spd, "norm matrix is zero or not finite");
  require(max_abs(m_ - m_.transpose()) <= kSymTol * scale, ErrorCode::not_spd, "norm matrix is not symmetric");
  // Exact symmetry, so consumers reading either triangle see the same matrix.
  m_ = (0.5 * (m_ + m_.transpose())).eval();
  if (s_ == NormStructure::diagonal)
    require(is_exactly_diagonal(m_), ErrorCode::invalid_argument, "diagonal norm has off-diagonal entries");
  if (s_ == NormStructure::restricted_full)
    require(is_restricted_full(m_), ErrorCode::invalid_argument,
            "restricted-full norm couples a boundary point to the interior");
  llt_.compute(m_);
  require(llt_.info() == Eigen::Success, ErrorCode::not_spd, "norm matrix is not positive definite");
}

Norm Norm::identity(Index n) { return Norm(Mat::Identity(n, n), NormStructure::diagonal); }

Norm Norm::diagonal(const Vec& d) { return Norm(Mat(d.asDiagonal()), NormStructure::diagonal); }

Norm Norm::detect(Mat m) {
  NormStructure s = NormStructure::full;
  if (m.rows() == m.cols()) {
    if (is_exactly_diagonal(m)) s = NormStructure::diagonal;
    else if (is_restricted_full(m)) s = NormStructure::restricted_full;
  }
  return Norm(std::move(m), s);
}

Mat Norm::cholesky_factor() const { return llt_.matrixL(); }

Mat Norm::solve(const Mat& rhs) const {
  require(rhs.rows() == dim(), ErrorCode::dimension_mismatch, "norm solve: row count mismatch");
  if (is_diagonal()) return m_.diagonal().cwiseInverse().asDiagonal() * rhs;
  return llt_.solve(rhs);
}

Mat Norm::inverse() const { return solve(Mat::Identity(dim(), dim())); }

LinearMap::LinearMap(Mat m, Space domain, Space codomain)
    : m_(std::move(m)), dom_(std::move(domain)), cod_(std::move(codomain)) {
  require(m_.cols() == dom_.dim() && m_.rows() == cod_.dim(), ErrorCode::dimension_mismatch,
          "linear map shape " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
              " does not match spaces " + std::to_string(cod_.dim()) + " <- " + std::to_string(dom_.dim()));
}

Vec LinearMap::operator()(const Vec& x) const {
  require(x.size() == cols(), ErrorCode::dimension_mismatch, "linear map applied to vector of wrong length");
  return m_ * x;
}

LinearMap compose(const LinearMap& a, const LinearMap& b) {
  require(a.cols() == b.rows(), ErrorCode::dimension_mismatch, "compose: inner dimensions differ");
  return LinearMap(a.matrix() * b.matrix(), b.domain(), a.codomain());
}

double inner(const Space& space, const Vec& x, const Vec& y) {
  require(x.size() == space.dim() && y.size() == space.dim(), ErrorCode::dimension_mismatch,
          "inner: vector length differs from space dimension");
  const Norm& n = space.norm();
  if (n.is_diagonal()) return (x.array() * n.matrix().diagonal().array() * y.array()).sum();
  return x.dot(n.matrix() * y);
}

double norm_of(const Space& space, const Vec& x) { return std::sqrt(inner(space, x, x)); }

LinearMap adjoint(const LinearMap& T) {
  const Mat m = T.domain().norm().solve(T.matrix().transpose() * T.codomain().norm().matrix());
  return LinearMap(m, T.codomain(), T.domain());
}

Mat block_inverse_spd(const Norm& H, Index split) {
  const Index n = H.dim();
  require(split > 0 && split < n, ErrorCode::invalid_argument, "block_inverse_spd: split out of range");
  const Mat& h = H.matrix();
  const Index m = n - split;
  const Mat h11 = h.topLeftCorner(split, split);
  const Mat h12 = h.topRightCorner(split, m);
  const Mat h21 = h.bottomLeftCorner(m, split);
  const Mat h22 = h.bottomRightCorner(m, m);

  Eigen::LLT<Mat> l11(h11);
  require(l11.info() == Eigen::Success, ErrorCode::not_spd, "block_inverse_spd: leading block not SPD");
  const Mat h11inv_h12 = l11.solve(h12);
  const Mat S = h22 - h21 * h11inv_h12;
  Eigen::LLT<Mat> ls(S);
  require(ls.info() == Eigen::Success, ErrorCode::not_spd, "block_inverse_spd: Schur complement not SPD");
  const Mat Sinv = ls.solve(Mat::Identity(m, m));

  Mat inv(n, n);
  inv.topLeftCorner(split, split) =
      l11.solve(Mat::Identity(split, split)) + h11inv_h12 * Sinv * h11inv_h12.transpose();
  inv.topRightCorner(split, m) = -h11inv_h12 * Sinv;
  inv.bottomLeftCorner(m, split) = -Sinv * h11inv_h12.transpose();
  inv.bottomRightCorner(m, m) = Sinv;
  return inv;
}

double max_abs(const Mat& a) { return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff(); }

double rel_diff(const Mat& a, const Mat& b) {
  require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::dimension_mismatch, "rel_diff: shapes differ");
  const double scale = std::max(max_abs(a), max_abs(b));
  if (scale == 0.0) return 0.0;
  return max_abs(a - b) / scale;
}

}  // namespace sbpp
