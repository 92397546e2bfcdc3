#include "sbpp/pinv.hpp"

#include <cmath>

namespace sbpp {

namespace {

#if defined(__SIZEOF_FLOAT128__)
using Wide = __float128;
#else
using Wide = long double;
#endif

struct Whitened {
  Mat g1, g2;  // lower Cholesky factors of H1, H2
  Mat that;    // G2^T T G1^{-T}
};

Whitened whiten(const LinearMap& T) {
  Whitened w;
  w.g1 = T.domain().norm().cholesky_factor();
  w.g2 = T.codomain().norm().cholesky_factor();
  const Mat x = w.g1.triangularView<Eigen::Lower>().solve(T.matrix().transpose()).transpose();
  w.that = w.g2.transpose() * x;
  return w;
}

}  // namespace

LinearMap pinv_svd(const LinearMap& T, double rank_tol) {
  const Index n = T.rows(), m = T.cols();
  if (max_abs(T.matrix()) == 0.0) return LinearMap(Mat::Zero(m, n), T.codomain(), T.domain());

  Whitened w = whiten(T);
  Eigen::BDCSVD<Mat> svd(w.that, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& s = svd.singularValues();
  const double cut = rank_tol * s(0);
  Vec sinv = Vec::Zero(s.size());
  for (Index k = 0; k < s.size(); ++k)
    if (s(k) > cut) sinv(k) = 1.0 / s(k);

  const Mat core = svd.matrixV() * sinv.asDiagonal() * svd.matrixU().transpose() * w.g2.transpose();
  Mat out = w.g1.transpose().triangularView<Eigen::Upper>().solve(core);
  return LinearMap(std::move(out), T.codomain(), T.domain());
}

int weighted_rank(const LinearMap& T, double rank_tol) {
  if (max_abs(T.matrix()) == 0.0) return 0;
  Eigen::BDCSVD<Mat> svd(whiten(T).that);
  const Vec& s = svd.singularValues();
  int r = 0;
  for (Index k = 0; k < s.size(); ++k)
    if (s(k) > rank_tol * s(0)) ++r;
  return r;
}

TikhonovResult pinv_tikhonov(const LinearMap& T, const std::vector<double>& deltas) {
  require(!deltas.empty(), ErrorCode::invalid_argument, "pinv_tikhonov: empty delta sequence");
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    require(deltas[k] > 0.0, ErrorCode::invalid_argument, "pinv_tikhonov: deltas must be positive");
    if (k > 0)
      require(deltas[k] < deltas[k - 1], ErrorCode::invalid_argument, "pinv_tikhonov: deltas must decrease");
  }
  require(deltas.back() >= 1e-7, ErrorCode::invalid_argument, "pinv_tikhonov: final delta below 1e-7");

  // H1 (T*T + d^2 I) = T^T H2 T + d^2 H1. Rounding in null(T) directions is amplified by about
  // |T|^2 / d^2, which at d = 1e-6 swamps double and long double; the maps here are small, so the
  // normal equations are formed and solved by LDL^T in quad precision.
  const Index m = T.rows(), n = T.cols();
  using Q = Wide;
  std::vector<Q> t(m * n), h1(n * n), h2(m * m), b(n * m), g(n * n);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) t[i * n + j] = T.matrix()(i, j);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) h1[i * n + j] = T.domain().norm().matrix()(i, j);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j) h2[i * m + j] = T.codomain().norm().matrix()(i, j);
  for (Index i = 0; i < n; ++i)  // b = T^T H2
    for (Index j = 0; j < m; ++j) {
      Q acc = 0;
      for (Index k = 0; k < m; ++k) acc += t[k * n + i] * h2[k * m + j];
      b[i * m + j] = acc;
    }
  for (Index i = 0; i < n; ++i)  // g = T^T H2 T
    for (Index j = 0; j < n; ++j) {
      Q acc = 0;
      for (Index k = 0; k < m; ++k) acc += b[i * m + k] * t[k * n + j];
      g[i * n + j] = acc;
    }

  std::vector<Mat> its;
  its.reserve(deltas.size());
  std::vector<Q> a(n * n), x(n * m);
  for (double d : deltas) {
    const Q d2 = static_cast<Q>(d) * static_cast<Q>(d);
    for (Index k = 0; k < n * n; ++k) a[k] = g[k] + d2 * h1[k];
    // In-place LDL^T: strict lower part holds L, diagonal holds D.
    for (Index j = 0; j < n; ++j) {
      for (Index k = 0; k < j; ++k) a[j * n + j] -= a[j * n + k] * a[j * n + k] * a[k * n + k];
      if (!(a[j * n + j] > 0))
        throw Error(ErrorCode::ill_conditioned, "pinv_tikhonov: shifted system not SPD at delta=" + std::to_string(d));
      for (Index i = j + 1; i < n; ++i) {
        Q v = a[i * n + j];
        for (Index k = 0; k < j; ++k) v -= a[i * n + k] * a[j * n + k] * a[k * n + k];
        a[i * n + j] = v / a[j * n + j];
      }
    }
    Mat out(n, m);
    for (Index c = 0; c < m; ++c) {
      for (Index i = 0; i < n; ++i) {
        Q v = b[i * m + c];
        for (Index k = 0; k < i; ++k) v -= a[i * n + k] * x[k * m + c];
        x[i * m + c] = v;
      }
      for (Index i = 0; i < n; ++i) x[i * m + c] /= a[i * n + i];
      for (Index i = n - 1; i >= 0; --i) {
        Q v = x[i * m + c];
        for (Index k = i + 1; k < n; ++k) v -= a[k * n + i] * x[k * m + c];
        x[i * m + c] = v;
        out(i, c) = static_cast<double>(v);
      }
    }
    its.push_back(std::move(out));
  }
  LinearMap last(its.back(), T.codomain(), T.domain());
  return TikhonovResult{std::move(last), deltas, std::move(its)};
}

Mat pinv_greville(const std::vector<RowVec>& rows, double branch_tol) {
  require(!rows.empty(), ErrorCode::invalid_argument, "pinv_greville: empty row list");
  const Index n = rows.front().size();
  for (const auto& r : rows)
    require(r.size() == n, ErrorCode::dimension_mismatch, "pinv_greville: rows of unequal length");

  Mat lt(1, n);
  lt.row(0) = rows[0];
  const double nrm2 = rows[0].squaredNorm();
  Mat lp = nrm2 > 0.0 ? Mat(rows[0].transpose() / nrm2) : Mat(Mat::Zero(n, 1));

  for (std::size_t j = 1; j < rows.size(); ++j) {
    const RowVec& l = rows[j];
    const RowVec resid = l - (l * lp) * lt;  // L_j (I - L~+ L~)
    const double lam = resid.norm();
    RowVec k;
    if (lam > branch_tol * l.norm()) {
      k = resid / (lam * lam);
    } else {
      const RowVec lj_lp = l * lp;
      const double mu2 = lj_lp.squaredNorm();
      k = (lj_lp * lp.transpose()) / (1.0 + mu2);
    }
    Mat next(n, lp.cols() + 1);
    next.leftCols(lp.cols()) = lp - k.transpose() * (l * lp);
    next.col(lp.cols()) = k.transpose();
    lp = std::move(next);

    Mat grown(lt.rows() + 1, n);
    grown.topRows(lt.rows()) = lt;
    grown.row(lt.rows()) = l;
    lt = std::move(grown);
  }
  return lp;
}

Mat pinv_greville(const Mat& L, double branch_tol) {
  std::vector<RowVec> rows;
  rows.reserve(L.rows());
  for (Index i = 0; i < L.rows(); ++i) rows.emplace_back(L.row(i));
  return pinv_greville(rows, branch_tol);
}

PenroseReport check_penrose(const LinearMap& T, const LinearMap& S, double tol) {
  require(S.rows() == T.cols() && S.cols() == T.rows(), ErrorCode::dimension_mismatch,
          "check_penrose: S must have the transposed shape of T");
  const Mat& t = T.matrix();
  const Mat& s = S.matrix();
  const Mat& h1 = T.domain().norm().matrix();
  const Mat& h2 = T.codomain().norm().matrix();
  const Mat st = s * t;
  const Mat ts = t * s;

  PenroseReport rep;
  rep.residuals[0] = rel_diff(t * st, t);
  rep.residuals[1] = rel_diff(st * s, s);
  rep.residuals[2] = rel_diff(st.transpose() * h1, h1 * st);
  rep.residuals[3] = rel_diff(ts.transpose() * h2, h2 * ts);
  rep.rank_estimate = weighted_rank(T);
  rep.tolerance = tol;
  rep.pass = true;
  for (double r : rep.residuals) rep.pass = rep.pass && r <= tol;
  return rep;
}

std::pair<LinearMap, LinearMap> canonical_projections(const LinearMap& T) {
  const LinearMap tp = pinv_svd(T);
  return {compose(tp, T), compose(T, tp)};
}

}  // namespace sbpp
