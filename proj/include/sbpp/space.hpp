#pragma once

#include <Eigen/Dense>
#include <memory>

#include "sbpp/errors.hpp"

namespace sbpp {

using Index = Eigen::Index;
using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using RowVec = Eigen::RowVectorXd;

enum class NormStructure { diagonal, restricted_full, full };

const char* to_string(NormStructure s);

// SPD weight matrix defining an inner product. Validated on construction.
class Norm {
 public:
  Norm(Mat m, NormStructure s);

  static Norm identity(Index n);
  static Norm diagonal(const Vec& d);
  // Picks the tightest structure tag the matrix satisfies.
  static Norm detect(Mat m);

  const Mat& matrix() const { return m_; }
  NormStructure structure() const { return s_; }
  Index dim() const { return m_.rows(); }
  bool is_diagonal() const { return s_ == NormStructure::diagonal; }

  Vec diag() const { return m_.diagonal(); }
  // Lower Cholesky factor G with G G^T = H.
  Mat cholesky_factor() const;
  Mat solve(const Mat& rhs) const;
  Mat inverse() const;

 private:
  Mat m_;
  NormStructure s_;
  Eigen::LLT<Mat> llt_;
};

class Space {
 public:
  explicit Space(Norm n) : norm_(std::make_shared<const Norm>(std::move(n))) {}
  static Space euclidean(Index n) { return Space(Norm::identity(n)); }

  Index dim() const { return norm_->dim(); }
  const Norm& norm() const { return *norm_; }
  bool shares_norm(const Space& o) const { return norm_ == o.norm_; }

 private:
  std::shared_ptr<const Norm> norm_;
};

// Dense matrix n x m acting from domain (dim m) to codomain (dim n).
class LinearMap {
 public:
  LinearMap(Mat m, Space domain, Space codomain);

  const Mat& matrix() const { return m_; }
  const Space& domain() const { return dom_; }
  const Space& codomain() const { return cod_; }
  Index rows() const { return m_.rows(); }
  Index cols() const { return m_.cols(); }

  Vec operator()(const Vec& x) const;

 private:
  Mat m_;
  Space dom_;
  Space cod_;
};

// Composition a∘b: requires b.codomain().dim() == a.domain().dim().
LinearMap compose(const LinearMap& a, const LinearMap& b);

double inner(const Space& space, const Vec& x, const Vec& y);
double norm_of(const Space& space, const Vec& x);

// T* = H1^{-1} T^T H2.
LinearMap adjoint(const LinearMap& T);

// H^{-1} via the 2x2 block formula with Schur complement of H11.
Mat block_inverse_spd(const Norm& H, Index split);

// max|a-b| / max(max|a|, max|b|); zero when both vanish.
double rel_diff(const Mat& a, const Mat& b);
double max_abs(const Mat& a);

}  // namespace sbpp
