#include "sbpp/sbp1d.hpp"

#include <cmath>
#include <string>

namespace sbpp {

namespace {

constexpr double q(double a, double b) { return a / b; }

ClosureData make_order2() {
  return {{q(1, 2)}, {{-1.0, 1.0}}, {q(1, 2)}, 1};
}

ClosureData make_order2_wide() {
  return {{q(1, 3), q(4, 3), q(5, 6)},
          {{q(-3, 2), 2.0, q(-1, 2)},
           {q(-1, 2), 0.0, q(1, 2)},
           {q(1, 5), q(-4, 5), 0.0, q(3, 5)}},
          {q(1, 2)},
          1};
}

ClosureData make_order4() {
  return {{q(17, 48), q(59, 48), q(43, 48), q(49, 48)},
          {{q(-24, 17), q(59, 34), q(-4, 17), q(-3, 34), 0.0, 0.0},
           {q(-1, 2), 0.0, q(1, 2), 0.0, 0.0, 0.0},
           {q(4, 43), q(-59, 86), 0.0, q(59, 86), q(-4, 43), 0.0},
           {q(3, 98), 0.0, q(-59, 98), 0.0, q(32, 49), q(-4, 49)}},
          {q(2, 3), q(-1, 12)},
          2};
}

// Free parameter of the sixth-order family fixed at 342523/518400.
ClosureData make_order6() {
  return {{q(13649, 43200), q(12013, 8640), q(2711, 4320), q(5359, 4320), q(7877, 8640), q(43801, 43200)},
          {{q(-21600, 13649), q(104009, 54596), q(30443, 81894), q(-33311, 27298), q(16863, 27298),
            q(-15025, 163788), 0.0, 0.0, 0.0},
           {q(-104009, 240260), 0.0, q(-311, 72078), q(20229, 24026), q(-24337, 48052), q(36661, 360390), 0.0,
            0.0, 0.0},
           {q(-30443, 162660), q(311, 32532), 0.0, q(-11155, 16266), q(41287, 32532), q(-21999, 54220), 0.0, 0.0,
            0.0},
           {q(33311, 107180), q(-20229, 21436), q(485, 1398), 0.0, q(4147, 21436), q(25427, 321540), q(72, 5359),
            0.0, 0.0},
           {q(-16863, 78770), q(24337, 31508), q(-41287, 47262), q(-4147, 15754), 0.0, q(342523, 472620),
            q(-1296, 7877), q(144, 7877), 0.0},
           {q(15025, 525612), q(-36661, 262806), q(21999, 87602), q(-25427, 262806), q(-342523, 525612), 0.0,
            q(32400, 43801), q(-6480, 43801), q(720, 43801)}},
          {q(3, 4), q(-3, 20), q(1, 60)},
          3};
}

}  // namespace

const ClosureData& closure_data(int order, Closure closure) {
  static const ClosureData o2 = make_order2();
  static const ClosureData o2w = make_order2_wide();
  static const ClosureData o4 = make_order4();
  static const ClosureData o6 = make_order6();
  if (closure == Closure::wide) {
    require(order == 2, ErrorCode::invalid_argument, "wide closure exists for order 2 only");
    return o2w;
  }
  switch (order) {
    case 2: return o2;
    case 4: return o4;
    case 6: return o6;
    default: break;
  }
  throw Error(ErrorCode::invalid_argument, "unsupported SBP order " + std::to_string(order));
}

Index min_intervals(int order, Closure closure) {
  const ClosureData& c = closure_data(order, closure);
  const Index r = static_cast<Index>(c.norm.size());
  const Index p = static_cast<Index>(c.stencil.size());
  // Rows r..r+p-1 carry the transposed closure coupling and must stay interior.
  return 2 * r + p - 1;
}

Vec SbpPair1D::grid() const { return Vec::LinSpaced(N + 1, 0.0, length); }

SbpPair1D build_sbp1d(int order, Index N, Closure closure, double length) {
  const ClosureData& c = closure_data(order, closure);
  require(length > 0.0, ErrorCode::invalid_argument, "build_sbp1d: length must be positive");
  require(N >= min_intervals(order, closure), ErrorCode::invalid_argument,
          "build_sbp1d: N=" + std::to_string(N) + " too small for order " + std::to_string(order) +
              " (need N >= " + std::to_string(min_intervals(order, closure)) + ")");

  const Index n = N + 1;
  const Index r = static_cast<Index>(c.norm.size());
  const Index p = static_cast<Index>(c.stencil.size());
  const double h = length / static_cast<double>(N);

  Vec hd = Vec::Constant(n, h);
  for (Index i = 0; i < r; ++i) {
    hd(i) = h * c.norm[i];
    hd(N - i) = h * c.norm[i];
  }

  Mat d = Mat::Zero(n, n);
  for (Index i = r; i <= N - r; ++i)
    for (Index k = 1; k <= p; ++k) {
      d(i, i + k) = c.stencil[k - 1] / h;
      d(i, i - k) = -c.stencil[k - 1] / h;
    }
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < static_cast<Index>(c.rows[i].size()); ++j) {
      d(i, j) = c.rows[i][j] / h;
      d(N - i, N - j) = -c.rows[i][j] / h;
    }

  Space sp(Norm::diagonal(hd));
  LinearMap D(std::move(d), sp, sp);
  return SbpPair1D{sp, std::move(D), order, c.boundary_order, static_cast<int>(r), N, h, length, closure};
}

Mat anti_reflect(const Mat& A) { return A.reverse(); }

std::vector<AccuracyRow> accuracy_report(const SbpPair1D& op, int q_max) {
  require(q_max >= 0 && q_max <= op.interior_order, ErrorCode::invalid_argument,
          "accuracy_report: q_max must lie in [0, interior order]");
  const Vec x = op.grid();
  const Index n = x.size();
  const Index r = op.closure_width;
  std::vector<AccuracyRow> out;
  for (int k = 0; k <= q_max; ++k) {
    const Vec xk = x.array().pow(k);
    const Vec exact = k == 0 ? Vec(Vec::Zero(n)) : Vec(k * x.array().pow(k - 1));
    const Vec err = (op.D.matrix() * xk - exact).cwiseAbs();
    AccuracyRow row{k, 0.0, 0.0};
    for (Index i = 0; i < n; ++i) {
      const bool closure_row = i < r || i > op.N - r;
      double& slot = closure_row ? row.closure_defect : row.interior_defect;
      slot = std::max(slot, err(i));
    }
    out.push_back(row);
  }
  return out;
}

double sbp_defect(const SbpPair1D& op, const Vec& u, const Vec& v) {
  require(u.size() == op.points() && v.size() == op.points(), ErrorCode::dimension_mismatch,
          "sbp_defect: vectors must have N+1 entries");
  const Vec du = op.D(u), dv = op.D(v);
  return inner(op.space, u, dv) + inner(op.space, du, v) - (u(op.N) * v(op.N) - u(0) * v(0));
}

Mat boundary_matrix_1d(Index points) {
  Mat b = Mat::Zero(points, points);
  b(0, 0) = -1.0;
  b(points - 1, points - 1) = 1.0;
  return b;
}

}  // namespace sbpp
