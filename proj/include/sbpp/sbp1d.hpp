#pragma once

#include <vector>

#include "sbpp/space.hpp"

namespace sbpp {

// standard: published minimal-width diagonal-norm closures.
// wide: second-order only, three-point one-sided first row, r = 3.
enum class Closure { standard, wide };

struct SbpPair1D {
  Space space;  // carries H
  LinearMap D;
  int interior_order;
  int boundary_order;
  int closure_width;
  Index N;
  double h;
  double length;
  Closure closure;

  const Norm& H() const { return space.norm(); }
  Index points() const { return N + 1; }
  Vec grid() const;
};

Index min_intervals(int order, Closure closure = Closure::standard);

SbpPair1D build_sbp1d(int order, Index N, Closure closure = Closure::standard, double length = 1.0);

// Closure data in units of h: hD rows for the left boundary block and the norm weights.
struct ClosureData {
  std::vector<double> norm;               // H_L diagonal, length r
  std::vector<std::vector<double>> rows;  // r rows of hD
  std::vector<double> stencil;            // d_1..d_p
  int boundary_order;
};
const ClosureData& closure_data(int order, Closure closure = Closure::standard);

// Reverse rows and columns.
Mat anti_reflect(const Mat& A);

struct AccuracyRow {
  int k;
  double interior_defect;
  double closure_defect;
};
std::vector<AccuracyRow> accuracy_report(const SbpPair1D& op, int q_max);

// (u,Dv)_H + (Du,v)_H - (u_N v_N - u_0 v_0)
double sbp_defect(const SbpPair1D& op, const Vec& u, const Vec& v);

// diag(-1, 0, ..., 0, 1)
Mat boundary_matrix_1d(Index points);

}  // namespace sbpp
