#pragma once

#include <functional>
#include <string>

#include "sbpp/tensor2d.hpp"

namespace sbpp {

// Physical coordinates and (optionally) analytic partial derivatives of a mapping of [0,1]^2.
struct Mapping {
  std::function<Eigen::Vector2d(double, double)> r;
  // [[x_xi, x_eta], [y_xi, y_eta]]
  std::function<Eigen::Matrix2d(double, double)> jacobian;
  std::string name;

  static Mapping identity();
  static Mapping affine(double ax, double ay);
  static Mapping rotation(double theta);
  // x = xi + a s, y = eta + a s with s = sin(2 pi xi) sin(2 pi eta)
  static Mapping sinusoidal(double alpha);
  // Annular sector: radius r0 + (r1 - r0) xi, angle theta0 + (theta1 - theta0) eta.
  static Mapping sector(double r0, double r1, double theta0, double theta1);
};

enum class MetricMode { analytic, discrete };

struct CurvilinearGrid {
  Ops2D ref;
  Vec x, y;
  Vec x_xi, x_eta, y_xi, y_eta;
  Vec J;
  MetricMode mode;

  const Grid2D& grid() const { return ref.grid(); }
  // Smallest distance between neighbouring grid points.
  double h_min() const;
};

// Ops2D for the reference square [0,1]^2 built from 2x2 blocks of N intervals each.
Ops2D four_block_square(int order, Index N_per_block);

CurvilinearGrid build_metrics(const Mapping& map, const Ops2D& ref, MetricMode mode);
// Discrete metrics from coordinate vectors alone.
CurvilinearGrid build_metrics(const Vec& x, const Vec& y, const Ops2D& ref);

// Rows "i j x y" or "i,j,x,y"; '#' comments and a non-numeric header line are skipped.
CurvilinearGrid import_grid(const std::string& path, const Ops2D& ref);

// Split-form chain-rule derivatives.
Vec curvilinear_dx(const CurvilinearGrid& g, const Vec& u, Index ncomp = 1);
Vec curvilinear_dy(const CurvilinearGrid& g, const Vec& u, Index ncomp = 1);

struct CurvilinearDiffOps {
  LinearMap Dx, Dy;  // on the space with norm JH
};
CurvilinearDiffOps build_curvilinear_diffops(const CurvilinearGrid& g);

struct BoundaryGeometry {
  std::array<Vec, 4> arc;  // |r| along each segment, traversal order
  std::array<Vec, 4> nx, ny;
  Mat E;                   // boundary embedding
  Vec hplus, splus, nxplus, nyplus;  // diagonals over the embedded boundary
  Norm H_gamma;
  Mat S, Nx, Ny;                     // general form
  Mat Nx_simple, Ny_simple;          // E+ N+ E
  bool corner_compatible;
  double corner_mismatch;            // max |s_end(k) - s_0(k+1)| relative
};

BoundaryGeometry build_boundary_geometry(const CurvilinearGrid& g, double compat_tol = 1e-12);

// Relative max-abs defect of JH D + (JH D)^T - R^T H_gamma S N R for the x or y direction.
// simple = true uses E+ N+ E in place of the general normal operator.
double curvilinear_sbp_defect(const CurvilinearGrid& g, const BoundaryGeometry& bg, bool x_direction,
                              bool simple = false);

}  // namespace sbpp
