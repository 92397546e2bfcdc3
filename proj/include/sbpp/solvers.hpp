#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sbpp/bc.hpp"
#include "sbpp/multiblock1d.hpp"

namespace sbpp {

using RhsFn = std::function<Vec(double, const Vec&)>;

Vec rk4_step(const RhsFn& f, double t, const Vec& w, double dt);

using Complex = std::complex<double>;

// Eigenvalues of a dense square matrix.
std::vector<Complex> spectrum(const Mat& Q);
// max |Re| / max |lambda|, 0 for the zero spectrum.
double real_part_ratio(const std::vector<Complex>& ev);
double max_real_part(const std::vector<Complex>& ev);

// w_t = Q w + G(t) with Q = P Q0 P and v = w + lift(t).
struct SemidiscreteSystem {
  Index dim = 0;
  std::function<Vec(const Vec&)> apply_Q;
  std::function<Vec(const Vec&)> project;
  std::function<Vec(double)> lift;
  std::function<Vec(double)> forcing;
  Vec energy_weights;  // diagonal energy norm

  RhsFn rhs() const;
  Mat dense_Q() const;
  double energy(const Vec& w) const;
};

// Power iteration in the energy norm; exact limit for operators normal in that norm.
double spectral_radius_estimate(const SemidiscreteSystem& sys, int iterations = 60, unsigned seed = 1);

enum class AdvectionFlavor { single, multiblock_skew };
enum class SpeedPattern { zero, positive, flip };

struct AdvectionConfig {
  AdvectionFlavor flavor = AdvectionFlavor::single;
  int order = 4;
  Index N = 40;        // per block for the multiblock flavor
  double t_final = 1.0;
  double cfl = 0.1;    // dt = cfl * h_min / max|c|
  SpeedPattern pattern = SpeedPattern::flip;
  double switch_time = 0.5;
};

struct AdvectionTrace {
  std::vector<double> t;
  std::vector<double> energy;
  std::vector<double> boundary_defect;  // max |L v| per step
  std::vector<double> swap_times;
  double max_relative_increase = 0.0;   // max_n (E_{n+1} - E_n) / E_0
};

double advection_speed(const AdvectionConfig& cfg, double t);
AdvectionTrace advection_demo_1d(const AdvectionConfig& cfg);

// Evolution matrix for the skew multiblock form at frozen c (for the energy check).
Mat advection_skew_matrix(const MultiBlockAssembly1D& m, const Vec& c, const Mat& P);

}  // namespace sbpp
