#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sbpp/curvilinear.hpp"
#include "sbpp/solvers.hpp"

namespace sbpp {

struct MaxwellConfig {
  int order = 4;
  Index N = 20;  // intervals per block; the domain has 2x2 blocks
  double eps = 0.2;
  double mu = 5.0;
  double alpha = 0.05;
  MetricMode metrics = MetricMode::discrete;
  std::string grid_file;  // optional (i, j, x, y) table replacing the default mapping
};

// H = cos(kx x + ky y - omega t), omega = |k| / sqrt(eps mu); E amplitudes follow from the PDE.
struct PlaneWave {
  double kx = 3.0, ky = 4.0;
  double eps = 0.2, mu = 5.0;

  double omega() const;
  Eigen::Vector3d eval(double x, double y, double t) const;  // (Ex, H, Ey)
};

// State layout: point-major, components (Ex, H, Ey) innermost.
class MaxwellProblem {
 public:
  MaxwellProblem(CurvilinearGrid grid, double eps, double mu);
  static MaxwellProblem from_config(const MaxwellConfig& cfg);

  const CurvilinearGrid& grid() const { return grid_; }
  double eps() const { return eps_; }
  double mu() const { return mu_; }
  Index points() const { return grid_.grid().size(); }
  Index dof() const { return 3 * points(); }
  // Distinct boundary points; a corner is kept on the lower-numbered segment.
  const std::vector<Index>& boundary_points() const { return bpts_; }

  Vec core(const Vec& u) const;  // C^{-1}(A Dx + B Dy) u
  Vec project(const Vec& w) const;
  Vec apply_Q(const Vec& w) const;
  Vec lift(const Vec& g) const;              // L^T g
  Vec boundary_values(const Vec& v) const;   // L v
  Mat L_dense() const;
  Vec energy_weights() const;  // diag(C J H)
  Vec error_weights() const;   // diag(J H) per component

  Vec sample(const PlaneWave& wave, double t) const;
  Vec boundary_data(const PlaneWave& wave, double t) const;

  SemidiscreteSystem system(std::function<Vec(double)> g = nullptr) const;

  // Eigenvalues of Q. Default route uses the E/H block structure of Q (eigenvalues are +-sqrt of
  // those of the H-to-H block of Q^2); full = true runs the dense solver on Q itself.
  std::vector<Complex> spectrum(bool full = false) const;
  Mat reduced_square() const;  // (Q^2) restricted to interior H entries

 private:
  CurvilinearGrid grid_;
  double eps_, mu_;
  std::vector<Index> bpts_;
  std::vector<Index> interior_h_;
};

double choose_dt(const MaxwellProblem& p, double T, double dt_factor, Index* steps = nullptr);

struct ManufacturedRun {
  double error = 0.0;
  Index steps = 0;
  double dt = 0.0;
  double compat_defect = 0.0;   // max |L f - g(0)|
  double max_bc_defect = 0.0;   // max over steps of |L v - g|
};
ManufacturedRun run_manufactured(const MaxwellProblem& p, const PlaneWave& wave, double T = 1.0,
                                 double dt_factor = 0.1);

struct EnergyRun {
  std::vector<double> t, energy;
  double ratio_minus_one = 0.0;
  Index steps = 0;
  double dt = 0.0;
  double compat_defect = 0.0;
};
// g = 0. smooth = true draws f from low sine modes (H vanishing on the boundary);
// otherwise f is random per node and projected.
EnergyRun run_energy(const MaxwellProblem& p, double T, std::uint64_t seed, bool smooth = true,
                     double dt_factor = 0.1, Index record_every = 1);

struct ConvergenceRow {
  int order = 0;
  Index N = 0;       // per block
  Index points = 0;  // per dimension
  Index dof = 0;
  double error = 0.0;
  double log10_error = 0.0;
  double rate = 0.0;
  bool has_rate = false;
  bool skipped = false;
  std::string note;
  double seconds = 0.0;
};

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& orders, const std::vector<Index>& N_list,
                                              const MaxwellConfig& base, double T = 1.0);

// Rates of the last `window` usable rows of one order (window points give window-1 rates).
std::vector<double> asymptotic_rates(const std::vector<ConvergenceRow>& rows, int order, int window = 3);

}  // namespace sbpp
