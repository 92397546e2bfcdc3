#include "sbpp/solvers.hpp"

#include <cmath>
#include <random>

namespace sbpp {

Vec rk4_step(const RhsFn& f, double t, const Vec& w, double dt) {
  require(dt > 0.0, ErrorCode::invalid_argument, "rk4_step: dt must be positive");
  const Vec k1 = f(t, w);
  const Vec k2 = f(t + 0.5 * dt, w + 0.5 * dt * k1);
  const Vec k3 = f(t + 0.5 * dt, w + 0.5 * dt * k2);
  const Vec k4 = f(t + dt, w + dt * k3);
  return w + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::vector<Complex> spectrum(const Mat& Q) {
  require(Q.rows() == Q.cols(), ErrorCode::dimension_mismatch, "spectrum: matrix must be square");
  if (Q.rows() == 0) return {};
  Eigen::EigenSolver<Mat> es(Q, false);
  require(es.info() == Eigen::Success, ErrorCode::internal, "spectrum: eigenvalue iteration did not converge");
  const auto& ev = es.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

double max_real_part(const std::vector<Complex>& ev) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& z : ev) m = std::max(m, z.real());
  return m;
}

double real_part_ratio(const std::vector<Complex>& ev) {
  double re = 0.0, mag = 0.0;
  for (const auto& z : ev) {
    re = std::max(re, std::abs(z.real()));
    mag = std::max(mag, std::abs(z));
  }
  return mag == 0.0 ? 0.0 : re / mag;
}

RhsFn SemidiscreteSystem::rhs() const {
  return [this](double t, const Vec& w) {
    Vec r = apply_Q(w);
    if (forcing) r += forcing(t);
    return r;
  };
}

Mat SemidiscreteSystem::dense_Q() const {
  Mat Q(dim, dim);
  Vec e = Vec::Zero(dim);
  for (Index k = 0; k < dim; ++k) {
    e(k) = 1.0;
    Q.col(k) = apply_Q(e);
    e(k) = 0.0;
  }
  return Q;
}

double SemidiscreteSystem::energy(const Vec& w) const {
  return (w.array().square() * energy_weights.array()).sum();
}

double spectral_radius_estimate(const SemidiscreteSystem& sys, int iterations, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Vec x(sys.dim);
  for (Index k = 0; k < sys.dim; ++k) x(k) = nd(rng);
  x = sys.project(x);
  double est = 0.0;
  for (int it = 0; it < iterations; ++it) {
    const double nx = std::sqrt(sys.energy(x));
    if (nx == 0.0) return 0.0;
    x /= nx;
    const Vec y = sys.apply_Q(x);
    est = std::sqrt(sys.energy(y));
    x = y;
  }
  return est;
}

double advection_speed(const AdvectionConfig& cfg, double t) {
  switch (cfg.pattern) {
    case SpeedPattern::zero: return 0.0;
    case SpeedPattern::positive: return 1.0;
    case SpeedPattern::flip: return t < cfg.switch_time ? 1.0 : -1.0;
  }
  return 0.0;
}

Mat advection_skew_matrix(const MultiBlockAssembly1D& m, const Vec& c, const Mat& P) {
  const Mat& D = m.D.matrix();
  const auto C = c.asDiagonal();
  return -P * (0.5 * D * C + 0.5 * (C * D)) * P;
}

namespace {

Mat projection_for(double c_left, double c_right, const Norm& H, Index N) {
  // Inflow where the characteristic enters the domain.
  const BoundaryOperator L = bc_char_scalar(c_left > 0.0, c_right < 0.0, N);
  return boundary_projection(L, H).P.matrix();
}

}  // namespace

AdvectionTrace advection_demo_1d(const AdvectionConfig& cfg) {
  require(cfg.t_final > 0.0 && cfg.cfl > 0.0, ErrorCode::invalid_argument, "advection: bad time parameters");
  Mat D;
  Vec x, a;
  Space space = Space::euclidean(1);
  if (cfg.flavor == AdvectionFlavor::single) {
    const SbpPair1D op = build_sbp1d(cfg.order, cfg.N);
    D = op.D.matrix();
    x = op.grid();
    space = op.space;
    a = Vec::Ones(x.size());
  } else {
    // Unequal block spacing so the interface row is the weighted mean, not the centred stencil.
    const Index n2 = std::max(cfg.N + cfg.N / 2, min_intervals(cfg.order));
    const auto m = assemble_multiblock1d(build_sbp1d(cfg.order, cfg.N, Closure::standard, 0.5),
                                         build_sbp1d(cfg.order, n2, Closure::standard, 0.5));
    D = m.D.matrix();
    x = m.grid();
    space = m.space;
    a = (1.0 + 0.5 * (2.0 * M_PI * x.array()).sin()).matrix();
  }
  const Index N = x.size() - 1;
  double hmin = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < N; ++i) hmin = std::min(hmin, x(i + 1) - x(i));
  const double dt_target = cfg.cfl * hmin / a.cwiseAbs().maxCoeff();

  // Step boundaries aligned with the sign change so P is constant inside each step.
  std::vector<double> breaks{0.0};
  if (cfg.pattern == SpeedPattern::flip && cfg.switch_time > 0.0 && cfg.switch_time < cfg.t_final)
    breaks.push_back(cfg.switch_time);
  breaks.push_back(cfg.t_final);

  Vec v = (-((x.array() - 0.35) / 0.08).square()).exp().matrix();
  AdvectionTrace tr;
  Mat P;
  double c_prev = std::numeric_limits<double>::quiet_NaN();
  auto energy = [&](const Vec& u) { return inner(space, u, u); };

  bool first = true;
  double e0 = 0.0;
  for (std::size_t seg = 0; seg + 1 < breaks.size(); ++seg) {
    const double t0 = breaks[seg], t1 = breaks[seg + 1];
    const Index nsteps = std::max<Index>(1, static_cast<Index>(std::ceil((t1 - t0) / dt_target)));
    const double dt = (t1 - t0) / static_cast<double>(nsteps);
    for (Index s = 0; s < nsteps; ++s) {
      const double t = t0 + s * dt;
      const double c = advection_speed(cfg, t + 0.5 * dt);
      if (first || (c > 0) != (c_prev > 0) || (c < 0) != (c_prev < 0)) {
        const Vec cv = c * a;
        P = projection_for(cv(0), cv(N), space.norm(), N);
        if (!first) {
          // The new inflow boundary starts from zero data; P is H-orthogonal, so this cannot add energy.
          v = P * v;
          tr.swap_times.push_back(t);
        }
        c_prev = c;
      }
      if (first) {
        v = P * v;
        e0 = energy(v);
        tr.t.push_back(0.0);
        tr.energy.push_back(e0);
        tr.boundary_defect.push_back(0.0);
        first = false;
      }
      const Vec cv = c * a;
      Mat A;
      if (cfg.flavor == AdvectionFlavor::single) A = -c * (P * D * P);
      else A = -P * (0.5 * D * cv.asDiagonal() + 0.5 * (cv.asDiagonal() * D)) * P;
      const RhsFn f = [&A](double, const Vec& w) { return Vec(A * w); };
      v = rk4_step(f, t, v, dt);
      const double e = energy(v);
      tr.max_relative_increase = std::max(tr.max_relative_increase, (e - tr.energy.back()) / e0);
      tr.t.push_back(t + dt);
      tr.energy.push_back(e);
      tr.boundary_defect.push_back((v - P * v).cwiseAbs().maxCoeff());
    }
  }
  return tr;
}

}  // namespace sbpp
