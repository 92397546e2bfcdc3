#include "sbpp/maxwell.hpp"

#include <array>
#include <chrono>
#include <optional>
#include <cmath>
#include <random>
#include <set>

namespace sbpp {

double PlaneWave::omega() const { return std::hypot(kx, ky) / std::sqrt(eps * mu); }

Eigen::Vector3d PlaneWave::eval(double x, double y, double t) const {
  const double w = omega();
  const double c = std::cos(kx * x + ky * y - w * t);
  return Eigen::Vector3d(-ky / (eps * w) * c, c, kx / (eps * w) * c);
}

MaxwellProblem::MaxwellProblem(CurvilinearGrid grid, double eps, double mu)
    : grid_(std::move(grid)), eps_(eps), mu_(mu) {
  require(eps > 0.0 && mu > 0.0, ErrorCode::invalid_argument, "Maxwell: eps and mu must be positive");
  std::set<Index> seen;
  for (const auto& seg : segment_points(grid_.grid()))
    for (Index p : seg)
      if (seen.insert(p).second) bpts_.push_back(p);
  for (Index p = 0; p < points(); ++p)
    if (!seen.count(p)) interior_h_.push_back(3 * p + 1);
}

MaxwellProblem MaxwellProblem::from_config(const MaxwellConfig& cfg) {
  require(cfg.N >= 1, ErrorCode::invalid_argument, "Maxwell: N must be positive");
  const Ops2D ref = four_block_square(cfg.order, cfg.N);
  if (!cfg.grid_file.empty()) return MaxwellProblem(import_grid(cfg.grid_file, ref), cfg.eps, cfg.mu);
  return MaxwellProblem(build_metrics(Mapping::sinusoidal(cfg.alpha), ref, cfg.metrics), cfg.eps, cfg.mu);
}

Vec MaxwellProblem::core(const Vec& u) const {
  require(u.size() == dof(), ErrorCode::dimension_mismatch, "Maxwell: state has wrong length");
  const Vec dx = curvilinear_dx(grid_, u, 3);
  const Vec dy = curvilinear_dy(grid_, u, 3);
  Vec out(dof());
  const double ie = 1.0 / eps_, im = 1.0 / mu_;
  for (Index p = 0; p < points(); ++p) {
    out(3 * p) = ie * dy(3 * p + 1);
    out(3 * p + 1) = im * (dy(3 * p) - dx(3 * p + 2));
    out(3 * p + 2) = -ie * dx(3 * p + 1);
  }
  return out;
}

Vec MaxwellProblem::project(const Vec& w) const {
  Vec out = w;
  for (Index p : bpts_) out(3 * p + 1) = 0.0;
  return out;
}

Vec MaxwellProblem::apply_Q(const Vec& w) const { return project(core(project(w))); }

Vec MaxwellProblem::lift(const Vec& g) const {
  require(g.size() == static_cast<Index>(bpts_.size()), ErrorCode::dimension_mismatch,
          "Maxwell: boundary data has wrong length");
  Vec out = Vec::Zero(dof());
  for (std::size_t k = 0; k < bpts_.size(); ++k) out(3 * bpts_[k] + 1) = g(k);
  return out;
}

Vec MaxwellProblem::boundary_values(const Vec& v) const {
  Vec g(bpts_.size());
  for (std::size_t k = 0; k < bpts_.size(); ++k) g(k) = v(3 * bpts_[k] + 1);
  return g;
}

Mat MaxwellProblem::L_dense() const {
  Mat L = Mat::Zero(bpts_.size(), dof());
  for (std::size_t k = 0; k < bpts_.size(); ++k) L(k, 3 * bpts_[k] + 1) = 1.0;
  return L;
}

Vec MaxwellProblem::error_weights() const {
  const Vec jh = (grid_.J.array() * grid_.ref.weights().array()).matrix();
  Vec w(dof());
  for (Index p = 0; p < points(); ++p) w.segment(3 * p, 3).setConstant(jh(p));
  return w;
}

Vec MaxwellProblem::energy_weights() const {
  Vec w = error_weights();
  for (Index p = 0; p < points(); ++p) {
    w(3 * p) *= eps_;
    w(3 * p + 1) *= mu_;
    w(3 * p + 2) *= eps_;
  }
  return w;
}

Vec MaxwellProblem::sample(const PlaneWave& wave, double t) const {
  Vec u(dof());
  for (Index p = 0; p < points(); ++p) u.segment(3 * p, 3) = wave.eval(grid_.x(p), grid_.y(p), t);
  return u;
}

Vec MaxwellProblem::boundary_data(const PlaneWave& wave, double t) const {
  Vec g(bpts_.size());
  for (std::size_t k = 0; k < bpts_.size(); ++k) g(k) = wave.eval(grid_.x(bpts_[k]), grid_.y(bpts_[k]), t)(1);
  return g;
}

SemidiscreteSystem MaxwellProblem::system(std::function<Vec(double)> g) const {
  SemidiscreteSystem s;
  s.dim = dof();
  s.apply_Q = [this](const Vec& w) { return apply_Q(w); };
  s.project = [this](const Vec& w) { return project(w); };
  if (g) {
    s.lift = [this, g](double t) { return lift(g(t)); };
    s.forcing = [this, g](double t) { return project(core(lift(g(t)))); };
  } else {
    s.lift = [this](double) { return Vec(Vec::Zero(dof())); };
  }
  s.energy_weights = energy_weights();
  return s;
}

Mat MaxwellProblem::reduced_square() const {
  const Index m = static_cast<Index>(interior_h_.size());
  Mat K(m, m);
  Vec e = Vec::Zero(dof());
  for (Index c = 0; c < m; ++c) {
    e(interior_h_[c]) = 1.0;
    const Vec q2 = apply_Q(apply_Q(e));
    for (Index r = 0; r < m; ++r) K(r, c) = q2(interior_h_[r]);
    e(interior_h_[c]) = 0.0;
  }
  return K;
}

std::vector<Complex> MaxwellProblem::spectrum(bool full) const {
  if (full) return sbpp::spectrum(system().dense_Q());
  // Q couples E only to interior H and interior H only to E; with p E entries and m interior H entries
  // det(lambda I - Q) = lambda^(dof - 2m) det(lambda^2 I - K).
  const std::vector<Complex> mu = sbpp::spectrum(reduced_square());
  std::vector<Complex> ev;
  ev.reserve(dof());
  for (const Complex& z : mu) {
    const Complex s = std::sqrt(z);
    ev.push_back(s);
    ev.push_back(-s);
  }
  while (static_cast<Index>(ev.size()) < dof()) ev.emplace_back(0.0, 0.0);
  return ev;
}

double choose_dt(const MaxwellProblem& p, double T, double dt_factor, Index* steps) {
  double dt = dt_factor * p.grid().h_min();
  const double rho = spectral_radius_estimate(p.system());
  if (rho > 0.0) dt = std::min(dt, 2.5 / rho);
  const Index n = static_cast<Index>(std::ceil(T / dt - 1e-12));
  if (steps) *steps = n;
  return T / static_cast<double>(n);
}

ManufacturedRun run_manufactured(const MaxwellProblem& p, const PlaneWave& wave, double T, double dt_factor) {
  ManufacturedRun out;
  const auto g = [&](double t) { return p.boundary_data(wave, t); };
  const SemidiscreteSystem sys = p.system(g);
  const RhsFn f = sys.rhs();

  const Vec f0 = p.sample(wave, 0.0);
  out.compat_defect = (p.boundary_values(f0) - g(0.0)).cwiseAbs().maxCoeff();
  Vec w = p.project(f0);

  out.dt = choose_dt(p, T, dt_factor, &out.steps);
  for (Index n = 0; n < out.steps; ++n) {
    const double t = n * out.dt;
    w = rk4_step(f, t, w, out.dt);
    const double tn = (n + 1 == out.steps) ? T : t + out.dt;
    const Vec v = w + sys.lift(tn);
    out.max_bc_defect = std::max(out.max_bc_defect, (p.boundary_values(v) - g(tn)).cwiseAbs().maxCoeff());
  }
  const Vec v = w + sys.lift(T);
  const Vec e = v - p.sample(wave, T);
  out.error = std::sqrt((e.array().square() * p.error_weights().array()).sum());
  return out;
}

EnergyRun run_energy(const MaxwellProblem& p, double T, std::uint64_t seed, bool smooth, double dt_factor,
                     Index record_every) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  Vec f(p.dof());
  if (smooth) {
    const Vec xi = p.grid().ref.xs(), eta = p.grid().ref.ys();
    std::array<std::array<std::array<double, 3>, 3>, 3> c{};
    for (auto& comp : c)
      for (auto& row : comp)
        for (double& v : row) v = nd(rng);
    for (Index q = 0; q < p.points(); ++q)
      for (int comp = 0; comp < 3; ++comp) {
        double s = 0.0;
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            if (comp == 1)
              s += c[comp][k][l] * std::sin((k + 1) * M_PI * xi(q)) * std::sin((l + 1) * M_PI * eta(q));
            else
              s += c[comp][k][l] * std::cos(k * M_PI * xi(q)) * std::cos(l * M_PI * eta(q));
          }
        f(3 * q + comp) = s;
      }
  } else {
    for (Index k = 0; k < f.size(); ++k) f(k) = nd(rng);
  }

  EnergyRun out;
  out.compat_defect = p.boundary_values(f).cwiseAbs().maxCoeff();
  const SemidiscreteSystem sys = p.system();
  const RhsFn rhs = sys.rhs();
  Vec w = p.project(f);
  const double e0 = sys.energy(w);
  out.t.push_back(0.0);
  out.energy.push_back(e0);
  out.dt = choose_dt(p, T, dt_factor, &out.steps);
  for (Index n = 0; n < out.steps; ++n) {
    w = rk4_step(rhs, n * out.dt, w, out.dt);
    if ((n + 1) % record_every == 0 || n + 1 == out.steps) {
      out.t.push_back((n + 1) * out.dt);
      out.energy.push_back(sys.energy(w));
    }
  }
  out.ratio_minus_one = out.energy.back() / e0 - 1.0;
  return out;
}

std::vector<ConvergenceRow> convergence_study(const std::vector<int>& orders, const std::vector<Index>& N_list,
                                              const MaxwellConfig& base, double T) {
  std::vector<ConvergenceRow> rows;
  const PlaneWave wave{3.0, 4.0, base.eps, base.mu};
  for (int order : orders) {
    std::optional<ConvergenceRow> prev;
    for (Index N : N_list) {
      ConvergenceRow r;
      r.order = order;
      r.N = N;
      r.points = 2 * N + 1;
      r.dof = 3 * r.points * r.points;
      if (N < min_intervals(order)) {
        r.skipped = true;
        r.note = "N below the closure minimum " + std::to_string(min_intervals(order));
        rows.push_back(r);
        continue;
      }
      MaxwellConfig cfg = base;
      cfg.order = order;
      cfg.N = N;
      const auto t0 = std::chrono::steady_clock::now();
      const ManufacturedRun run = run_manufactured(MaxwellProblem::from_config(cfg), wave, T);
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      r.error = run.error;
      r.log10_error = std::log10(run.error);
      if (prev) {
        r.rate = std::log(prev->error / r.error) /
                 std::log(static_cast<double>(r.points) / static_cast<double>(prev->points));
        r.has_rate = true;
      }
      rows.push_back(r);
      prev = r;
    }
  }
  return rows;
}

std::vector<double> asymptotic_rates(const std::vector<ConvergenceRow>& rows, int order, int window) {
  std::vector<double> rates;
  for (const auto& r : rows)
    if (r.order == order && r.has_rate) rates.push_back(r.rate);
  const std::size_t keep = static_cast<std::size_t>(std::max(window - 1, 1));
  if (rates.size() > keep) rates.erase(rates.begin(), rates.end() - keep);
  return rates;
}

}  // namespace sbpp
