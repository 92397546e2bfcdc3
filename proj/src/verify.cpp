#include "sbpp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "sbpp/bc.hpp"
#include "sbpp/curvilinear.hpp"
#include "sbpp/maxwell.hpp"
#include "sbpp/pinv.hpp"

namespace sbpp {

bool VerifyReport::all_pass() const { return failures() == 0; }

std::size_t VerifyReport::failures() const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s{"pinv", "sbp1d", "bc", "multiblock1d", "tensor2d", "curvilinear", "maxwell"};
  return s;
}

namespace {

using Rng = std::mt19937_64;

Mat random_mat(Rng& rng, Index r, Index c) {
  std::normal_distribution<double> nd;
  Mat m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = nd(rng);
  return m;
}

// Small-integer factors: the product is exact, so its rank is exactly k.
Mat int_rank(Rng& rng, Index m, Index n, Index k) {
  std::uniform_int_distribution<int> ud(-3, 3);
  Mat a(m, k), b(k, n);
  for (Index j = 0; j < k; ++j)
    for (Index i = 0; i < m; ++i) a(i, j) = ud(rng);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < k; ++i) b(i, j) = ud(rng);
  return a * b;
}

// Rank exactly k with nonzero singular values within a factor 100; the Tikhonov bias is
// about (delta / sigma_min)^2, so near-singular draws say nothing about the limit.
Mat conditioned_map(Rng& rng, Index m, Index n, Index k) {
  for (;;) {
    const Mat T = k == std::min(m, n) ? random_mat(rng, m, n) : int_rank(rng, m, n, k);
    const Vec sv = Eigen::JacobiSVD<Mat>(T).singularValues();
    if (sv(k - 1) >= 1e-2 * sv(0) && (k == sv.size() || sv(k) <= 1e-12 * sv(0))) return T;
  }
}

Norm random_spd(Rng& rng, Index n) {
  const Mat a = random_mat(rng, n, n);
  Mat h = a * a.transpose() / static_cast<double>(n) + Mat::Identity(n, n);
  h = (0.5 * (h + h.transpose())).eval();
  return Norm(h, NormStructure::full);
}

class Recorder {
 public:
  Recorder(std::string suite, VerifyReport& rep) : suite_(std::move(suite)), rep_(rep) {}
  void add(const std::string& name, double defect, double tol) {
    rep_.checks.push_back({suite_, name, defect, tol, std::isfinite(defect) && defect <= tol});
  }

 private:
  std::string suite_;
  VerifyReport& rep_;
};

struct Worst {
  double v = 0.0;
  void operator()(double d) { v = std::isfinite(d) ? std::max(v, d) : d; }
};

void suite_pinv(Recorder& rec, Rng& rng) {
  std::uniform_int_distribution<int> dim(1, 8);
  Worst penrose, greville, tikhonov, ls;
  for (int trial = 0; trial < 60; ++trial) {
    const Index m = dim(rng) + 2, n = dim(rng);
    const Index k = std::max<Index>(1, std::min(m, n) - (trial % 3));
    const Mat T = conditioned_map(rng, m, n, k);
    const LinearMap map(T, Space(random_spd(rng, n)), Space(random_spd(rng, m)));
    const LinearMap S = pinv_svd(map);
    const PenroseReport pr = check_penrose(map, S, 1e-10);
    penrose(*std::max_element(pr.residuals.begin(), pr.residuals.end()));
    tikhonov(rel_diff(pinv_tikhonov(map, {1e-2, 1e-3, 1e-4, 1e-5, 1e-6}).result.matrix(), S.matrix()));

    const LinearMap eu(T, Space::euclidean(n), Space::euclidean(m));
    greville(rel_diff(pinv_greville(T), pinv_svd(eu).matrix()));

    // Minimum residual in the codomain norm: the pseudoinverse solution beats a perturbed one.
    const Vec z = random_mat(rng, m, 1);
    const Vec xs = S(z);
    const Vec x = xs + 0.1 * random_mat(rng, n, 1);
    const double best = norm_of(map.codomain(), z - map(xs));
    const double other = norm_of(map.codomain(), z - map(x));
    ls(std::max(0.0, best - other));
  }
  rec.add("penrose_weighted", penrose.v, 1e-10);
  rec.add("tikhonov_vs_svd", tikhonov.v, 1e-6);
  rec.add("greville_vs_svd", greville.v, 1e-6);
  rec.add("least_squares_residual", ls.v, 1e-10);
}

double sbp_identity_defect(const Mat& H, const Mat& D, const Mat& B) {
  const Mat HD = H * D;
  return max_abs(HD + HD.transpose() - B) / std::max(1.0, max_abs(HD));
}

void suite_sbp1d(Recorder& rec, double perturb) {
  struct Case { int order; Closure c; const char* tag; };
  for (const Case cs : {Case{2, Closure::standard, "order2"}, Case{2, Closure::wide, "order2_wide"},
                        Case{4, Closure::standard, "order4"}, Case{6, Closure::standard, "order6"}}) {
    const SbpPair1D op = build_sbp1d(cs.order, 2 * min_intervals(cs.order, cs.c) + 3, cs.c);
    Mat H = op.H().matrix();
    if (perturb != 0.0) H(1, 1) *= 1.0 + perturb;
    const std::string t = cs.tag;
    rec.add(t + "/HD+(HD)^T=B", sbp_identity_defect(H, op.D.matrix(), boundary_matrix_1d(op.points())), 1e-12);
    rec.add(t + "/norm_of_one", std::abs(Vec::Ones(op.points()).dot(H * Vec::Ones(op.points())) - 1.0), 1e-13);
    const auto& cd = closure_data(cs.order, cs.c);
    double s = 0.0;
    for (double w : cd.norm) s += w;
    rec.add(t + "/closure_weight_sum", std::abs(s - (static_cast<double>(cd.norm.size()) - 0.5)), 1e-13);
    double interior = 0.0, closure = 0.0;
    for (const auto& row : accuracy_report(op, op.interior_order)) {
      interior = std::max(interior, row.interior_defect);
      if (row.k <= op.boundary_order) closure = std::max(closure, row.closure_defect);
    }
    rec.add(t + "/interior_accuracy", interior, 1e-9);
    rec.add(t + "/closure_accuracy", closure, 1e-9);
  }
}

void projection_checks(Recorder& rec, const std::string& tag, const BoundaryOperator& L, const Norm& H, Rng& rng) {
  const BoundaryProjection bp = boundary_projection(L, H);
  const Mat& P = bp.P.matrix();
  const Mat& Hm = H.matrix();
  rec.add(tag + "/idempotent", rel_diff(P * P, P), 1e-10);
  rec.add(tag + "/self_adjoint", rel_diff(Hm * P, P.transpose() * Hm), 1e-10);
  const Vec v = random_mat(rng, L.state_dim(), 1);
  // Data in range(L); rows of L that vanish carry no condition.
  const Vec g = L.L * random_mat(rng, L.state_dim(), 1);
  const Vec lifted = P * v + lift_boundary_data(bp, g);
  rec.add(tag + "/lift_satisfies_bc", max_abs(L.L * lifted - g) / std::max(1.0, max_abs(g)), 1e-10);
  rec.add(tag + "/range_is_kernel", max_abs(L.L * P * v) / std::max(1.0, max_abs(v)), 1e-10);

  const Index k = L.gamma_dim();
  const Mat D = random_spd(rng, k).matrix();
  const BoundaryProjection scaled = boundary_projection(L, H, Norm(D, NormStructure::full));
  rec.add(tag + "/gamma_norm_invariance", rel_diff(scaled.P.matrix(), P), 1e-10);
  BoundaryOperator dup = L;
  dup.L.conservativeResize(2 * k, Eigen::NoChange);
  dup.L.bottomRows(k) = 2.0 * L.L;
  rec.add(tag + "/duplicate_rows_invariance", rel_diff(boundary_projection(dup, H).P.matrix(), P), 1e-10);
}

void suite_bc(Recorder& rec, Rng& rng) {
  for (int order : {2, 4, 6}) {
    const SbpPair1D op = build_sbp1d(order, min_intervals(order) + 6);
    const std::string t = "order" + std::to_string(order);
    projection_checks(rec, t + "/inflow_left", bc_char_scalar(true, false, op.N), op.H(), rng);
    projection_checks(rec, t + "/inflow_both", bc_char_scalar(true, true, op.N), op.H(), rng);
    projection_checks(rec, t + "/neumann", bc_neumann_heat(op), op.H(), rng);
  }
  // Two-component system with coupling at both ends.
  const SbpPair1D op = build_sbp1d(4, 12);
  const Vec lambda = (Vec(2) << 1.0, -1.0).finished();
  const Mat cl = (Mat(2, 2) << 0.0, 0.5, 0.0, 0.0).finished();
  const Mat cr = (Mat(2, 2) << 0.0, 0.0, -0.3, 0.0).finished();
  const Norm H2 = Norm::diagonal(kron(op.H().matrix(), Mat::Identity(2, 2)).diagonal());
  projection_checks(rec, "system2", bc_char_system_both(lambda, cl, cr, op.N), H2, rng);
}

void suite_multiblock1d(Recorder& rec) {
  for (int order : {2, 4, 6}) {
    const Index n = min_intervals(order) + 2;
    for (bool equal : {true, false}) {
      const auto m = assemble_multiblock1d(build_sbp1d(order, n, Closure::standard, 0.5),
                                           build_sbp1d(order, equal ? n : n + 5, Closure::standard, 0.5));
      const std::string t = "order" + std::to_string(order) + (equal ? "/equal_h" : "/unequal_h");
      rec.add(t + "/HD+(HD)^T=B",
              sbp_identity_defect(m.H().matrix(), m.D.matrix(), boundary_matrix_1d(m.N() + 1)), 1e-12);
      rec.add(t + "/interface_row", rel_diff(multiblock_interface_row(m), interface_row_formula(m.a, m.b)), 1e-12);
    }
  }
}

double ops2d_defect(const DenseOps2D& d, const Vec& hx, const Vec& hy, bool x_direction) {
  const Index nx = hx.size(), ny = hy.size();
  const Mat B = x_direction ? kron(Mat(hy.asDiagonal()), boundary_matrix_1d(nx))
                            : kron(boundary_matrix_1d(ny), Mat(hx.asDiagonal()));
  return sbp_identity_defect(d.H, x_direction ? d.Dx : d.Dy, B);
}

void suite_tensor2d(Recorder& rec) {
  for (int order : {2, 4, 6}) {
    const Index n = min_intervals(order) + 1;
    const std::string t = "order" + std::to_string(order);
    auto blk = [&](Index nx, Index ny) {
      return build_ops2d(build_sbp1d(order, nx, Closure::standard, 0.5), build_sbp1d(order, ny, Closure::standard, 0.5));
    };
    auto both = [&](const std::string& name, const Ops2D& ops) {
      const DenseOps2D d = dense_ops(ops);
      rec.add(t + "/" + name + "/x", ops2d_defect(d, ops.fx().h(), ops.fy().h(), true), 1e-12);
      rec.add(t + "/" + name + "/y", ops2d_defect(d, ops.fx().h(), ops.fy().h(), false), 1e-12);
    };
    both("single", blk(n, n + 1));
    both("two_block_x", assemble_two_block_x(blk(n, n + 1), blk(n + 2, n + 1)));
    both("two_block_y", assemble_two_block_y(blk(n, n), blk(n, n + 3)));
    const std::array<std::array<Ops2D, 2>, 2> blocks{{{blk(n, n), blk(n, n + 2)}, {blk(n + 1, n), blk(n + 1, n + 2)}}};
    const Ops2D four = assemble_four_block(blocks);
    both("four_block", four);
    const DenseOps2D xf = four_block_dense(blocks, true), yf = four_block_dense(blocks, false);
    const double order_dep = std::max({rel_diff(xf.H, yf.H), rel_diff(xf.Dx, yf.Dx), rel_diff(xf.Dy, yf.Dy)});
    rec.add(t + "/four_block_order_independence", order_dep, 1e-13);
    const DenseOps2D st = dense_ops(four);
    rec.add(t + "/four_block_structured_vs_embedding",
            std::max({rel_diff(st.H, xf.H), rel_diff(st.Dx, xf.Dx), rel_diff(st.Dy, xf.Dy)}), 1e-13);
  }
}

void suite_curvilinear(Recorder& rec) {
  for (int order : {2, 4, 6}) {
    const auto g = build_metrics(Mapping::sinusoidal(0.05), four_block_square(order, min_intervals(order) + 1),
                                 MetricMode::discrete);
    const auto bg = build_boundary_geometry(g);
    const std::string t = "order" + std::to_string(order);
    rec.add(t + "/sbp_x", curvilinear_sbp_defect(g, bg, true), 1e-11);
    rec.add(t + "/sbp_y", curvilinear_sbp_defect(g, bg, false), 1e-11);
    rec.add(t + "/jacobian_positive", g.J.minCoeff() > 0.0 ? 0.0 : 1.0, 0.0);
  }
}

void suite_maxwell(Recorder& rec) {
  MaxwellConfig cfg;
  cfg.order = 4;
  cfg.N = min_intervals(4);
  const MaxwellProblem p = MaxwellProblem::from_config(cfg);
  const SemidiscreteSystem sys = p.system();
  const Mat Q = sys.dense_Q();
  const Mat WQ = sys.energy_weights.asDiagonal() * Q;
  rec.add("energy_form_antisymmetric", max_abs(WQ + WQ.transpose()) / max_abs(WQ), 1e-9);
  rec.add("spectrum_imaginary", real_part_ratio(p.spectrum()), 1e-8);
  const PlaneWave wave{3.0, 4.0, cfg.eps, cfg.mu};
  const ManufacturedRun run = run_manufactured(p, wave, 0.05);
  rec.add("bc_hold_every_step", run.max_bc_defect, 1e-10);
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& opt) {
  for (const auto& s : opt.only)
    require(std::find(verify_suites().begin(), verify_suites().end(), s) != verify_suites().end(),
            ErrorCode::config_error, "verify: unknown suite '" + s + "'");
  auto wanted = [&](const std::string& s) {
    return opt.only.empty() || std::find(opt.only.begin(), opt.only.end(), s) != opt.only.end();
  };
  VerifyReport rep;
  Rng rng(opt.seed);
  const std::map<std::string, std::function<void(Recorder&)>> suites{
      {"pinv", [&](Recorder& r) { suite_pinv(r, rng); }},
      {"sbp1d", [&](Recorder& r) { suite_sbp1d(r, opt.perturb_h); }},
      {"bc", [&](Recorder& r) { suite_bc(r, rng); }},
      {"multiblock1d", [&](Recorder& r) { suite_multiblock1d(r); }},
      {"tensor2d", [&](Recorder& r) { suite_tensor2d(r); }},
      {"curvilinear", [&](Recorder& r) { suite_curvilinear(r); }},
      {"maxwell", [&](Recorder& r) { suite_maxwell(r); }},
  };
  for (const auto& name : verify_suites()) {
    if (!wanted(name)) continue;
    Recorder rec(name, rep);
    suites.at(name)(rec);
  }
  return rep;
}

}  // namespace sbpp
