#include "sbpp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "sbpp/maxwell.hpp"
#include "sbpp/pinv.hpp"
#include "sbpp/verify.hpp"

using namespace sbpp;

struct sbpp_operator {
  SbpPair1D op;
};
struct sbpp_report {
  VerifyReport rep;
};
struct sbpp_trace {
  std::vector<double> t, energy, defect, swaps;
  double summary = 0.0;
  double dt = 0.0;
};
struct sbpp_maxwell {
  MaxwellProblem p;
};
struct sbpp_table {
  std::vector<ConvergenceRow> rows;
};

namespace {

thread_local std::string g_last_error;

template <class F>
sbpp_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return SBPP_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<sbpp_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SBPP_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return SBPP_E_INTERNAL;
  }
}

sbpp_status null_arg(const char* what) {
  g_last_error = std::string("null argument: ") + what;
  return SBPP_E_NULL;
}

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Mat read_rm(const double* p, Index r, Index c) { return Eigen::Map<const RowMajor>(p, r, c); }
void write_rm(const Mat& m, double* out) { Eigen::Map<RowMajor>(out, m.rows(), m.cols()) = m; }

Space space_from(const double* h, Index n) {
  if (!h) return Space::euclidean(n);
  return Space(Norm::detect(read_rm(h, n, n)));
}

Closure closure_from(int c) {
  require(c == 0 || c == 1, ErrorCode::invalid_argument, "closure must be 0 (standard) or 1 (wide)");
  return c == 0 ? Closure::standard : Closure::wide;
}

MaxwellConfig to_cpp(const sbpp_maxwell_config& c) {
  MaxwellConfig m;
  m.order = c.order;
  m.N = c.n;
  m.eps = c.eps;
  m.mu = c.mu;
  m.alpha = c.alpha;
  m.metrics = c.discrete_metrics ? MetricMode::discrete : MetricMode::analytic;
  if (c.grid_file) m.grid_file = c.grid_file;
  return m;
}

}  // namespace

extern "C" {

const char* sbpp_last_error(void) { return g_last_error.c_str(); }
const char* sbpp_version(void) { return "0.1.0"; }

sbpp_status sbpp_operator_create(int order, int n, int closure, sbpp_operator** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new sbpp_operator{build_sbp1d(order, n, closure_from(closure))}; });
}

void sbpp_operator_destroy(sbpp_operator* op) { delete op; }
int sbpp_operator_points(const sbpp_operator* op) { return op ? static_cast<int>(op->op.points()) : -1; }
int sbpp_operator_boundary_order(const sbpp_operator* op) { return op ? op->op.boundary_order : -1; }

int sbpp_min_intervals(int order, int closure) {
  int out = -1;
  guarded([&] { out = static_cast<int>(min_intervals(order, closure_from(closure))); });
  return out;
}

sbpp_status sbpp_operator_D(const sbpp_operator* op, double* out) {
  if (!op || !out) return null_arg("op/out");
  return guarded([&] { write_rm(op->op.D.matrix(), out); });
}

sbpp_status sbpp_operator_H(const sbpp_operator* op, double* out) {
  if (!op || !out) return null_arg("op/out");
  return guarded([&] { write_rm(op->op.H().matrix(), out); });
}

sbpp_status sbpp_pinv(int m, int n, const double* T, const double* H1, const double* H2, double* out) {
  if (!T || !out) return null_arg("T/out");
  return guarded([&] {
    require(m > 0 && n > 0, ErrorCode::invalid_argument, "pinv: sizes must be positive");
    const LinearMap map(read_rm(T, m, n), space_from(H1, n), space_from(H2, m));
    write_rm(pinv_svd(map).matrix(), out);
  });
}

sbpp_status sbpp_penrose_residual(int m, int n, const double* T, const double* H1, const double* H2,
                                  const double* S, double* residual) {
  if (!T || !S || !residual) return null_arg("T/S/residual");
  return guarded([&] {
    require(m > 0 && n > 0, ErrorCode::invalid_argument, "penrose: sizes must be positive");
    const Space d = space_from(H1, n), c = space_from(H2, m);
    const LinearMap tm(read_rm(T, m, n), d, c);
    const LinearMap sm(read_rm(S, n, m), c, d);
    const PenroseReport r = check_penrose(tm, sm, 1e-10);
    *residual = *std::max_element(r.residuals.begin(), r.residuals.end());
  });
}

sbpp_status sbpp_verify(uint64_t seed, const char* only, double perturb_h, sbpp_report** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    VerifyOptions opt;
    opt.seed = seed;
    opt.perturb_h = perturb_h;
    if (only) {
      std::stringstream ss(only);
      std::string item;
      while (std::getline(ss, item, ','))
        if (!item.empty()) opt.only.push_back(item);
    }
    *out = new sbpp_report{run_verify(opt)};
  });
}

void sbpp_report_destroy(sbpp_report* r) { delete r; }
int sbpp_report_count(const sbpp_report* r) { return r ? static_cast<int>(r->rep.checks.size()) : -1; }
int sbpp_report_failures(const sbpp_report* r) { return r ? static_cast<int>(r->rep.failures()) : -1; }

sbpp_status sbpp_report_get(const sbpp_report* r, int i, const char** suite, const char** name, double* defect,
                            double* tolerance, int* pass) {
  if (!r) return null_arg("report");
  if (i < 0 || i >= sbpp_report_count(r)) {
    g_last_error = "report index out of range";
    return SBPP_E_INVALID_ARGUMENT;
  }
  const Check& c = r->rep.checks[static_cast<std::size_t>(i)];
  if (suite) *suite = c.suite.c_str();
  if (name) *name = c.name.c_str();
  if (defect) *defect = c.defect;
  if (tolerance) *tolerance = c.tolerance;
  if (pass) *pass = c.pass ? 1 : 0;
  g_last_error.clear();
  return SBPP_OK;
}

int sbpp_suite_count(void) { return static_cast<int>(verify_suites().size()); }
const char* sbpp_suite_name(int i) {
  if (i < 0 || i >= sbpp_suite_count()) return nullptr;
  return verify_suites()[static_cast<std::size_t>(i)].c_str();
}

void sbpp_trace_destroy(sbpp_trace* tr) { delete tr; }
int sbpp_trace_length(const sbpp_trace* tr) { return tr ? static_cast<int>(tr->t.size()) : -1; }

sbpp_status sbpp_trace_get(const sbpp_trace* tr, int i, double* t, double* energy, double* defect) {
  if (!tr) return null_arg("trace");
  if (i < 0 || i >= sbpp_trace_length(tr)) {
    g_last_error = "trace index out of range";
    return SBPP_E_INVALID_ARGUMENT;
  }
  const auto k = static_cast<std::size_t>(i);
  if (t) *t = tr->t[k];
  if (energy) *energy = tr->energy[k];
  if (defect) *defect = tr->defect.empty() ? std::numeric_limits<double>::quiet_NaN() : tr->defect[k];
  g_last_error.clear();
  return SBPP_OK;
}

double sbpp_trace_summary(const sbpp_trace* tr) { return tr ? tr->summary : std::nan(""); }
int sbpp_trace_swap_count(const sbpp_trace* tr) { return tr ? static_cast<int>(tr->swaps.size()) : -1; }
double sbpp_trace_swap_time(const sbpp_trace* tr, int i) {
  if (!tr || i < 0 || i >= sbpp_trace_swap_count(tr)) return std::nan("");
  return tr->swaps[static_cast<std::size_t>(i)];
}
double sbpp_trace_dt(const sbpp_trace* tr) { return tr ? tr->dt : std::nan(""); }

void sbpp_maxwell_config_default(sbpp_maxwell_config* cfg) {
  if (!cfg) return;
  const MaxwellConfig d;
  cfg->order = d.order;
  cfg->n = static_cast<int>(d.N);
  cfg->eps = d.eps;
  cfg->mu = d.mu;
  cfg->alpha = d.alpha;
  cfg->discrete_metrics = d.metrics == MetricMode::discrete ? 1 : 0;
  cfg->grid_file = nullptr;
}

sbpp_status sbpp_maxwell_create(const sbpp_maxwell_config* cfg, sbpp_maxwell** out) {
  if (!cfg || !out) return null_arg("cfg/out");
  return guarded([&] { *out = new sbpp_maxwell{MaxwellProblem::from_config(to_cpp(*cfg))}; });
}

void sbpp_maxwell_destroy(sbpp_maxwell* m) { delete m; }
int sbpp_maxwell_dof(const sbpp_maxwell* m) { return m ? static_cast<int>(m->p.dof()) : -1; }
int sbpp_maxwell_points(const sbpp_maxwell* m) { return m ? static_cast<int>(m->p.points()) : -1; }
double sbpp_maxwell_hmin(const sbpp_maxwell* m) { return m ? m->p.grid().h_min() : std::nan(""); }

sbpp_status sbpp_maxwell_spectrum(const sbpp_maxwell* m, int full, double* re, double* im) {
  if (!m || !re || !im) return null_arg("maxwell/re/im");
  return guarded([&] {
    const auto ev = m->p.spectrum(full != 0);
    for (std::size_t k = 0; k < ev.size(); ++k) {
      re[k] = ev[k].real();
      im[k] = ev[k].imag();
    }
  });
}

sbpp_status sbpp_maxwell_energy(const sbpp_maxwell* m, double t_final, uint64_t seed, int smooth, int record_every,
                                sbpp_trace** out) {
  if (!m || !out) return null_arg("maxwell/out");
  return guarded([&] {
    require(t_final > 0.0 && record_every >= 1, ErrorCode::invalid_argument, "energy: bad time parameters");
    const EnergyRun r = run_energy(m->p, t_final, seed, smooth != 0, 0.1, record_every);
    auto* tr = new sbpp_trace;
    tr->t = r.t;
    tr->energy = r.energy;
    tr->summary = r.ratio_minus_one;
    tr->dt = r.dt;
    *out = tr;
  });
}

sbpp_status sbpp_maxwell_manufactured(const sbpp_maxwell* m, double t_final, double* error, int* steps,
                                      double* bc_defect) {
  if (!m) return null_arg("maxwell");
  return guarded([&] {
    require(t_final > 0.0, ErrorCode::invalid_argument, "manufactured: T must be positive");
    const ManufacturedRun r = run_manufactured(m->p, PlaneWave{3.0, 4.0, m->p.eps(), m->p.mu()}, t_final);
    if (error) *error = r.error;
    if (steps) *steps = static_cast<int>(r.steps);
    if (bc_defect) *bc_defect = r.max_bc_defect;
  });
}

sbpp_status sbpp_convergence(const sbpp_maxwell_config* base, const int* orders, int n_orders, const int* n_list,
                             int n_count, double t_final, sbpp_table** out) {
  if (!base || !orders || !n_list || !out) return null_arg("base/orders/n_list/out");
  return guarded([&] {
    require(n_orders > 0 && n_count > 0, ErrorCode::invalid_argument, "convergence: empty order or N list");
    const std::vector<int> o(orders, orders + n_orders);
    std::vector<Index> ns(n_list, n_list + n_count);
    *out = new sbpp_table{convergence_study(o, ns, to_cpp(*base), t_final)};
  });
}

void sbpp_table_destroy(sbpp_table* t) { delete t; }
int sbpp_table_rows(const sbpp_table* t) { return t ? static_cast<int>(t->rows.size()) : -1; }

sbpp_status sbpp_table_get(const sbpp_table* t, int i, sbpp_convergence_row* row) {
  if (!t || !row) return null_arg("table/row");
  if (i < 0 || i >= sbpp_table_rows(t)) {
    g_last_error = "table index out of range";
    return SBPP_E_INVALID_ARGUMENT;
  }
  const ConvergenceRow& r = t->rows[static_cast<std::size_t>(i)];
  row->order = r.order;
  row->n = static_cast<int>(r.N);
  row->points = static_cast<int>(r.points);
  row->dof = static_cast<int>(r.dof);
  row->error = r.error;
  row->log10_error = r.log10_error;
  row->rate = r.rate;
  row->has_rate = r.has_rate ? 1 : 0;
  row->skipped = r.skipped ? 1 : 0;
  row->seconds = r.seconds;
  row->note = r.note.c_str();
  g_last_error.clear();
  return SBPP_OK;
}

sbpp_status sbpp_table_asymptotic(const sbpp_table* t, int order, int window, double* rates, int cap, int* count) {
  if (!t || !count) return null_arg("table/count");
  return guarded([&] {
    const auto r = asymptotic_rates(t->rows, order, window);
    *count = static_cast<int>(r.size());
    for (int k = 0; k < std::min(cap, *count) && rates; ++k) rates[k] = r[static_cast<std::size_t>(k)];
  });
}

void sbpp_advection_config_default(sbpp_advection_config* cfg) {
  if (!cfg) return;
  const AdvectionConfig d;
  cfg->multiblock = d.flavor == AdvectionFlavor::multiblock_skew ? 1 : 0;
  cfg->order = d.order;
  cfg->n = static_cast<int>(d.N);
  cfg->t_final = d.t_final;
  cfg->cfl = d.cfl;
  cfg->pattern = static_cast<int>(d.pattern);
  cfg->switch_time = d.switch_time;
}

sbpp_status sbpp_advection(const sbpp_advection_config* cfg, sbpp_trace** out) {
  if (!cfg || !out) return null_arg("cfg/out");
  return guarded([&] {
    require(cfg->pattern >= 0 && cfg->pattern <= 2, ErrorCode::invalid_argument, "advection: pattern must be 0, 1 or 2");
    AdvectionConfig c;
    c.flavor = cfg->multiblock ? AdvectionFlavor::multiblock_skew : AdvectionFlavor::single;
    c.order = cfg->order;
    c.N = cfg->n;
    c.t_final = cfg->t_final;
    c.cfl = cfg->cfl;
    c.pattern = static_cast<SpeedPattern>(cfg->pattern);
    c.switch_time = cfg->switch_time;
    const AdvectionTrace a = advection_demo_1d(c);
    auto* tr = new sbpp_trace;
    tr->t = a.t;
    tr->energy = a.energy;
    tr->defect = a.boundary_defect;
    tr->swaps = a.swap_times;
    tr->summary = a.max_relative_increase;
    tr->dt = a.t.size() > 1 ? a.t[1] - a.t[0] : 0.0;
    *out = tr;
  });
}

}  // extern "C"
