// Command-line front end. Talks to the library through the C API only.
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sbpp.h"

using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfigError = 2 };

struct LibError {
  sbpp_status status;
  std::string msg;
};

void ok(sbpp_status s) {
  if (s != SBPP_OK) throw LibError{s, sbpp_last_error()};
}

// Shortest text that reads back to the same double.
std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string fmt_short(double v, int prec = 6) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

template <class T, void (*Del)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Del(p); }
};

struct Global {
  std::string output = "-";
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool quiet = false;
};

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw LibError{SBPP_E_IO, "cannot open output file " + path};
    }
  }
  std::ostream& os() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

json meta_base(const Global& g, const std::string& command) {
  return json{{"command", command}, {"seed", g.seed}, {"format", g.format}, {"version", sbpp_version()}};
}

// ---- verify ----

struct VerifyArgs {
  std::vector<std::string> only;
  double perturb_h = 0.0;
};

int cmd_verify(const Global& g, const VerifyArgs& a) {
  std::string only;
  for (const auto& s : a.only) only += (only.empty() ? "" : ",") + s;
  Handle<sbpp_report, sbpp_report_destroy> rep;
  ok(sbpp_verify(g.seed, only.empty() ? nullptr : only.c_str(), a.perturb_h, &rep.p));
  const int n = sbpp_report_count(rep.p);
  Sink sink(g.output);
  json results = json::array();
  if (g.format == "csv") sink.os() << "suite,name,defect,tolerance,pass\n";
  for (int i = 0; i < n; ++i) {
    const char *suite, *name;
    double defect, tol;
    int pass;
    ok(sbpp_report_get(rep.p, i, &suite, &name, &defect, &tol, &pass));
    if (g.format == "csv")
      sink.os() << suite << ',' << name << ',' << fmt(defect) << ',' << fmt(tol) << ',' << pass << '\n';
    else
      results.push_back({{"suite", suite}, {"name", name}, {"defect", defect}, {"tolerance", tol}, {"pass", pass != 0}});
    if (!g.quiet)
      std::cerr << (pass ? "PASS " : "FAIL ") << suite << '/' << name << "  defect=" << fmt_short(defect, 3)
                << "  tol=" << fmt_short(tol, 3) << '\n';
  }
  const int failures = sbpp_report_failures(rep.p);
  if (g.format == "json") {
    json meta = meta_base(g, "verify");
    meta["only"] = a.only;
    meta["perturb_h"] = a.perturb_h;
    sink.os() << json{{"meta", meta}, {"results", results}}.dump(2) << '\n';
  }
  if (!g.quiet) std::cerr << n - failures << '/' << n << " checks passed\n";
  return failures == 0 ? kOk : kCheckFailed;
}

// ---- maxwell ----

struct MaxwellArgs {
  std::string mode;
  std::vector<int> orders;
  std::vector<int> ns;
  double eps = 0.2, mu = 5.0, alpha = 0.05;
  std::string metrics = "discrete";
  std::string grid;
  double t_final = 1.0;
  bool full = false;
  bool nodal = false;
  int record_every = 1;
  int window = 3;
  bool check = false;
};

sbpp_maxwell_config base_config(const MaxwellArgs& a) {
  sbpp_maxwell_config c;
  sbpp_maxwell_config_default(&c);
  c.eps = a.eps;
  c.mu = a.mu;
  c.alpha = a.alpha;
  c.discrete_metrics = a.metrics == "discrete" ? 1 : 0;
  c.grid_file = a.grid.empty() ? nullptr : a.grid.c_str();
  return c;
}

json maxwell_meta(const Global& g, const MaxwellArgs& a, const std::vector<int>& orders, const std::vector<int>& ns) {
  json m = meta_base(g, "maxwell");
  m["mode"] = a.mode;
  m["orders"] = orders;
  m["n_per_block"] = ns;
  m["eps"] = a.eps;
  m["mu"] = a.mu;
  m["alpha"] = a.alpha;
  m["metrics"] = a.metrics;
  m["grid"] = a.grid;
  m["t_final"] = a.t_final;
  if (a.mode == "spectrum") m["full"] = a.full;
  if (a.mode == "energy") {
    m["initial_data"] = a.nodal ? "nodal" : "smooth";
    m["record_every"] = a.record_every;
  }
  if (a.mode == "converge") m["window"] = a.window;
  return m;
}

int maxwell_spectrum(const Global& g, const MaxwellArgs& a, const std::vector<int>& orders, const std::vector<int>& ns) {
  Sink sink(g.output);
  json results = json::array();
  if (g.format == "csv") sink.os() << "order,n,re,im\n";
  bool pass = true;
  for (int order : orders)
    for (int n : ns) {
      sbpp_maxwell_config c = base_config(a);
      c.order = order;
      c.n = n;
      Handle<sbpp_maxwell, sbpp_maxwell_destroy> m;
      ok(sbpp_maxwell_create(&c, &m.p));
      const int dof = sbpp_maxwell_dof(m.p);
      std::vector<double> re(dof), im(dof);
      ok(sbpp_maxwell_spectrum(m.p, a.full ? 1 : 0, re.data(), im.data()));
      double max_re = -INFINITY, max_abs_re = 0.0, max_mag = 0.0;
      for (int k = 0; k < dof; ++k) {
        max_re = std::max(max_re, re[k]);
        max_abs_re = std::max(max_abs_re, std::abs(re[k]));
        max_mag = std::max(max_mag, std::hypot(re[k], im[k]));
      }
      const double ratio = max_mag > 0.0 ? max_abs_re / max_mag : 0.0;
      pass = pass && ratio <= 1e-8;
      if (g.format == "csv") {
        for (int k = 0; k < dof; ++k) sink.os() << order << ',' << n << ',' << fmt(re[k]) << ',' << fmt(im[k]) << '\n';
      } else {
        results.push_back({{"order", order}, {"n_per_block", n}, {"points", sbpp_maxwell_points(m.p)}, {"dof", dof},
                           {"max_real_part", max_re}, {"real_part_ratio", ratio}, {"re", re}, {"im", im}});
      }
      if (!g.quiet)
        std::cerr << "order " << order << "  N/block " << n << "  DOF " << dof << "  max Re " << fmt_short(max_re, 3)
                  << "  max|Re|/max|lambda| " << fmt_short(ratio, 3) << '\n';
    }
  if (g.format == "json") sink.os() << json{{"meta", maxwell_meta(g, a, orders, ns)}, {"results", results}}.dump() << '\n';
  return a.check && !pass ? kCheckFailed : kOk;
}

int maxwell_energy(const Global& g, const MaxwellArgs& a, const std::vector<int>& orders, const std::vector<int>& ns) {
  Sink sink(g.output);
  json results = json::array();
  if (g.format == "csv") sink.os() << "order,n,t,energy,ratio_minus_one\n";
  bool pass = true;
  for (int order : orders)
    for (int n : ns) {
      sbpp_maxwell_config c = base_config(a);
      c.order = order;
      c.n = n;
      Handle<sbpp_maxwell, sbpp_maxwell_destroy> m;
      ok(sbpp_maxwell_create(&c, &m.p));
      Handle<sbpp_trace, sbpp_trace_destroy> tr;
      ok(sbpp_maxwell_energy(m.p, a.t_final, g.seed, a.nodal ? 0 : 1, a.record_every, &tr.p));
      const int len = sbpp_trace_length(tr.p);
      std::vector<double> ts(len), es(len);
      for (int k = 0; k < len; ++k) ok(sbpp_trace_get(tr.p, k, &ts[k], &es[k], nullptr));
      const double drift = sbpp_trace_summary(tr.p);
      pass = pass && std::abs(drift) <= 1e-8;
      if (g.format == "csv") {
        for (int k = 0; k < len; ++k)
          sink.os() << order << ',' << n << ',' << fmt(ts[k]) << ',' << fmt(es[k]) << ',' << fmt(es[k] / es[0] - 1.0)
                    << '\n';
      } else {
        results.push_back({{"order", order}, {"n_per_block", n}, {"dt", sbpp_trace_dt(tr.p)}, {"t", ts},
                           {"energy", es}, {"ratio_minus_one", drift}});
      }
      if (!g.quiet)
        std::cerr << "order " << order << "  N/block " << n << "  dt " << fmt_short(sbpp_trace_dt(tr.p), 4)
                  << "  E(T)/E(0)-1 = " << fmt_short(drift, 3) << '\n';
    }
  if (g.format == "json") sink.os() << json{{"meta", maxwell_meta(g, a, orders, ns)}, {"results", results}}.dump(2) << '\n';
  return a.check && !pass ? kCheckFailed : kOk;
}

bool rate_in_band(int order, double q) {
  switch (order) {
    case 2: return std::abs(q - 2.0) <= 0.15;
    case 4: return std::abs(q - 3.0) <= 0.15;
    case 6: return q >= 3.8 && q <= 4.3;
  }
  return true;
}

int maxwell_converge(const Global& g, const MaxwellArgs& a, const std::vector<int>& orders, const std::vector<int>& ns) {
  const sbpp_maxwell_config c = base_config(a);
  Handle<sbpp_table, sbpp_table_destroy> tab;
  ok(sbpp_convergence(&c, orders.data(), static_cast<int>(orders.size()), ns.data(), static_cast<int>(ns.size()),
                      a.t_final, &tab.p));
  const int rows = sbpp_table_rows(tab.p);
  std::vector<sbpp_convergence_row> r(rows);
  for (int i = 0; i < rows; ++i) ok(sbpp_table_get(tab.p, i, &r[i]));

  Sink sink(g.output);
  if (g.format == "csv") {
    sink.os() << "N,order,log10_error,rate,points,dof,note\n";
    for (const auto& row : r)
      sink.os() << row.n << ',' << row.order << ',' << (row.skipped ? "" : fmt(row.log10_error)) << ','
                << (row.has_rate ? fmt(row.rate) : "") << ',' << row.points << ',' << row.dof << ',' << row.note << '\n';
  }

  bool pass = true;
  json rates = json::object();
  for (int order : orders) {
    std::vector<double> q(16);
    int count = 0;
    ok(sbpp_table_asymptotic(tab.p, order, a.window, q.data(), static_cast<int>(q.size()), &count));
    q.resize(count);
    rates[std::to_string(order)] = q;
    pass = pass && count > 0;
    for (double v : q) pass = pass && rate_in_band(order, v);
  }
  if (g.format == "json") {
    json results = json::array();
    for (const auto& row : r) {
      json j{{"N", row.n}, {"order", row.order}, {"points", row.points}, {"dof", row.dof}, {"skipped", row.skipped != 0}};
      j["log10_error"] = row.skipped ? json(nullptr) : json(row.log10_error);
      j["error"] = row.skipped ? json(nullptr) : json(row.error);
      j["rate"] = row.has_rate ? json(row.rate) : json(nullptr);
      if (row.note[0]) j["note"] = row.note;
      results.push_back(j);
    }
    sink.os() << json{{"meta", maxwell_meta(g, a, orders, ns)}, {"results", results}, {"asymptotic_rates", rates}}.dump(2)
              << '\n';
  }

  if (!g.quiet) {
    // Table layout: one row per N, log10 error and rate per order.
    std::ostringstream t;
    t << "   N  points";
    for (int order : orders) t << "   log10 e" << order << "      q" << order;
    t << '\n';
    for (int n : ns) {
      char head[32];
      std::snprintf(head, sizeof head, "%4d  %6d", n, 2 * n + 1);
      t << head;
      for (int order : orders)
        for (const auto& row : r)
          if (row.order == order && row.n == n) {
            char cell[48];
            if (row.skipped)
              std::snprintf(cell, sizeof cell, "  %9s  %7s", "-", "-");
            else if (row.has_rate)
              std::snprintf(cell, sizeof cell, "  %9.4f  %7.3f", row.log10_error, row.rate);
            else
              std::snprintf(cell, sizeof cell, "  %9.4f  %7s", row.log10_error, "-");
            t << cell;
          }
      t << '\n';
    }
    for (const auto& row : r)
      if (row.skipped) t << "order " << row.order << ", N " << row.n << ": " << row.note << '\n';
    std::cerr << t.str();
  }
  return a.check && !pass ? kCheckFailed : kOk;
}

int cmd_maxwell(const Global& g, const MaxwellArgs& a) {
  const bool conv = a.mode == "converge";
  const std::vector<int> orders = !a.orders.empty() ? a.orders : conv ? std::vector<int>{2, 4, 6} : std::vector<int>{4};
  const std::vector<int> ns = !a.ns.empty() ? a.ns : conv ? std::vector<int>{10, 20, 30, 40, 50} : std::vector<int>{20};
  if (a.mode == "spectrum") return maxwell_spectrum(g, a, orders, ns);
  if (a.mode == "energy") return maxwell_energy(g, a, orders, ns);
  return maxwell_converge(g, a, orders, ns);
}

// ---- advection ----

struct AdvectionArgs {
  std::string flavor = "single";
  int order = 4;
  int n = 40;
  std::string pattern = "flip";
  double switch_time = 0.5;
  double t_final = 1.0;
  double cfl = 0.1;
};

int cmd_advection(const Global& g, const AdvectionArgs& a) {
  sbpp_advection_config c;
  sbpp_advection_config_default(&c);
  c.multiblock = a.flavor == "multiblock" ? 1 : 0;
  c.order = a.order;
  c.n = a.n;
  c.pattern = a.pattern == "zero" ? 0 : a.pattern == "positive" ? 1 : 2;
  c.switch_time = a.switch_time;
  c.t_final = a.t_final;
  c.cfl = a.cfl;
  Handle<sbpp_trace, sbpp_trace_destroy> tr;
  ok(sbpp_advection(&c, &tr.p));
  const int len = sbpp_trace_length(tr.p);
  std::vector<double> ts(len), es(len), ds(len), swaps;
  for (int k = 0; k < len; ++k) ok(sbpp_trace_get(tr.p, k, &ts[k], &es[k], &ds[k]));
  for (int k = 0; k < sbpp_trace_swap_count(tr.p); ++k) swaps.push_back(sbpp_trace_swap_time(tr.p, k));
  const double inc = sbpp_trace_summary(tr.p);

  Sink sink(g.output);
  if (g.format == "csv") {
    sink.os() << "t,energy,boundary_defect\n";
    for (int k = 0; k < len; ++k) sink.os() << fmt(ts[k]) << ',' << fmt(es[k]) << ',' << fmt(ds[k]) << '\n';
  } else {
    json meta = meta_base(g, "demo-advection");
    meta.update({{"flavor", a.flavor}, {"order", a.order}, {"n", a.n}, {"pattern", a.pattern},
                 {"switch_time", a.switch_time}, {"t_final", a.t_final}, {"cfl", a.cfl}});
    json res{{"t", ts}, {"energy", es}, {"boundary_defect", ds}, {"swap_times", swaps},
             {"max_relative_increase", inc}};
    sink.os() << json{{"meta", meta}, {"results", json::array({res})}}.dump(2) << '\n';
  }
  if (!g.quiet) {
    std::cerr << "steps " << len - 1 << "  swaps " << swaps.size() << "  E(T)/E(0) " << fmt_short(es.back() / es.front())
              << "  max step increase/E0 " << fmt_short(inc, 3) << '\n';
  }
  return inc <= 1e-10 ? kOk : kCheckFailed;
}

// ---- dump-operator ----

struct DumpArgs {
  int order = 4;
  int n = 20;
  std::string closure = "standard";
  std::string matrix = "D";
};

int cmd_dump(const Global& g, const DumpArgs& a) {
  Handle<sbpp_operator, sbpp_operator_destroy> op;
  ok(sbpp_operator_create(a.order, a.n, a.closure == "wide" ? 1 : 0, &op.p));
  const int n = sbpp_operator_points(op.p);
  std::vector<double> m(static_cast<std::size_t>(n) * n);
  ok(a.matrix == "H" ? sbpp_operator_H(op.p, m.data()) : sbpp_operator_D(op.p, m.data()));
  std::size_t nnz = 0;
  for (double v : m) nnz += v != 0.0;
  Sink sink(g.output);
  auto& os = sink.os();
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << "% " << a.matrix << " order " << a.order << " closure " << a.closure << " N " << a.n << " on [0,1]\n";
  os << n << ' ' << n << ' ' << nnz << '\n';
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = m[static_cast<std::size_t>(i) * n + j];
      if (v != 0.0) os << i + 1 << ' ' << j + 1 << ' ' << fmt(v) << '\n';
    }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Summation-by-parts operators, projections and Maxwell solver"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config", "", "TOML-style key/value file; command-line flags take precedence");

  Global g;
  app.add_option("-o,--output", g.output, "Output path, - for stdout")->capture_default_str();
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_flag("-q,--quiet", g.quiet, "No progress report on stderr");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run invariant suites");
  verify->add_option("--only", va.only, "Comma separated suite names")->delimiter(',');
  verify->add_option("--perturb-h", va.perturb_h)->group("");

  MaxwellArgs ma;
  auto* maxwell = app.add_subcommand("maxwell", "Maxwell runs on the curved four-block grid");
  maxwell->add_option("--mode", ma.mode)->required()->check(CLI::IsMember({"spectrum", "converge", "energy"}));
  maxwell->add_option("--order", ma.orders, "Orders (2, 4, 6)")->delimiter(',')->check(CLI::IsMember({2, 4, 6}));
  maxwell->add_option("--n", ma.ns, "Intervals per block")->delimiter(',')->check(CLI::PositiveNumber);
  maxwell->add_option("--eps", ma.eps)->check(CLI::PositiveNumber)->capture_default_str();
  maxwell->add_option("--mu", ma.mu)->check(CLI::PositiveNumber)->capture_default_str();
  maxwell->add_option("--alpha", ma.alpha, "Sinusoidal mapping amplitude")->capture_default_str();
  maxwell->add_option("--metrics", ma.metrics)->check(CLI::IsMember({"discrete", "analytic"}))->capture_default_str();
  maxwell->add_option("--grid", ma.grid, "Grid file with rows i j x y")->check(CLI::ExistingFile);
  maxwell->add_option("--t-final", ma.t_final)->check(CLI::PositiveNumber)->capture_default_str();
  maxwell->add_flag("--full", ma.full, "Dense eigensolve on Q itself");
  maxwell->add_flag("--nodal", ma.nodal, "Random nodal initial data instead of smooth modes");
  maxwell->add_option("--record-every", ma.record_every)->check(CLI::PositiveNumber)->capture_default_str();
  maxwell->add_option("--window", ma.window, "Points in the asymptotic rate window")->check(CLI::Range(2, 16));
  maxwell->add_flag("--check", ma.check, "Exit 1 when the run misses its acceptance band");

  AdvectionArgs aa;
  auto* adv = app.add_subcommand("demo-advection", "1D advection energy trace");
  adv->add_option("--flavor", aa.flavor)->check(CLI::IsMember({"single", "multiblock"}))->capture_default_str();
  adv->add_option("--order", aa.order)->check(CLI::IsMember({2, 4, 6}))->capture_default_str();
  adv->add_option("--n", aa.n)->check(CLI::PositiveNumber)->capture_default_str();
  adv->add_option("--pattern", aa.pattern)->check(CLI::IsMember({"zero", "positive", "flip"}))->capture_default_str();
  adv->add_option("--switch-time", aa.switch_time)->capture_default_str();
  adv->add_option("--t-final", aa.t_final)->check(CLI::PositiveNumber)->capture_default_str();
  adv->add_option("--cfl", aa.cfl)->check(CLI::PositiveNumber)->capture_default_str();

  DumpArgs da;
  auto* dump = app.add_subcommand("dump-operator", "Write D or H in Matrix Market format");
  dump->add_option("--order", da.order)->required()->check(CLI::IsMember({2, 4, 6}));
  dump->add_option("--n", da.n, "Intervals")->required()->check(CLI::PositiveNumber);
  dump->add_option("--closure", da.closure)->check(CLI::IsMember({"standard", "wide"}))->capture_default_str();
  dump->add_option("--matrix", da.matrix)->check(CLI::IsMember({"D", "H"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*verify) return cmd_verify(g, va);
    if (*maxwell) return cmd_maxwell(g, ma);
    if (*adv) return cmd_advection(g, aa);
    if (*dump) return cmd_dump(g, da);
  } catch (const LibError& e) {
    std::cerr << "error: " << e.msg << '\n';
    const bool bad_input = e.status == SBPP_E_INVALID_ARGUMENT || e.status == SBPP_E_CONFIG || e.status == SBPP_E_IO ||
                           e.status == SBPP_E_NULL;
    return bad_input ? kConfigError : kCheckFailed;
  }
  return kConfigError;
}
