#include "sbpp/curvilinear.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace sbpp {

using std::numbers::pi;

Mapping Mapping::identity() {
  return {[](double xi, double eta) { return Eigen::Vector2d(xi, eta); },
          [](double, double) { return Eigen::Matrix2d::Identity().eval(); }, "identity"};
}

Mapping Mapping::affine(double ax, double ay) {
  return {[=](double xi, double eta) { return Eigen::Vector2d(ax * xi, ay * eta); },
          [=](double, double) {
            Eigen::Matrix2d m;
            m << ax, 0.0, 0.0, ay;
            return m;
          },
          "affine"};
}

Mapping Mapping::rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {[=](double xi, double eta) { return Eigen::Vector2d(c * xi - s * eta, s * xi + c * eta); },
          [=](double, double) {
            Eigen::Matrix2d m;
            m << c, -s, s, c;
            return m;
          },
          "rotation"};
}

Mapping Mapping::sinusoidal(double alpha) {
  return {[=](double xi, double eta) {
            const double s = alpha * std::sin(2 * pi * xi) * std::sin(2 * pi * eta);
            return Eigen::Vector2d(xi + s, eta + s);
          },
          [=](double xi, double eta) {
            const double sx = alpha * 2 * pi * std::cos(2 * pi * xi) * std::sin(2 * pi * eta);
            const double se = alpha * 2 * pi * std::sin(2 * pi * xi) * std::cos(2 * pi * eta);
            Eigen::Matrix2d m;
            m << 1.0 + sx, se, sx, 1.0 + se;
            return m;
          },
          "sinusoidal"};
}

Mapping Mapping::sector(double r0, double r1, double t0, double t1) {
  return {[=](double xi, double eta) {
            const double r = r0 + (r1 - r0) * xi, t = t0 + (t1 - t0) * eta;
            return Eigen::Vector2d(r * std::cos(t), r * std::sin(t));
          },
          [=](double xi, double eta) {
            const double r = r0 + (r1 - r0) * xi, t = t0 + (t1 - t0) * eta;
            Eigen::Matrix2d m;
            m << (r1 - r0) * std::cos(t), -r * (t1 - t0) * std::sin(t), (r1 - r0) * std::sin(t),
                r * (t1 - t0) * std::cos(t);
            return m;
          },
          "sector"};
}

double CurvilinearGrid::h_min() const {
  const Grid2D& g = grid();
  double h = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < g.ny(); ++j)
    for (Index i = 0; i < g.nx(); ++i) {
      const Index p = g.index(i, j);
      if (i + 1 < g.nx()) h = std::min(h, std::hypot(x(p + 1) - x(p), y(p + 1) - y(p)));
      if (j + 1 < g.ny()) {
        const Index q = g.index(i, j + 1);
        h = std::min(h, std::hypot(x(q) - x(p), y(q) - y(p)));
      }
    }
  return h;
}

Ops2D four_block_square(int order, Index N) {
  const Factor1D f = Factor1D::from(build_sbp1d(order, N, Closure::standard, 0.5));
  const Ops2D blk(f, f);
  return assemble_four_block({{{blk, blk}, {blk, blk}}});
}

namespace {

void check_jacobian(const Vec& J) {
  for (Index k = 0; k < J.size(); ++k)
    require(J(k) > 0.0 && std::isfinite(J(k)), ErrorCode::invalid_argument,
            "non-positive Jacobian at grid point " + std::to_string(k));
}

}  // namespace

CurvilinearGrid build_metrics(const Mapping& map, const Ops2D& ref, MetricMode mode) {
  require(static_cast<bool>(map.r), ErrorCode::invalid_argument, "build_metrics: mapping has no coordinates");
  const Vec xi = ref.xs(), eta = ref.ys();
  const Index n = xi.size();
  Vec x(n), y(n);
  for (Index k = 0; k < n; ++k) {
    const Eigen::Vector2d r = map.r(xi(k), eta(k));
    x(k) = r(0);
    y(k) = r(1);
  }
  if (mode == MetricMode::discrete) return build_metrics(x, y, ref);

  require(static_cast<bool>(map.jacobian), ErrorCode::invalid_argument,
          "build_metrics: analytic mode needs mapping derivatives");
  Vec xx(n), xe(n), yx(n), ye(n);
  for (Index k = 0; k < n; ++k) {
    const Eigen::Matrix2d m = map.jacobian(xi(k), eta(k));
    xx(k) = m(0, 0);
    xe(k) = m(0, 1);
    yx(k) = m(1, 0);
    ye(k) = m(1, 1);
  }
  Vec J = (xx.array() * ye.array() - xe.array() * yx.array()).matrix();
  check_jacobian(J);
  return CurvilinearGrid{ref, x, y, xx, xe, yx, ye, J, MetricMode::analytic};
}

CurvilinearGrid build_metrics(const Vec& x, const Vec& y, const Ops2D& ref) {
  require(x.size() == ref.grid().size() && y.size() == ref.grid().size(), ErrorCode::dimension_mismatch,
          "build_metrics: coordinate vectors do not match the grid");
  Vec xx = ref.apply_dx(x), xe = ref.apply_dy(x);
  Vec yx = ref.apply_dx(y), ye = ref.apply_dy(y);
  Vec J = (xx.array() * ye.array() - xe.array() * yx.array()).matrix();
  check_jacobian(J);
  return CurvilinearGrid{ref, x, y, xx, xe, yx, ye, J, MetricMode::discrete};
}

CurvilinearGrid import_grid(const std::string& path, const Ops2D& ref) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::io_error, "import_grid: cannot open " + path);
  const Grid2D& g = ref.grid();
  Vec x = Vec::Constant(g.size(), std::nan("")), y = x;
  std::string line;
  Index count = 0, lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto c = line.find('#'); c != std::string::npos) line.erase(c);
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream ss(line);
    double fi, fj, px, py;
    if (!(ss >> fi)) continue;  // blank or header
    require(static_cast<bool>(ss >> fj >> px >> py), ErrorCode::io_error,
            "import_grid: malformed row at line " + std::to_string(lineno));
    const Index i = static_cast<Index>(std::llround(fi)), j = static_cast<Index>(std::llround(fj));
    require(i >= 0 && i < g.nx() && j >= 0 && j < g.ny(), ErrorCode::io_error,
            "import_grid: index out of range at line " + std::to_string(lineno));
    const Index p = g.index(i, j);
    require(std::isnan(x(p)), ErrorCode::io_error, "import_grid: duplicate point at line " + std::to_string(lineno));
    x(p) = px;
    y(p) = py;
    ++count;
  }
  require(count == g.size(), ErrorCode::io_error,
          "import_grid: expected " + std::to_string(g.size()) + " points, read " + std::to_string(count));
  return build_metrics(x, y, ref);
}

namespace {

// 0.5 J^{-1} (a D1 u + D1 (a u) - b D2 u - D2 (b u)) with D1, D2 the reference derivatives.
Vec split_form(const CurvilinearGrid& g, const Vec& u, Index nc, const Vec& a, bool a_on_xi, const Vec& b) {
  const Ops2D& ref = g.ref;
  const Index n = g.grid().size();
  require(u.size() == n * nc, ErrorCode::dimension_mismatch, "curvilinear derivative: wrong state length");
  auto d1 = [&](const Vec& v) { return a_on_xi ? ref.apply_dx(v, nc) : ref.apply_dy(v, nc); };
  auto d2 = [&](const Vec& v) { return a_on_xi ? ref.apply_dy(v, nc) : ref.apply_dx(v, nc); };
  auto scale = [&](const Vec& w, const Vec& v) {
    Vec out(v.size());
    for (Index p = 0; p < n; ++p) out.segment(p * nc, nc) = w(p) * v.segment(p * nc, nc);
    return out;
  };
  Vec s = scale(a, d1(u)) + d1(scale(a, u)) - scale(b, d2(u)) - d2(scale(b, u));
  return scale((0.5 * g.J.cwiseInverse()).eval(), s);
}

}  // namespace

Vec curvilinear_dx(const CurvilinearGrid& g, const Vec& u, Index nc) {
  return split_form(g, u, nc, g.y_eta, true, g.y_xi);
}

Vec curvilinear_dy(const CurvilinearGrid& g, const Vec& u, Index nc) {
  return split_form(g, u, nc, g.x_xi, false, g.x_eta);
}

CurvilinearDiffOps build_curvilinear_diffops(const CurvilinearGrid& g) {
  const Mat dxi = g.ref.Dx().matrix(), deta = g.ref.Dy().matrix();
  const auto D = [](const Vec& v) { return v.asDiagonal(); };
  const Vec jinv = 0.5 * g.J.cwiseInverse();
  Mat dx = jinv.asDiagonal() * (D(g.y_eta) * dxi + dxi * D(g.y_eta) - D(g.y_xi) * deta - deta * D(g.y_xi));
  Mat dy = jinv.asDiagonal() * (D(g.x_xi) * deta + deta * D(g.x_xi) - D(g.x_eta) * dxi - dxi * D(g.x_eta));
  Space s(Norm::diagonal((g.J.array() * g.ref.weights().array()).matrix()));
  return {LinearMap(std::move(dx), s, s), LinearMap(std::move(dy), s, s)};
}

BoundaryGeometry build_boundary_geometry(const CurvilinearGrid& g, double compat_tol) {
  const auto pts = segment_points(g.grid());
  BoundaryGeometry bg{{}, {}, {}, boundary_embedding(g.grid()), Vec(), Vec(), Vec(), Vec(),
                      Norm::identity(1), Mat(), Mat(), Mat(), Mat(), Mat(), true, 0.0};
  for (int k = 0; k < 4; ++k) {
    const Index m = static_cast<Index>(pts[k].size());
    bg.arc[k].resize(m);
    bg.nx[k].resize(m);
    bg.ny[k].resize(m);
    for (Index q = 0; q < m; ++q) {
      const Index p = pts[k][q];
      const bool along_xi = k == 0 || k == 2;
      const double tx = along_xi ? g.x_xi(p) : g.x_eta(p);
      const double ty = along_xi ? g.y_xi(p) : g.y_eta(p);
      const double s = std::hypot(tx, ty);
      require(s > 0.0, ErrorCode::invalid_argument, "boundary geometry: degenerate tangent");
      const double sign = k < 2 ? 1.0 : -1.0;
      bg.arc[k](q) = s;
      bg.nx[k](q) = sign * ty / s;
      bg.ny[k](q) = -sign * tx / s;
    }
  }
  auto cat = [](const std::array<Vec, 4>& a) {
    Vec out(a[0].size() + a[1].size() + a[2].size() + a[3].size());
    out << a[0], a[1], a[2], a[3];
    return out;
  };
  bg.hplus = boundary_weights_plus(g.ref.fx().h(), g.ref.fy().h());
  bg.splus = cat(bg.arc);
  bg.nxplus = cat(bg.nx);
  bg.nyplus = cat(bg.ny);

  const Mat& E = bg.E;
  const Mat et_hp = E.transpose() * bg.hplus.asDiagonal();
  bg.H_gamma = Norm::detect(et_hp * E);
  const Mat eplus = bg.H_gamma.solve(et_hp);  // E+ = E* = H_gamma^{-1} E^T H+
  bg.S = eplus * bg.splus.asDiagonal() * E;
  const Eigen::PartialPivLU<Mat> slu(bg.S);
  bg.Nx = slu.solve(eplus * (bg.splus.array() * bg.nxplus.array()).matrix().asDiagonal() * E);
  bg.Ny = slu.solve(eplus * (bg.splus.array() * bg.nyplus.array()).matrix().asDiagonal() * E);
  bg.Nx_simple = eplus * bg.nxplus.asDiagonal() * E;
  bg.Ny_simple = eplus * bg.nyplus.asDiagonal() * E;

  const double smax = bg.splus.cwiseAbs().maxCoeff();
  double mismatch = 0.0;
  for (int k = 0; k < 4; ++k)
    mismatch = std::max(mismatch, std::abs(bg.arc[k](bg.arc[k].size() - 1) - bg.arc[(k + 1) % 4](0)) / smax);
  bg.corner_mismatch = mismatch;
  bg.corner_compatible = mismatch <= compat_tol;
  return bg;
}

double curvilinear_sbp_defect(const CurvilinearGrid& g, const BoundaryGeometry& bg, bool x_direction, bool simple) {
  const CurvilinearDiffOps ops = build_curvilinear_diffops(g);
  const Mat& D = x_direction ? ops.Dx.matrix() : ops.Dy.matrix();
  const Vec w = (g.J.array() * g.ref.weights().array()).matrix();
  const Mat jhd = w.asDiagonal() * D;
  const Mat lhs = jhd + jhd.transpose();
  const Mat& N = simple ? (x_direction ? bg.Nx_simple : bg.Ny_simple) : (x_direction ? bg.Nx : bg.Ny);
  const Mat R = boundary_restriction(g.grid());
  const Mat rhs = R.transpose() * (bg.H_gamma.matrix() * bg.S * N) * R;
  return rel_diff(lhs, rhs);
}

}  // namespace sbpp
