#include "caustica/fourier_bridge.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "caustica/errors.hpp"
#include "caustica/examples.hpp"

namespace caustica {

namespace {

void split(const Vec& z, int n, Vec& x, Vec& th) {
  x = z.head(n);
  th = z.tail(z.size() - n);
}

void require_critical(const PhaseFunction& f, const Vec& x, const Vec& th) {
  const Vec g = f.phi_th(x, th);
  const double r = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;
  if (r > 1e-10) {
    std::ostringstream os;
    os << "point is off C_Phi: |Phi_theta| = " << r;
    throw PreconditionError(os.str());
  }
}

}  // namespace

Mat CriticalManifold::tangent(const Vec& c) const {
  if (d_embed) return d_embed(c);
  return fd_jacobian(embed, c, 1e-6);
}

Nondegeneracy nondegeneracy_check(const PhaseFunction& f, const Vec& x, const Vec& th) {
  require_critical(f, x, th);
  Mat G(f.m, f.n + f.m);
  G << f.phi_thx(x, th), f.phi_thth(x, th);
  Nondegeneracy r;
  r.sigma_min = sigma_min(G);
  r.ok = r.sigma_min > 1e-8;
  return r;
}

std::vector<CriticalPoint> critical_set(const PhaseFunction& f, const Vec& x, const StationaryOptions& opts) {
  std::vector<CriticalPoint> out;
  for (const auto& sp : stationary_points(f, x, opts)) {
    CriticalPoint cp;
    cp.x = x;
    cp.theta = sp.theta;
    cp.p = f.phi_x(x, sp.theta);
    cp.residual = sp.residual;
    Mat G(f.m, f.n + f.m);
    G << f.phi_thx(x, sp.theta), sp.hessian;
    cp.sigma_min = sigma_min(G);
    out.push_back(std::move(cp));
  }
  return out;
}

double action_on_lift(const PhaseFunction& f, const CriticalPoint& cp) {
  require_critical(f, cp.x, cp.theta);
  return f.phi(cp.x, cp.theta);
}

double action_lift_residual(const PhaseFunction& f, const CriticalManifold& M, const Vec& c) {
  const double d = 1e-5;
  double worst = 0.0;
  Vec x0, t0;
  split(M.embed(c), M.n, x0, t0);
  const Vec p = f.phi_x(x0, t0);
  for (int j = 0; j < c.size(); ++j) {
    Vec cp = c, cm = c;
    cp[j] += d;
    cm[j] -= d;
    Vec xp, tp, xm, tm;
    split(M.embed(cp), M.n, xp, tp);
    split(M.embed(cm), M.n, xm, tm);
    const double dtau = (f.phi(xp, tp) - f.phi(xm, tm)) / (2 * d);
    const double pdx = p.dot(xp - xm) / (2 * d);
    worst = std::max(worst, std::abs(dtau - pdx) / std::max(1.0, std::abs(pdx)));
  }
  return worst;
}

LagrangianChart lifted_chart(const PhaseFunction& f, const CriticalManifold& M, const std::string& name) {
  ChartMaps m;
  m.name = name;
  m.dim = M.n;
  m.domain = M.domain;
  const int n = M.n;
  m.X = [M, n](const Vec& c) { return Vec(M.embed(c).head(n)); };
  m.P = [f, M, n](const Vec& c) {
    Vec x, th;
    split(M.embed(c), n, x, th);
    return f.phi_x(x, th);
  };
  m.dX = [M, n](const Vec& c) { return Mat(M.tangent(c).topRows(n)); };
  m.dP = [f, M, n](const Vec& c) {
    Vec x, th;
    split(M.embed(c), n, x, th);
    const Mat T = M.tangent(c);
    return Mat(f.phi_xx(x, th) * T.topRows(n) + f.phi_thx(x, th).transpose() * T.bottomRows(T.rows() - n));
  };
  m.mu = M.mu;
  m.action = [f, M, n](const Vec& c) {
    Vec x, th;
    split(M.embed(c), n, x, th);
    return f.phi(x, th);
  };
  return LagrangianChart(std::move(m));
}

double density_factor(const PhaseFunction& f, const CriticalManifold& M, const Vec& c, Extension ext) {
  const int n = f.n, m = f.m;
  Vec x, th;
  split(M.embed(c), n, x, th);
  require_critical(f, x, th);
  Mat G(m, n + m);
  G << f.phi_thx(x, th), f.phi_thth(x, th);
  const Mat T = M.tangent(c);
  Mat N = G.transpose();
  if (ext == Extension::Skewed) {
    // a fixed transversal tilt; any K keeps [T | N] invertible for small entries
    Mat K(n, m);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < m; ++j) K(i, j) = 0.3 + 0.1 * i - 0.2 * j;
    N += T * K;
  }
  Mat TN(n + m, n + m);
  TN << T, N;
  if (sigma_min(TN) < 1e-12 * std::max(1.0, TN.norm()))
    throw InconsistencyError("critical-set coordinates are singular at this point");
  const Mat D = TN.inverse().topRows(n);
  Mat S(n + m, n + m);
  S << D, -G;
  const double F = M.mu(c) * det(S);
  if (!(std::abs(F) >= 1e-12)) {
    std::ostringstream os;
    os << "density factor F = " << F << " vanishes on C_Phi";
    throw InconsistentMeasureError(os.str());
  }
  return F;
}

DensityCheck density_factor_checked(const PhaseFunction& f, const CriticalManifold& M, const Vec& c, double tol) {
  DensityCheck r;
  r.F = density_factor(f, M, c, Extension::Normal);
  r.F_skewed = density_factor(f, M, c, Extension::Skewed);
  r.difference = std::abs(r.F - r.F_skewed);
  if (r.difference > tol * std::max(1.0, std::abs(r.F))) {
    std::ostringstream os;
    os << "density factor depends on the extension: " << r.F << " vs " << r.F_skewed;
    throw InconsistencyError(os.str());
  }
  return r;
}

Mat bridge_block(const PhaseFunction& f, const Vec& x, const Vec& th, const IndexSet& I) {
  const IndexSet Ib = complement(I, f.n);
  const int m = f.m, nb = static_cast<int>(Ib.size());
  const Mat thth = f.phi_thth(x, th), thx = f.phi_thx(x, th), xx = f.phi_xx(x, th);
  Mat B(m + nb, m + nb);
  B.topLeftCorner(m, m) = -thth;
  for (int j = 0; j < nb; ++j) {
    B.block(0, m + j, m, 1) = -thx.col(Ib[j]);
    B.block(m + j, 0, 1, m) = -thx.col(Ib[j]).transpose();
    for (int k = 0; k < nb; ++k) B(m + j, m + k) = -xx(Ib[j], Ib[k]);
  }
  return B;
}

long bridge_index(const PhaseFunction& f, const CriticalManifold& M, const Vec& c, const IndexSet& I) {
  Vec x, th;
  split(M.embed(c), f.n, x, th);
  const double F = density_factor(f, M, c);
  const Mat B = bridge_block(f, x, th, I);
  const int neg = sigma_minus(B);
  const long nb = static_cast<long>(complement(I, f.n).size());
  return (F < 0.0 ? -1 : 0) - neg + nb;
}

EquivalenceReport equivalence_residual(const BridgeSetup& setup, const std::function<cplx(const Vec&)>& phi,
                                       const Vec& x, const std::vector<double>& hs, const QuadratureSpec& quad) {
  const PhaseFunction& f = setup.phase;
  const CriticalManifold& M = setup.manifold;
  EquivalenceReport rep;
  rep.index = bridge_index(f, M, setup.index_point, setup.chart.I);

  StandardChart sc = setup.chart;
  sc.m = static_cast<double>(rep.index);
  const auto to_c = setup.to_c;
  sc.tau = [f, M, to_c](const Vec& alpha) {
    const Vec z = M.embed(to_c(alpha));
    CriticalPoint cp;
    split(z, f.n, cp.x, cp.theta);
    return action_on_lift(f, cp);
  };
  const Amplitude a_chart = [&](const Vec& alpha) { return phi(to_c(alpha)); };
  const PhaseAmplitude a_phase = [&](const Vec& y, const Vec& th) -> cplx {
    const Vec c = M.project(y, th);
    const cplx v = phi(c);
    if (v == 0.0) return 0.0;
    return v * std::sqrt(std::abs(density_factor(f, M, c)));
  };

  std::vector<double> res;
  bool all_positive = true;
  for (double h : hs) {
    EquivalenceRow row;
    row.h = h;
    row.lhs = brute_quadrature(f, a_phase, x, h, quad);
    row.rhs = evaluate_standard(sc, a_chart, x, h, quad);
    const double scale = std::max(std::abs(row.lhs), std::abs(row.rhs));
    row.residual = scale > 0.0 ? std::abs(row.lhs - row.rhs) / scale : 0.0;
    if (!(row.residual > 0.0)) all_positive = false;
    res.push_back(row.residual);
    rep.rows.push_back(row);
  }
  rep.order = all_positive && hs.size() >= 2 ? fitted_order(hs, res) : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

// ---------------------------------------------------------------- chart phases

namespace {

// d alpha / d y at alpha, y = (x_I, p_Ibar) in index order
Mat inverse_coordinate_jacobian(const StandardChart& sc, const Vec& alpha) {
  const Mat dx = sc.chart.dX(alpha), dp = sc.chart.dP(alpha);
  Mat rows = dp;
  for (int j : sc.I) rows.row(j) = dx.row(j);
  return rows.inverse();
}

Vec y_of(const IndexSet& Ib, const Vec& x, const Vec& th) {
  Vec y = x;
  for (std::size_t j = 0; j < Ib.size(); ++j) y[Ib[j]] = th[j];
  return y;
}

}  // namespace

PhaseFunction php_phase(const StandardChart& sc, const Box& theta_box) {
  const int n = sc.chart.dim();
  const IndexSet Ib = complement(sc.I, n);
  const int m = static_cast<int>(Ib.size());
  if (theta_box.dim() != m) throw ConfigError("theta box must have |Ibar| axes");
  PhaseFunction f;
  f.name = "php(" + sc.chart.name() + ")";
  f.n = n;
  f.m = m;
  f.theta_domain = theta_box;
  f.phi = [sc, Ib](const Vec& x, const Vec& th) {
    const Vec alpha = standard_inverse(sc, y_of(Ib, x, th));
    const Vec X = sc.chart.X(alpha);
    double v = sc.tau(alpha);
    for (std::size_t j = 0; j < Ib.size(); ++j) v += th[j] * (x[Ib[j]] - X[Ib[j]]);
    return v;
  };
  f.grad_x = [sc, Ib](const Vec& x, const Vec& th) {
    const Vec alpha = standard_inverse(sc, y_of(Ib, x, th));
    Vec g = sc.chart.P(alpha);
    for (std::size_t j = 0; j < Ib.size(); ++j) g[Ib[j]] = th[j];
    return g;
  };
  f.grad_th = [sc, Ib](const Vec& x, const Vec& th) {
    const Vec alpha = standard_inverse(sc, y_of(Ib, x, th));
    const Vec X = sc.chart.X(alpha);
    Vec g(Ib.size());
    for (std::size_t j = 0; j < Ib.size(); ++j) g[j] = x[Ib[j]] - X[Ib[j]];
    return g;
  };
  f.hess_thth = [sc, Ib](const Vec& x, const Vec& th) {
    const Vec alpha = standard_inverse(sc, y_of(Ib, x, th));
    const Mat dXy = sc.chart.dX(alpha) * inverse_coordinate_jacobian(sc, alpha);
    const int m = static_cast<int>(Ib.size());
    Mat H(m, m);
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) H(a, b) = -dXy(Ib[a], Ib[b]);
    return Mat(0.5 * (H + H.transpose()));
  };
  f.hess_thx = [sc, Ib, n](const Vec& x, const Vec& th) {
    const Vec alpha = standard_inverse(sc, y_of(Ib, x, th));
    const Mat dXy = sc.chart.dX(alpha) * inverse_coordinate_jacobian(sc, alpha);
    const int m = static_cast<int>(Ib.size());
    Mat H = Mat::Zero(m, n);
    for (int a = 0; a < m; ++a) {
      for (int i : sc.I) H(a, i) = -dXy(Ib[a], i);
      H(a, Ib[a]) = 1.0;
    }
    return H;
  };
  f.hess_xx = [sc, Ib, n](const Vec& x, const Vec& th) {
    const Vec alpha = standard_inverse(sc, y_of(Ib, x, th));
    const Mat dPy = sc.chart.dP(alpha) * inverse_coordinate_jacobian(sc, alpha);
    Mat H = Mat::Zero(n, n);
    for (int i : sc.I)
      for (int j : sc.I) H(i, j) = dPy(i, j);
    return Mat(0.5 * (H + H.transpose()));
  };
  return f;
}

CriticalManifold php_manifold(const StandardChart& sc) {
  const int n = sc.chart.dim();
  const IndexSet Ib = complement(sc.I, n);
  const int m = static_cast<int>(Ib.size());
  CriticalManifold M;
  M.n = n;
  M.m = m;
  std::vector<double> lo(n, -std::numeric_limits<double>::infinity()), hi(n, std::numeric_limits<double>::infinity());
  M.domain = Box::make(lo, hi);
  M.embed = [sc, Ib, n, m](const Vec& c) {
    const Vec alpha = standard_inverse(sc, c);
    const Vec X = sc.chart.X(alpha);
    Vec z(n + m);
    z.head(n) = c;
    for (int j = 0; j < m; ++j) {
      z[Ib[j]] = X[Ib[j]];
      z[n + j] = c[Ib[j]];
    }
    return z;
  };
  M.d_embed = [sc, Ib, n, m](const Vec& c) {
    const Vec alpha = standard_inverse(sc, c);
    const Mat dXy = sc.chart.dX(alpha) * inverse_coordinate_jacobian(sc, alpha);
    Mat T = Mat::Zero(n + m, n);
    T.topRows(n).setIdentity();
    for (int j = 0; j < m; ++j) {
      T.row(Ib[j]) = dXy.row(Ib[j]);
      T(n + j, Ib[j]) = 1.0;
    }
    return T;
  };
  M.mu = [sc](const Vec& c) {
    const Vec alpha = standard_inverse(sc, c);
    return 1.0 / jacobian_canonical(sc.chart, alpha, sc.I);
  };
  M.project = [Ib](const Vec& x, const Vec& th) { return y_of(Ib, x, th); };
  return M;
}

BridgeSetup php_setup(const StandardChart& sc, const Vec& index_point) {
  const IndexSet Ib = complement(sc.I, sc.chart.dim());
  const double rt = 1.2 * sc.momentum_radius;
  const Vec center = sc.momentum_center.size() == static_cast<Eigen::Index>(Ib.size())
                         ? sc.momentum_center
                         : Vec::Zero(static_cast<Eigen::Index>(Ib.size()));
  std::vector<double> lo, hi;
  for (std::size_t j = 0; j < Ib.size(); ++j) {
    lo.push_back(center[j] - rt);
    hi.push_back(center[j] + rt);
  }
  BridgeSetup s{php_phase(sc, Box::make(lo, hi)), php_manifold(sc), sc, {}, index_point};
  const StandardChart chart = sc;
  s.to_c = [chart](const Vec& alpha) { return canonical_coordinates(chart, alpha); };
  return s;
}

CriticalManifold airy_critical_manifold(double extent) {
  CriticalManifold M;
  M.n = M.m = 1;
  M.domain = Box::make({-extent}, {extent});
  M.embed = [](const Vec& c) { return Vec{{-c[0] * c[0], c[0]}}; };
  M.d_embed = [](const Vec& c) {
    Mat T(2, 1);
    T << -2.0 * c[0], 1.0;
    return T;
  };
  M.mu = [](const Vec&) { return 1.0; };
  M.project = [](const Vec&, const Vec& th) { return th; };
  return M;
}

BridgeSetup airy_xchart_setup() {
  StandardChart sc{airy_manifold(4.0), {0}, [](const Vec& a) { return -2.0 * a[0] * a[0] * a[0] / 3.0; }, 0.0,
                   {}, {}, {}, 1.0};
  sc.inverse = [](const Vec& y) -> std::optional<Vec> {
    if (!(y[0] < 0.0)) return std::nullopt;
    return Vec::Constant(1, std::sqrt(-y[0]));
  };
  sc.seed = Vec::Constant(1, 1.0);
  return BridgeSetup{airy_phase(4.0), airy_critical_manifold(4.0), sc, [](const Vec& a) { return a; },
                     Vec::Constant(1, 1.0)};
}

}  // namespace caustica
