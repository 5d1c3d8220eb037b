#include "caustica/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "caustica/errors.hpp"

namespace caustica {

PsiSplit split_psi(const EikonalChart& eik, const Vec& center) {
  const LagrangianChart& c = eik.base();
  const int n = c.dim();
  PsiSplit s;
  if (n == 1) return s;
  const Mat xpsi = c.dX(center).rightCols(n - 1);
  s.k = numerical_rank(xpsi, 1e-8);
  Eigen::ColPivHouseholderQR<Mat> qr(xpsi);
  const auto& perm = qr.colsPermutation().indices();
  std::vector<bool> chosen(n - 1, false);
  for (int j = 0; j < s.k; ++j) chosen[perm[j]] = true;
  for (int j = 0; j < n - 1; ++j) (chosen[j] ? s.psi_prime : s.psi_second).push_back(j);
  return s;
}

NewSingularChart::NewSingularChart(EikonalChart eik, Vec center, ManifoldPath path, NewChartOptions opts)
    : eik_(std::move(eik)), center_(std::move(center)), path_(std::move(path)), opts_(std::move(opts)) {
  chart().require_in_domain(center_);
  split_ = split_psi(eik_, center_);
  const int n2 = n() - 1 - split_.k;
  if (!opts_.psi2_axes.empty() && static_cast<int>(opts_.psi2_axes.size()) != n2)
    throw ConfigError("psi'' integration axes do not match the rank split");
  if (opts_.psi2_axes.empty()) {
    const Box& d = chart().domain();
    for (int j : split_.psi_second) {
      AxisSpec ax;
      ax.lo = d.lo[j + 1];
      ax.hi = d.hi[j + 1];
      ax.rule = d.is_periodic(j + 1) ? Rule::Periodic : Rule::GaussLegendre;
      opts_.psi2_axes.push_back(ax);
    }
  }
  x_star_ = chart().X(center_);
  if (opts_.index_override) {
    index_.raw = *opts_.index_override;
    index_.value = std::lround(index_.raw);
    index_.integral = std::abs(index_.raw - static_cast<double>(index_.value)) < 0.1;
  } else {
    index_ = new_chart_index(chart(), path_, index_block());
  }
  m_u_ = (index_.integral ? static_cast<double>(index_.value) : index_.raw) + opts_.index_shift;
}

Vec NewSingularChart::assemble(const Vec& u, const Vec& psi2) const {
  Vec a(n());
  a[0] = u[0];
  for (int j = 0; j < split_.k; ++j) a[1 + split_.psi_prime[j]] = u[1 + j];
  for (std::size_t j = 0; j < split_.psi_second.size(); ++j) a[1 + split_.psi_second[j]] = psi2[j];
  return a;
}

Vec NewSingularChart::psi2_of(const Vec& alpha) const {
  Vec p(static_cast<Eigen::Index>(split_.psi_second.size()));
  for (std::size_t j = 0; j < split_.psi_second.size(); ++j) p[j] = alpha[1 + split_.psi_second[j]];
  return p;
}

Vec NewSingularChart::u_of(const Vec& alpha) const {
  Vec u(1 + split_.k);
  u[0] = alpha[0];
  for (int j = 0; j < split_.k; ++j) u[1 + j] = alpha[1 + split_.psi_prime[j]];
  return u;
}

Vec NewSingularChart::me1_residual(const Vec& x, const Vec& psi2, const Vec& u) const {
  const Vec a = assemble(u, psi2);
  const Vec d = x - chart().X(a);
  const Mat dx = chart().dX(a);
  Vec r(1 + split_.k);
  r[0] = chart().P(a).dot(d);
  for (int j = 0; j < split_.k; ++j) r[1 + j] = dx.col(1 + split_.psi_prime[j]).dot(d);
  return r;
}

namespace {

// Derivative of the chart-system residual with respect to chart coordinate c.
Vec me1_column(const LagrangianChart& ch, const PsiSplit& sp, const Vec& a, const Vec& d, const Mat& dx,
               const Mat& dp, const Tensor3& d2x, int c) {
  Vec col(1 + sp.k);
  col[0] = dp.col(c).dot(d) - ch.P(a).dot(dx.col(c));
  for (int j = 0; j < sp.k; ++j) {
    const int cj = 1 + sp.psi_prime[j];
    double s = 0.0;
    for (Eigen::Index i = 0; i < d.size(); ++i) s += d2x[i](cj, c) * d[i];
    col[1 + j] = s - dx.col(cj).dot(dx.col(c));
  }
  return col;
}

}  // namespace

Mat NewSingularChart::me1_jacobian(const Vec& x, const Vec& psi2, const Vec& u) const {
  const Vec a = assemble(u, psi2);
  const Vec d = x - chart().X(a);
  const Mat dx = chart().dX(a), dp = chart().dP(a);
  const Tensor3 d2x = chart().d2X(a);
  Mat J(1 + split_.k, 1 + split_.k);
  J.col(0) = me1_column(chart(), split_, a, d, dx, dp, d2x, 0);
  for (int l = 0; l < split_.k; ++l)
    J.col(1 + l) = me1_column(chart(), split_, a, d, dx, dp, d2x, 1 + split_.psi_prime[l]);
  return J;
}

Vec NewSingularChart::solve(const Vec& x, const Vec& psi2, const std::optional<Vec>& guess) const {
  if (opts_.closed_form) {
    auto u = opts_.closed_form(x, psi2);
    if (!u) throw OutsideChartError("closed-form chart-system solution unavailable at this point");
    return *u;
  }
  Vec seed = guess ? *guess : (opts_.seed ? opts_.seed(x, psi2) : u_of(center_));
  std::vector<Vec> starts{seed};
  for (int l = 0; l < seed.size() && static_cast<int>(starts.size()) < 8; ++l) {
    for (double s : {0.3, -0.3}) {
      if (static_cast<int>(starts.size()) >= 8) break;
      Vec v = seed;
      v[l] += s;
      starts.push_back(v);
    }
  }
  NewtonOptions no;
  no.max_iter = 50;
  no.residual_scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  auto f = [&](const Vec& u) { return me1_residual(x, psi2, u); };
  auto j = [&](const Vec& u) { return me1_jacobian(x, psi2, u); };
  bool ill = false;
  for (const Vec& s : starts) {
    NewtonResult r = newton_solve(f, j, s, no);
    if (r.converged) return r.x;
    ill = ill || r.ill_conditioned;
  }
  std::ostringstream os;
  os << "chart system has no solution near the seed at x = (" << x.transpose() << ")";
  if (ill) throw LeavingWError(os.str() + "; system Jacobian condition above 1e12");
  throw OutsideChartError(os.str());
}

Vec solve_me1(const NewSingularChart& chart, const Vec& x, const Vec& psi2, const Vec& guess) {
  return chart.solve(x, psi2, guess);
}

Vec NewSingularChart::tau_gradient(const Vec& x, const Vec& psi2, const Vec& u) const {
  const int nn = n();
  const int n2 = static_cast<int>(split_.psi_second.size());
  const Vec a = assemble(u, psi2);
  const Vec d = x - chart().X(a);
  const Mat dx = chart().dX(a), dp = chart().dP(a);
  const Tensor3 d2x = chart().d2X(a);
  const Mat Gu = me1_jacobian(x, psi2, u);
  Mat Gz(1 + split_.k, nn + n2);
  Gz.block(0, 0, 1, nn) = chart().P(a).transpose();
  for (int j = 0; j < split_.k; ++j) Gz.block(1 + j, 0, 1, nn) = dx.col(1 + split_.psi_prime[j]).transpose();
  for (int m = 0; m < n2; ++m) Gz.col(nn + m) = me1_column(chart(), split_, a, d, dx, dp, d2x, 1 + split_.psi_second[m]);
  const Mat du = -Gu.partialPivLu().solve(Gz);
  return du.row(0).transpose();
}

Mat NewSingularChart::tau_hessian(const Vec& x, const Vec& psi2) const {
  const int nn = n();
  const int n2 = static_cast<int>(psi2.size());
  const Vec u0 = solve(x, psi2, u_of(center_));
  Vec z(nn + n2);
  z << x, psi2;
  Mat H(nn + n2, nn + n2);
  for (int j = 0; j < nn + n2; ++j) {
    const double s = 1e-5 * std::max(1.0, std::abs(z[j]));
    Vec zp = z, zm = z;
    zp[j] += s;
    zm[j] -= s;
    const Vec up = solve(zp.head(nn), zp.tail(n2), u0);
    const Vec um = solve(zm.head(nn), zm.tail(n2), u0);
    H.col(j) = (tau_gradient(zp.head(nn), zp.tail(n2), up) - tau_gradient(zm.head(nn), zm.tail(n2), um)) / (2 * s);
  }
  return 0.5 * (H + H.transpose());
}

CMat NewSingularChart::index_block() const {
  const Mat H = tau_hessian(x_star_, psi2_star());
  CMat B = -kI * H.cast<cplx>();
  for (int i = 0; i < n(); ++i) B(i, i) += 1.0;
  return B;
}

MMatrix m_matrix(const NewSingularChart& chart, const Vec& alpha) {
  const LagrangianChart& c = chart.chart();
  const PsiSplit& sp = chart.split();
  const int n = c.dim();
  const Mat dx = c.dX(alpha), dp = c.dP(alpha);
  Mat Xp(n, sp.k), Pp(n, sp.k);
  for (int j = 0; j < sp.k; ++j) {
    Xp.col(j) = dx.col(1 + sp.psi_prime[j]);
    Pp.col(j) = dp.col(1 + sp.psi_prime[j]);
  }
  MMatrix out;
  out.M.resize(n, n);
  out.M.col(0) = c.P(alpha);
  out.M.middleCols(1, sp.k) = Xp;
  const Mat G = Xp.transpose() * Xp;
  for (std::size_t m = 0; m < sp.psi_second.size(); ++m) {
    const int cm = 1 + sp.psi_second[m];
    Vec col = dp.col(cm);
    if (sp.k > 0) col -= Pp * G.ldlt().solve(Xp.transpose() * dx.col(cm));
    out.M.col(1 + sp.k + static_cast<Eigen::Index>(m)) = col;
  }
  out.det = det(out.M);
  double scale = 1.0;
  for (int j = 0; j < n; ++j) scale *= std::max(out.M.col(j).norm(), 1e-300);
  if (!(std::abs(out.det) >= 1e-12 * std::min(scale, 1.0))) throw DegenerateMError("det M vanishes at this point");
  return out;
}

cplx evaluate_new(const NewSingularChart& chart, const Amplitude& a, const Vec& x, double h,
                  const QuadratureSpec& quad, Exec exec, EvalStats* stats) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  const LagrangianChart& c = chart.chart();
  const PsiSplit& sp = chart.split();
  const CutoffSpec& chi = chart.options().cutoff;
  auto integrand = [&](const Vec& psi2) -> cplx {
    const double w = chi.empty() ? 1.0 : chi(psi2);
    if (w == 0.0) return 0.0;
    const Vec u = chart.solve(x, psi2);
    const Vec alpha = chart.assemble(u, psi2);
    const cplx amp = a(alpha);
    if (amp == 0.0) return 0.0;
    const double mu = c.mu(alpha);
    const double dm = m_matrix(chart, alpha).det;
    double g = 1.0;
    if (sp.k > 0) {
      Mat Xp(c.dim(), sp.k);
      const Mat dx = c.dX(alpha);
      for (int j = 0; j < sp.k; ++j) Xp.col(j) = dx.col(1 + sp.psi_prime[j]);
      g = det(Mat(Xp.transpose() * Xp));
    }
    const double tau = chart.eik().eikonal(alpha);
    return std::exp(kI * (tau / h)) * amp * std::sqrt(std::abs(mu * dm) / g) * w;
  };
  const QuadResult q = integrate(chart.options().psi2_axes, integrand, quad, exec);
  if (stats) {
    stats->evaluations = q.evaluations;
    stats->nodes_per_axis = q.nodes_per_axis;
    stats->change = q.change;
  }
  const int n2 = chart.n() - 1 - chart.k();
  const cplx pref = std::exp(-kI * (kPi * chart.m_U() / 2)) / std::pow(2 * kPi * h, 0.5 * n2);
  return pref * q.value;
}

std::vector<Branch> preimages(const EikonalChart& eik, const Vec& x, const NonsingularOptions& opts) {
  const LagrangianChart& c = eik.base();
  const Box& dom = c.domain();
  auto f = [&](const Vec& a) { return Vec(c.X(a) - x); };
  auto j = [&](const Vec& a) { return c.dX(a); };
  NewtonOptions no;
  no.residual_scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  no.max_iter = 60;
  auto roots = newton_multistart(
      f, j, opts.seeds, no, [&](const Vec& a) { return dom.contains(a); },
      [&](const Vec& p, const Vec& q) { return dom.distance(p, q); }, 1e-6);
  std::vector<Branch> out;
  for (auto& r : roots) {
    Branch b;
    b.alpha = dom.wrap(r.x);
    const Mat dx = c.dX(b.alpha);
    double scale = 1.0;
    for (Eigen::Index k = 0; k < dx.cols(); ++k) scale *= dx.col(k).norm();
    scale /= std::abs(c.mu(b.alpha));
    b.jacobian = jacobian_eps(c, b.alpha, 0.0).real();
    if (std::abs(b.jacobian) < opts.caustic_guard * std::max(1.0, scale)) {
      std::ostringstream os;
      os << "preimage (" << b.alpha.transpose() << ") has |J| = " << std::abs(b.jacobian)
         << "; use the new singular chart here";
      throw NearCausticError(os.str());
    }
    b.index = opts.branch_index ? opts.branch_index(b.alpha) : 0.0;
    out.push_back(std::move(b));
  }
  return out;
}

cplx evaluate_nonsingular(const EikonalChart& eik, const Amplitude& a, const Vec& x, double h,
                          const NonsingularOptions& opts) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  const LagrangianChart& c = eik.base();
  std::vector<int> all(c.dim() - 1);
  for (int j = 0; j + 1 < c.dim(); ++j) all[j] = j;
  cplx sum = 0.0;
  for (const Branch& b : preimages(eik, x, opts)) {
    const cplx amp = a(b.alpha);
    if (amp == 0.0) continue;
    const double g = det(gram(eik, b.alpha, all));
    const double tau = eik.eikonal(b.alpha);
    const cplx phase = std::exp(kI * (tau / h - kPi * b.index / 2));
    sum += phase * amp * std::sqrt(std::abs(c.mu(b.alpha)) * c.P(b.alpha).norm()) / std::pow(g, 0.25);
  }
  return sum;
}

Vec canonical_coordinates(const StandardChart& sc, const Vec& alpha) {
  Vec y = sc.chart.P(alpha);
  const Vec x = sc.chart.X(alpha);
  for (int j : sc.I) y[j] = x[j];
  return y;
}

Vec standard_inverse(const StandardChart& sc, const Vec& y) {
  if (sc.inverse) {
    auto a = sc.inverse(y);
    if (!a) throw CoordinateChartError("(x_I, p_Ibar) outside the chart");
    return *a;
  }
  const LagrangianChart& c = sc.chart;
  auto f = [&](const Vec& a) { return Vec(canonical_coordinates(sc, a) - y); };
  auto j = [&](const Vec& a) {
    Mat rows = c.dP(a);
    const Mat dx = c.dX(a);
    for (int i : sc.I) rows.row(i) = dx.row(i);
    return rows;
  };
  NewtonOptions no;
  no.residual_scale = std::max(1.0, y.cwiseAbs().maxCoeff());
  const NewtonResult r = newton_solve(f, j, sc.seed, no);
  if (!r.converged || !c.domain().contains(r.x))
    throw CoordinateChartError("Newton inversion of (x_I, p_Ibar) failed");
  return c.domain().wrap(r.x);
}

cplx evaluate_standard(const StandardChart& sc, const Amplitude& a, const Vec& x, double h,
                       const QuadratureSpec& quad, Exec exec, EvalStats* stats) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  const LagrangianChart& c = sc.chart;
  const IndexSet Ibar = complement(sc.I, c.dim());
  const int nb = static_cast<int>(Ibar.size());
  const double r = sc.momentum_radius, rt = 1.2 * sc.momentum_radius;
  Vec center = sc.momentum_center.size() == nb ? sc.momentum_center : Vec::Zero(nb);
  auto integrand = [&](const Vec& p) -> cplx {
    const double w = nb == 0 ? 1.0 : bump((p - center).norm(), r, rt);
    if (w == 0.0) return 0.0;
    Vec y = x;
    for (int j = 0; j < nb; ++j) y[Ibar[j]] = p[j];
    const Vec alpha = standard_inverse(sc, y);
    const cplx amp = a(alpha);
    if (amp == 0.0) return 0.0;
    const double jI = jacobian_canonical(c, alpha, sc.I);
    const Vec X = c.X(alpha);
    double phase = sc.tau(alpha);
    for (int j = 0; j < nb; ++j) phase += p[j] * (x[Ibar[j]] - X[Ibar[j]]);
    return std::exp(kI * (phase / h)) * amp / std::sqrt(std::abs(jI)) * w;
  };
  std::vector<AxisSpec> axes;
  for (int j = 0; j < nb; ++j) axes.push_back({center[j] - rt, center[j] + rt, Rule::GaussLegendre});
  const QuadResult q = integrate(axes, integrand, quad, exec);
  if (stats) {
    stats->evaluations = q.evaluations;
    stats->nodes_per_axis = q.nodes_per_axis;
    stats->change = q.change;
  }
  const cplx pref = std::exp(kI * (kPi * nb / 4 - kPi * sc.m / 2)) / std::pow(2 * kPi * h, 0.5 * nb);
  return pref * q.value;
}

cplx evaluate_global(const PartitionOfUnity& pou, const Amplitude& a, const Vec& x, double h,
                     const std::vector<Vec>& support_samples) {
  for (const Vec& s : support_samples) {
    if (a(s) == 0.0) continue;
    double total = 0.0;
    for (const auto& piece : pou.pieces) total += piece.weight(s);
    if (std::abs(total - 1.0) > 1e-12) {
      std::ostringstream os;
      os << "partition weights sum to " << total << " at (" << s.transpose() << ")";
      throw CoverageError(os.str());
    }
  }
  cplx sum = 0.0;
  for (const auto& piece : pou.pieces) {
    const auto weight = piece.weight;
    Amplitude part = [&a, weight](const Vec& alpha) -> cplx {
      const double w = weight(alpha);
      return w == 0.0 ? cplx(0.0) : w * a(alpha);
    };
    sum += piece.evaluate(part, x, h);
  }
  return sum;
}

double path_action(const LagrangianChart& chart, const ManifoldPath& path) {
  auto f = [&](const Vec& t) -> cplx {
    const double s = 1e-6;
    const double t0 = std::max(0.0, t[0] - s), t1 = std::min(1.0, t[0] + s);
    const Vec a = path(t[0]);
    const Vec v = (path(t1) - path(t0)) / (t1 - t0);
    return chart.P(a).dot(chart.dX(a) * v);
  };
  QuadratureSpec q;
  q.rel_tol = 1e-10;
  q.abs_tol = 1e-14;
  return integrate({{0.0, 1.0, Rule::GaussLegendre}}, f, q, Exec::Serial).value.real();
}

std::vector<QuantizationResidual> check_quantization(const LagrangianChart& chart,
                                                     const std::vector<ManifoldPath>& cycles, double h,
                                                     double tol) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  std::vector<QuantizationResidual> out;
  for (const auto& cyc : cycles) {
    if (chart.domain().distance(cyc.start(), cyc.end()) > 1e-10) throw NotACycleError("path endpoints differ");
    QuantizationResidual r;
    r.action = path_action(chart, cyc);
    r.index = cycle_index(chart, cyc).value;
    const double raw = 2.0 / (kPi * h) * r.action - static_cast<double>(r.index);
    r.residual = raw - 4.0 * std::round(raw / 4.0);
    if (r.residual <= -2.0) r.residual += 4.0;
    r.pass = std::abs(r.residual) < tol;
    out.push_back(r);
  }
  return out;
}

}  // namespace caustica
