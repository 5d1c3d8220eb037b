#include "caustica/chart.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "caustica/errors.hpp"

namespace caustica {

Box Box::make(std::vector<double> lo, std::vector<double> hi, std::vector<bool> periodic) {
  if (lo.size() != hi.size()) throw ConfigError("box bounds have different dimensions");
  Box b;
  b.lo = Eigen::Map<Vec>(lo.data(), static_cast<Eigen::Index>(lo.size()));
  b.hi = Eigen::Map<Vec>(hi.data(), static_cast<Eigen::Index>(hi.size()));
  b.periodic = periodic.empty() ? std::vector<bool>(lo.size(), false) : std::move(periodic);
  if (b.periodic.size() != lo.size()) throw ConfigError("periodic flags have the wrong dimension");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(b.hi[i] > b.lo[i])) throw ConfigError("box axis has hi <= lo");
  return b;
}

bool Box::contains(const Vec& p, double slack) const {
  if (p.size() != lo.size()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!std::isfinite(p[i])) return false;
    if (is_periodic(i)) continue;
    const double s = slack * std::max(1.0, hi[i] - lo[i]);
    if (p[i] < lo[i] - s || p[i] > hi[i] + s) return false;
  }
  return true;
}

Vec Box::wrap(const Vec& p) const {
  Vec q = p;
  for (int i = 0; i < dim(); ++i) {
    if (!is_periodic(i)) continue;
    const double len = hi[i] - lo[i];
    q[i] = lo[i] + std::fmod(std::fmod(p[i] - lo[i], len) + len, len);
  }
  return q;
}

double Box::distance(const Vec& a, const Vec& b) const {
  double s = 0.0;
  for (int i = 0; i < dim(); ++i) {
    double d = std::abs(a[i] - b[i]);
    if (is_periodic(i)) {
      const double len = hi[i] - lo[i];
      d = std::fmod(d, len);
      d = std::min(d, len - d);
    }
    s += d * d;
  }
  return std::sqrt(s);
}

Mat fd_jacobian(const VecFn& f, const Vec& a, double rel_step) {
  const Vec f0 = f(a);
  Mat jac(f0.size(), a.size());
  for (Eigen::Index j = 0; j < a.size(); ++j) {
    const double step = rel_step * std::max(1.0, std::abs(a[j]));
    Vec ap = a, am = a;
    ap[j] += step;
    am[j] -= step;
    jac.col(j) = (f(ap) - f(am)) / (2.0 * step);
  }
  return jac;
}

Tensor3 fd_tensor(const MatFn& df, const Vec& a, double rel_step) {
  const Mat d0 = df(a);
  const Eigen::Index m = d0.rows(), n = a.size();
  Tensor3 t(m, Mat::Zero(n, n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double step = rel_step * std::max(1.0, std::abs(a[k]));
    Vec ap = a, am = a;
    ap[k] += step;
    am[k] -= step;
    const Mat diff = (df(ap) - df(am)) / (2.0 * step);
    for (Eigen::Index i = 0; i < m; ++i) t[i].col(k) = diff.row(i).transpose();
  }
  for (auto& h : t) h = 0.5 * (h + h.transpose()).eval();
  return t;
}

LagrangianChart::LagrangianChart(ChartMaps maps) : maps_(std::move(maps)) {
  if (maps_.dim <= 0) throw ConfigError("chart dimension must be positive");
  if (maps_.domain.dim() != maps_.dim) throw ConfigError("chart domain has the wrong dimension");
  if (!maps_.X || !maps_.P || !maps_.mu) throw ConfigError("chart needs X, P and mu");
  analytic_[0] = static_cast<bool>(maps_.dX);
  analytic_[1] = static_cast<bool>(maps_.dP);
  analytic_[2] = static_cast<bool>(maps_.d2X);
  analytic_[3] = static_cast<bool>(maps_.d2P);
  if (!maps_.dX) maps_.dX = [f = maps_.X](const Vec& a) { return fd_jacobian(f, a); };
  if (!maps_.dP) maps_.dP = [f = maps_.P](const Vec& a) { return fd_jacobian(f, a); };
  if (!maps_.d2X) maps_.d2X = [f = maps_.dX](const Vec& a) { return fd_tensor(f, a); };
  if (!maps_.d2P) maps_.d2P = [f = maps_.dP](const Vec& a) { return fd_tensor(f, a); };
}

double LagrangianChart::action(const Vec& a) const {
  if (!maps_.action) throw ConfigError("chart '" + maps_.name + "' has no action");
  return maps_.action(a);
}

void LagrangianChart::require_in_domain(const Vec& a) const {
  if (!maps_.domain.contains(a, 1e-9)) {
    std::ostringstream os;
    os << "point (" << a.transpose() << ") outside the parameter domain of '" << maps_.name << "'";
    throw DomainError(os.str());
  }
}

EikonalChart::EikonalChart(LagrangianChart base, double tau_offset)
    : base_(std::move(base)), tau_offset_(tau_offset) {}

LagrangianChart compose(const LagrangianChart& chart, const CoordinateMap& map, const Box& new_domain,
                        const std::string& name) {
  ChartMaps m;
  m.name = name;
  m.dim = chart.dim();
  m.domain = new_domain;
  m.X = [chart, map](const Vec& b) { return chart.X(map.A(b)); };
  m.P = [chart, map](const Vec& b) { return chart.P(map.A(b)); };
  m.dX = [chart, map](const Vec& b) { return Mat(chart.dX(map.A(b)) * map.dA(b)); };
  m.dP = [chart, map](const Vec& b) { return Mat(chart.dP(map.A(b)) * map.dA(b)); };
  auto second = [map](const Mat& df, const Tensor3& d2f, const Vec& b) {
    const Mat da = map.dA(b);
    const Tensor3 d2a = map.d2A(b);
    Tensor3 out(df.rows());
    for (Eigen::Index i = 0; i < df.rows(); ++i) {
      Mat h = da.transpose() * d2f[i] * da;
      for (Eigen::Index a = 0; a < df.cols(); ++a) h += df(i, a) * d2a[a];
      out[i] = h;
    }
    return out;
  };
  if (map.d2A) {
    m.d2X = [chart, map, second](const Vec& b) {
      const Vec a = map.A(b);
      return second(chart.dX(a), chart.d2X(a), b);
    };
    m.d2P = [chart, map, second](const Vec& b) {
      const Vec a = map.A(b);
      return second(chart.dP(a), chart.d2P(a), b);
    };
  }
  m.mu = [chart, map](const Vec& b) { return chart.mu(map.A(b)) * det(map.dA(b)); };
  if (chart.has_action()) m.action = [chart, map](const Vec& b) { return chart.action(map.A(b)); };
  return LagrangianChart(std::move(m));
}

LagrangianChart uniformize(const LagrangianChart& chart, double x_extent) {
  const int n = chart.dim();
  ChartMaps m;
  m.name = chart.name() + "+uniformized";
  m.dim = n + 1;
  Box box;
  box.lo.resize(n + 1);
  box.hi.resize(n + 1);
  box.lo.head(n) = chart.domain().lo;
  box.hi.head(n) = chart.domain().hi;
  box.lo[n] = -x_extent;
  box.hi[n] = x_extent;
  box.periodic = chart.domain().periodic;
  if (box.periodic.empty()) box.periodic.assign(n, false);
  box.periodic.push_back(false);
  m.domain = box;
  m.X = [chart, n](const Vec& a) {
    Vec x(n + 1);
    x.head(n) = chart.X(a.head(n));
    x[n] = a[n];
    return x;
  };
  m.P = [chart, n](const Vec& a) {
    Vec p(n + 1);
    p.head(n) = chart.P(a.head(n));
    p[n] = 1.0;
    return p;
  };
  m.dX = [chart, n](const Vec& a) {
    Mat d = Mat::Zero(n + 1, n + 1);
    d.topLeftCorner(n, n) = chart.dX(a.head(n));
    d(n, n) = 1.0;
    return d;
  };
  m.dP = [chart, n](const Vec& a) {
    Mat d = Mat::Zero(n + 1, n + 1);
    d.topLeftCorner(n, n) = chart.dP(a.head(n));
    return d;
  };
  auto lift = [n](const Tensor3& t) {
    Tensor3 out(n + 1, Mat::Zero(n + 1, n + 1));
    for (int i = 0; i < n; ++i) out[i].topLeftCorner(n, n) = t[i];
    return out;
  };
  m.d2X = [chart, n, lift](const Vec& a) { return lift(chart.d2X(a.head(n))); };
  m.d2P = [chart, n, lift](const Vec& a) { return lift(chart.d2P(a.head(n))); };
  m.mu = [chart, n](const Vec& a) { return chart.mu(a.head(n)); };
  if (chart.has_action())
    m.action = [chart, n](const Vec& a) { return chart.action(a.head(n)) + a[n]; };
  return LagrangianChart(std::move(m));
}

}  // namespace caustica
