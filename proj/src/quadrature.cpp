#include "caustica/quadrature.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <omp.h>

#include "caustica/errors.hpp"

namespace caustica {

namespace {

struct Rule1D {
  std::vector<double> x, w;
};

void build_gl16(std::vector<double>& nodes, std::vector<double>& weights) {
  using G = boost::math::quadrature::gauss<double, 16>;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = a.size(); i-- > 0;) {
    nodes.push_back(-a[i]);
    weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    nodes.push_back(a[i]);
    weights.push_back(w[i]);
  }
}

Rule1D axis_rule(const AxisSpec& axis, int nodes) {
  Rule1D r;
  const double len = axis.hi - axis.lo;
  if (axis.rule == Rule::Periodic) {
    const double step = len / nodes;
    for (int i = 0; i < nodes; ++i) {
      r.x.push_back(axis.lo + step * i);
      r.w.push_back(step);
    }
    return r;
  }
  const int panels = std::max(1, nodes / 16);
  const double width = len / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = axis.lo + width * (p + 0.5);
    for (std::size_t i = 0; i < gl16_nodes().size(); ++i) {
      r.x.push_back(mid + 0.5 * width * gl16_nodes()[i]);
      r.w.push_back(0.5 * width * gl16_weights()[i]);
    }
  }
  return r;
}

}  // namespace

const std::vector<double>& gl16_nodes() {
  static const std::vector<double> n = [] {
    std::vector<double> x, w;
    build_gl16(x, w);
    return x;
  }();
  return n;
}

const std::vector<double>& gl16_weights() {
  static const std::vector<double> w = [] {
    std::vector<double> x, wt;
    build_gl16(x, wt);
    return wt;
  }();
  return w;
}

QuadResult integrate_fixed(const std::vector<AxisSpec>& axes, const std::function<cplx(const Vec&)>& f,
                           int nodes, Exec exec) {
  QuadResult res;
  res.nodes_per_axis = nodes;
  if (axes.empty()) {
    res.value = f(Vec());
    res.abs_integral = std::abs(res.value);
    res.evaluations = 1;
    return res;
  }
  std::vector<Rule1D> rules;
  long total = 1;
  for (const auto& a : axes) {
    rules.push_back(axis_rule(a, nodes));
    total *= static_cast<long>(rules.back().x.size());
  }
  const int d = static_cast<int>(axes.size());
  std::vector<cplx> vals(static_cast<std::size_t>(total));
  std::vector<double> mags(static_cast<std::size_t>(total));
  const bool par = exec == Exec::Parallel && !omp_in_parallel();
#pragma omp parallel for schedule(static) if (par)
  for (long idx = 0; idx < total; ++idx) {
    Vec node(d);
    double w = 1.0;
    long rem = idx;
    for (int ax = d - 1; ax >= 0; --ax) {
      const long cnt = static_cast<long>(rules[ax].x.size());
      const long j = rem % cnt;
      rem /= cnt;
      node[ax] = rules[ax].x[j];
      w *= rules[ax].w[j];
    }
    const cplx v = f(node);
    vals[idx] = w * v;
    mags[idx] = w * std::abs(v);
  }
  res.value = pairwise_sum(vals);
  res.abs_integral = pairwise_sum(mags);
  res.evaluations = total;
  return res;
}

QuadResult integrate(const std::vector<AxisSpec>& axes, const std::function<cplx(const Vec&)>& f,
                     const QuadratureSpec& spec, Exec exec) {
  if (axes.empty()) return integrate_fixed(axes, f, 1, exec);
  if (!(spec.rel_tol > 0.0)) throw ConfigError("quadrature tolerance must be positive");
  int nodes = std::max(16, spec.initial_nodes);
  QuadResult prev = integrate_fixed(axes, f, nodes, exec);
  long evaluations = prev.evaluations;
  for (int level = 1;; ++level) {
    nodes *= 2;
    long total = 1;
    for (std::size_t i = 0; i < axes.size(); ++i) total *= nodes;
    if (nodes > spec.max_nodes || total > spec.max_total_nodes) {
      std::ostringstream os;
      os << "quadrature did not reach relative " << spec.rel_tol << " (last change " << prev.change
         << ", estimate " << prev.value << ")";
      throw AccuracyError(os.str());
    }
    QuadResult cur = integrate_fixed(axes, f, nodes, exec);
    evaluations += cur.evaluations;
    cur.change = std::abs(cur.value - prev.value);
    cur.evaluations = evaluations;
    const double scale = std::max(std::abs(cur.value), cur.abs_integral);
    if (level >= spec.min_levels - 1 && cur.change <= std::max(spec.rel_tol * scale, spec.abs_tol)) return cur;
    if (scale == 0.0) return cur;
    prev = cur;
  }
}

}  // namespace caustica
