#include "caustica/maslov.hpp"

#include <cmath>
#include <sstream>

#include "caustica/errors.hpp"

namespace caustica {

namespace {

struct Tracer {
  const std::function<cplx(double)>& f;
  const ArgTraceOptions& opts;
  ArgTrace& out;

  cplx sample(double t) const {
    const cplx v = f(t);
    if (!(std::abs(v) > opts.zero_tol)) {
      std::ostringstream os;
      os << "|J| = " << std::abs(v) << " at t = " << t << "; use eps > 0";
      throw RegularizationNeededError(os.str());
    }
    return v;
  }

  void refine(double ta, cplx fa, double tb, cplx fb) {
    if (std::abs(arg_step(fa, fb)) < opts.max_step) {
      out.samples.emplace_back(tb, fb);
      return;
    }
    const double tm = 0.5 * (ta + tb);
    if (out.samples.size() >= opts.max_samples || tm <= ta || tm >= tb)
      throw NonConvergenceError("argument refinement budget exhausted");
    const cplx fm = sample(tm);
    refine(ta, fa, tm, fm);
    refine(tm, fm, tb, fb);
  }
};

long nearest(double v) { return std::lround(v); }

void require_central_point(const LagrangianChart& chart, const Vec& a0) {
  const cplx j = jacobian_eps(chart, a0, 0.0);
  if (!(j.real() > 1e-12)) throw InvalidEndpointError("central point must have J > 0");
}

IndexResult rounded(double raw, const char* what) {
  IndexResult r;
  r.raw = raw;
  r.value = nearest(raw);
  if (std::abs(raw - static_cast<double>(r.value)) >= 0.1) {
    std::ostringstream os;
    os << what << " raw value " << raw << " is not within 0.1 of an integer";
    throw InconsistencyError(os.str());
  }
  return r;
}

CMat mixed_rows(const LagrangianChart& chart, const Vec& a, const IndexSet& I, cplx x_in_I, cplx p_in_I,
                cplx x_in_Ibar, cplx p_in_Ibar) {
  const Mat dx = chart.dX(a), dp = chart.dP(a);
  const int n = chart.dim();
  CMat m(n, n);
  std::vector<bool> in_I(n, false);
  for (int j : I) in_I[j] = true;
  for (int j = 0; j < n; ++j) {
    const cplx cx = in_I[j] ? x_in_I : x_in_Ibar;
    const cplx cp = in_I[j] ? p_in_I : p_in_Ibar;
    m.row(j) = cx * dx.row(j).cast<cplx>() + cp * dp.row(j).cast<cplx>();
  }
  return m;
}

}  // namespace

ArgTrace trace_argument(const std::function<cplx(double)>& f, double t0, double t1, const ArgTraceOptions& opts) {
  ArgTrace trace;
  Tracer tracer{f, opts, trace};
  const int n = std::max(1, opts.initial_samples);
  double tp = t0;
  cplx fp = tracer.sample(t0);
  trace.samples.emplace_back(tp, fp);
  for (int i = 1; i <= n; ++i) {
    const double t = t0 + (t1 - t0) * static_cast<double>(i) / n;
    const cplx ft = tracer.sample(t);
    tracer.refine(tp, fp, t, ft);
    tp = t;
    fp = ft;
  }
  trace.unwrapped_arg.reserve(trace.samples.size());
  double acc = std::arg(trace.samples.front().second);
  trace.unwrapped_arg.push_back(acc);
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    acc += arg_step(trace.samples[i - 1].second, trace.samples[i].second);
    trace.unwrapped_arg.push_back(acc);
  }
  trace.total_variation = acc - trace.unwrapped_arg.front();
  return trace;
}

double arg_variation(const LagrangianChart& chart, const ManifoldPath& path,
                     const std::function<cplx(const Vec&)>& jfun, const ArgTraceOptions& opts) {
  (void)chart;
  const ArgTrace tr = trace_argument([&](double t) { return jfun(path(t)); }, 0.0, 1.0, opts);
  return tr.total_variation / kPi;
}

IndexResult path_index(const LagrangianChart& chart, const ManifoldPath& path) {
  for (double t : {0.0, 1.0}) {
    const double j = std::abs(jacobian_eps(chart, path(t), 0.0));
    if (!(j > 1e-8)) throw InvalidEndpointError("path endpoint is focal (|J| <= 1e-8)");
  }
  IndexResult r;
  for (double eps : index_eps_schedule()) {
    const double raw = arg_variation(chart, path, [&](const Vec& a) { return jacobian_eps(chart, a, eps); });
    r.eps_sequence.emplace_back(eps, raw);
  }
  const auto& s = r.eps_sequence;
  const auto [e3, r3] = s[s.size() - 2];
  const auto [e4, r4] = s[s.size() - 1];
  const double extrapolated = r4 - e4 * (r3 - r4) / (e3 - e4);
  if (nearest(r3) != nearest(r4)) throw InconsistencyError("index not stable across the two smallest eps");
  IndexResult out = rounded(extrapolated, "path index");
  out.eps_sequence = r.eps_sequence;
  return out;
}

IndexResult cycle_index(const LagrangianChart& chart, const ManifoldPath& cycle) {
  IndexResult r;
  for (double eps : {0.01, 0.1, 1.0}) {
    const double raw = arg_variation(chart, cycle, [&](const Vec& a) { return jacobian_eps(chart, a, eps); });
    r.eps_sequence.emplace_back(eps, raw);
  }
  IndexResult out = rounded(r.eps_sequence.back().second, "cycle index");
  out.eps_sequence = r.eps_sequence;
  return out;
}

IndexResult chart_index_regular(const LagrangianChart& chart, const ManifoldPath& path, const IndexSet& I) {
  const Vec a0 = path.start();
  require_central_point(chart, a0);
  const Vec astar = path.end();
  const int nbar = chart.dim() - static_cast<int>(I.size());
  const double mu = chart.mu(astar);
  const long ind = path_index(chart, path).value;
  const ArgTrace tr = trace_argument(
      [&](double th) {
        return det(mixed_rows(chart, astar, I, 1.0, 0.0, 1.0 - th, -kI * th)) / mu;
      },
      0.0, 1.0);
  return rounded(static_cast<double>(ind) + tr.total_variation / kPi + 0.5 * nbar, "chart index");
}

IndexResult chart_index_scheduled(const LagrangianChart& chart, const ManifoldPath& path, const IndexSet& I,
                                  double eps0) {
  const Vec a0 = path.start();
  require_central_point(chart, a0);
  const int nbar = chart.dim() - static_cast<int>(I.size());
  const ArgTrace tr = trace_argument(
      [&](double t) {
        const double eps = eps0 * std::sin(kPi * t);
        const double theta = std::pow(std::cos(0.5 * kPi * t), 2);
        const double kappa = std::pow(std::sin(0.5 * kPi * t), 2);
        const Vec a = path(t);
        return det(mixed_rows(chart, a, I, 1.0, -kI * eps, theta, -kI * kappa)) / chart.mu(a);
      },
      0.0, 1.0);
  return rounded(tr.total_variation / kPi + 0.5 * nbar, "chart index");
}

IndexResult chart_index(const LagrangianChart& chart, const ManifoldPath& path, const IndexSet& I) {
  const double j = std::abs(jacobian_eps(chart, path.end(), 0.0));
  if (j > 1e-8) return chart_index_regular(chart, path, I);
  return chart_index_scheduled(chart, path, I);
}

double clamped_eigen_arg_sum(const CMat& block) {
  const CVec ev = eigenvalues(block);
  double scale = 1.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) scale = std::max(scale, std::abs(ev[i]));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) < 1e-12 * scale) throw DegenerateChartError("singular index block matrix");
    double a = std::arg(ev[i]);
    if (std::abs(a) > 0.5 * kPi + 1e-9) {
      std::ostringstream os;
      os << "eigenvalue " << ev[i] << " has argument outside [-pi/2, pi/2]";
      throw NumericalBranchError(os.str());
    }
    a = std::clamp(a, -0.5 * kPi, 0.5 * kPi);
    sum += a;
  }
  return sum;
}

IndexResult new_chart_index(const LagrangianChart& chart, const ManifoldPath& path, const CMat& block) {
  const Vec a0 = path.start();
  require_central_point(chart, a0);
  const ArgTrace eps_trace =
      trace_argument([&](double eps) { return jacobian_eps(chart, a0, eps); }, 0.0, 1.0);
  const ArgTrace path_trace = trace_argument([&](double t) { return jacobian_eps(chart, path(t), 1.0); }, 0.0, 1.0);
  const double eig = clamped_eigen_arg_sum(block);
  IndexResult r;
  r.raw = (eps_trace.total_variation + path_trace.total_variation - eig) / kPi;
  r.value = nearest(r.raw);
  r.integral = std::abs(r.raw - static_cast<double>(r.value)) < 0.1;
  r.eps_sequence.emplace_back(1.0, r.raw);
  return r;
}

}  // namespace caustica
