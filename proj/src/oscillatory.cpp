#include "caustica/oscillatory.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "caustica/errors.hpp"
#include "caustica/newton.hpp"

namespace caustica {

namespace {

constexpr double kFdStep = 1e-5;

VecFn scalar_as_vec(const std::function<double(const Vec&)>& g) {
  return [g](const Vec& v) { return Vec::Constant(1, g(v)); };
}

double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Vec PhaseFunction::phi_x(const Vec& x, const Vec& th) const {
  if (grad_x) return grad_x(x, th);
  const auto g = [&](const Vec& y) { return phi(y, th); };
  return fd_jacobian(scalar_as_vec(g), x, kFdStep).transpose();
}

Vec PhaseFunction::phi_th(const Vec& x, const Vec& th) const {
  if (grad_th) return grad_th(x, th);
  const auto g = [&](const Vec& t) { return phi(x, t); };
  return fd_jacobian(scalar_as_vec(g), th, kFdStep).transpose();
}

Mat PhaseFunction::phi_thth(const Vec& x, const Vec& th) const {
  if (hess_thth) return hess_thth(x, th);
  Mat h = fd_jacobian([&](const Vec& t) { return phi_th(x, t); }, th, kFdStep);
  return 0.5 * (h + h.transpose());
}

Mat PhaseFunction::phi_thx(const Vec& x, const Vec& th) const {
  if (hess_thx) return hess_thx(x, th);
  return fd_jacobian([&](const Vec& y) { return phi_th(y, th); }, x, kFdStep);
}

Mat PhaseFunction::phi_xx(const Vec& x, const Vec& th) const {
  if (hess_xx) return hess_xx(x, th);
  Mat h = fd_jacobian([&](const Vec& y) { return phi_x(y, th); }, x, kFdStep);
  return 0.5 * (h + h.transpose());
}

double derivative_mismatch(const PhaseFunction& f, const std::vector<std::pair<Vec, Vec>>& samples) {
  PhaseFunction fd = f;
  fd.grad_x = fd.grad_th = nullptr;
  fd.hess_thth = fd.hess_thx = fd.hess_xx = nullptr;
  double worst = 0.0;
  auto cmp = [&](const Mat& a, const Mat& b) {
    if (a.size() == 0) return;
    worst = std::max(worst, (a - b).cwiseAbs().maxCoeff() / std::max(1.0, max_abs(b)));
  };
  for (const auto& [x, th] : samples) {
    cmp(f.phi_x(x, th), fd.phi_x(x, th));
    cmp(f.phi_th(x, th), fd.phi_th(x, th));
    cmp(f.phi_thth(x, th), fd.phi_thth(x, th));
    cmp(f.phi_thx(x, th), fd.phi_thx(x, th));
    cmp(f.phi_xx(x, th), fd.phi_xx(x, th));
  }
  return worst;
}

PhaseFunction gaussian_phase(double theta_extent) {
  PhaseFunction f;
  f.name = "gaussian";
  f.n = f.m = 1;
  f.phi = [](const Vec& x, const Vec& t) { return x[0] * t[0] - 0.5 * t[0] * t[0]; };
  f.grad_x = [](const Vec&, const Vec& t) { return Vec::Constant(1, t[0]); };
  f.grad_th = [](const Vec& x, const Vec& t) { return Vec::Constant(1, x[0] - t[0]); };
  f.hess_thth = [](const Vec&, const Vec&) { return Mat::Constant(1, 1, -1.0); };
  f.hess_thx = [](const Vec&, const Vec&) { return Mat::Constant(1, 1, 1.0); };
  f.hess_xx = [](const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  f.theta_domain = Box::make({-theta_extent}, {theta_extent});
  return f;
}

PhaseFunction airy_phase(double theta_extent) {
  PhaseFunction f;
  f.name = "airy";
  f.n = f.m = 1;
  f.phi = [](const Vec& x, const Vec& t) { return x[0] * t[0] + t[0] * t[0] * t[0] / 3.0; };
  f.grad_x = [](const Vec&, const Vec& t) { return Vec::Constant(1, t[0]); };
  f.grad_th = [](const Vec& x, const Vec& t) { return Vec::Constant(1, x[0] + t[0] * t[0]); };
  f.hess_thth = [](const Vec&, const Vec& t) { return Mat::Constant(1, 1, 2.0 * t[0]); };
  f.hess_thx = [](const Vec&, const Vec&) { return Mat::Constant(1, 1, 1.0); };
  f.hess_xx = [](const Vec&, const Vec&) { return Mat::Zero(1, 1); };
  f.theta_domain = Box::make({-theta_extent}, {theta_extent});
  return f;
}

cplx brute_quadrature(const PhaseFunction& f, const PhaseAmplitude& a, const Vec& x, double h,
                      const QuadratureSpec& spec, Exec exec, QuadResult* info) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  if (x.size() != f.n) throw ConfigError("point dimension does not match the phase function");
  std::vector<AxisSpec> axes;
  for (int j = 0; j < f.m; ++j)
    axes.push_back({f.theta_domain.lo[j], f.theta_domain.hi[j],
                    f.theta_domain.is_periodic(j) ? Rule::Periodic : Rule::GaussLegendre});
  auto integrand = [&](const Vec& th) -> cplx {
    const cplx amp = a(x, th);
    if (amp == 0.0) return 0.0;
    return std::exp(kI * (f.phi(x, th) / h)) * amp;
  };
  const QuadResult q = integrate(axes, integrand, spec, exec);
  if (info) *info = q;
  return std::exp(kI * (kPi * f.m / 4)) * std::pow(2 * kPi * h, -0.5 * f.m) * q.value;
}

// ---------------------------------------------------------------- 1/h-Fourier

std::size_t SampledFunction::size() const {
  std::size_t s = 1;
  for (int c : count) s *= static_cast<std::size_t>(c);
  return s;
}

SampledFunction SampledFunction::sample(const std::vector<double>& lo, const std::vector<double>& hi,
                                        const std::vector<int>& count, const std::function<cplx(const Vec&)>& f) {
  SampledFunction s;
  s.lo = lo;
  s.count = count;
  for (std::size_t k = 0; k < lo.size(); ++k) {
    if (count[k] < 1) throw ConfigError("grid counts must be at least 1");
    s.step.push_back(count[k] > 1 ? (hi[k] - lo[k]) / (count[k] - 1) : 0.0);
  }
  s.values.resize(s.size());
  Vec p(s.dim());
  std::vector<int> idx(s.dim(), 0);
  for (std::size_t flat = 0; flat < s.values.size(); ++flat) {
    std::size_t r = flat;
    for (int k = s.dim() - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(r % count[k]);
      r /= count[k];
      p[k] = s.coord(k, idx[k]);
    }
    s.values[flat] = f(p);
  }
  return s;
}

namespace {

std::vector<int> unflatten(std::size_t flat, const std::vector<int>& count) {
  std::vector<int> idx(count.size());
  for (int k = static_cast<int>(count.size()) - 1; k >= 0; --k) {
    idx[k] = static_cast<int>(flat % count[k]);
    flat /= count[k];
  }
  return idx;
}

std::size_t flatten(const std::vector<int>& idx, const std::vector<int>& count) {
  std::size_t flat = 0;
  for (std::size_t k = 0; k < count.size(); ++k) flat = flat * count[k] + idx[k];
  return flat;
}

}  // namespace

SampledFunction h_fourier(const SampledFunction& u, const std::vector<int>& axes, const SampledFunction& target,
                          double h, FourierDirection dir, const FourierOptions& opts) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  if (target.dim() != static_cast<int>(axes.size())) throw ConfigError("target grid must list one entry per axis");
  const int n = u.dim();
  std::vector<bool> is_axis(n, false);
  for (int ax : axes) {
    if (ax < 0 || ax >= n || is_axis[ax]) throw ConfigError("invalid Fourier axis list");
    is_axis[ax] = true;
  }

  // window: the samples on the faces of the transformed axes must be negligible
  double peak = 0.0, edge = 0.0;
  for (std::size_t flat = 0; flat < u.values.size(); ++flat) {
    const double v = std::abs(u.values[flat]);
    peak = std::max(peak, v);
    const auto idx = unflatten(flat, u.count);
    for (int ax : axes)
      if (idx[ax] == 0 || idx[ax] == u.count[ax] - 1) edge = std::max(edge, v);
  }
  if (peak > 0.0 && edge > opts.window_tol * peak) {
    std::ostringstream os;
    os << "1/h-Fourier window truncation estimate " << edge / peak << " exceeds " << opts.window_tol;
    throw AccuracyError(os.str());
  }
  // resolution: the kernel phase per step must stay below pi
  for (std::size_t k = 0; k < axes.size(); ++k) {
    const double pmax =
        std::max(std::abs(target.lo[k]), std::abs(target.lo[k] + target.step[k] * (target.count[k] - 1)));
    if (pmax * u.step[axes[k]] / h >= kPi) {
      std::ostringstream os;
      os << "1/h-Fourier grid too coarse on axis " << axes[k] << ": p*dy/h = " << pmax * u.step[axes[k]] / h;
      throw AccuracyError(os.str());
    }
  }

  SampledFunction out;
  out.lo = u.lo;
  out.step = u.step;
  out.count = u.count;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    out.lo[axes[k]] = target.lo[k];
    out.step[axes[k]] = target.step[k];
    out.count[axes[k]] = target.count[k];
  }
  out.values.assign(out.size(), 0.0);

  const double sgn = dir == FourierDirection::Forward ? -1.0 : 1.0;
  const int nb = static_cast<int>(axes.size());
  double cell = 1.0;
  for (int ax : axes) cell *= u.step[ax];
  const cplx pref = std::exp(kI * (sgn * kPi * nb / 4)) * std::pow(2 * kPi * h, -0.5 * nb) * cell;

  std::vector<int> sub_count;
  for (int ax : axes) sub_count.push_back(u.count[ax]);
  std::size_t sub_size = 1;
  for (int c : sub_count) sub_size *= static_cast<std::size_t>(c);

#pragma omp parallel for schedule(static)
  for (long o = 0; o < static_cast<long>(out.values.size()); ++o) {
    const auto oidx = unflatten(static_cast<std::size_t>(o), out.count);
    std::vector<int> iidx = oidx;
    std::vector<cplx> terms(sub_size);
    for (std::size_t s = 0; s < sub_size; ++s) {
      const auto sidx = unflatten(s, sub_count);
      double phase = 0.0;
      for (int k = 0; k < nb; ++k) {
        iidx[axes[k]] = sidx[k];
        phase += out.coord(axes[k], oidx[axes[k]]) * u.coord(axes[k], sidx[k]);
      }
      terms[s] = std::exp(kI * (sgn * phase / h)) * u.values[flatten(iidx, u.count)];
    }
    out.values[o] = pref * pairwise_sum(terms.data(), terms.size());
  }
  return out;
}

// ---------------------------------------------------------------- stationary phase

cplx sqrt_det_branch(const Mat& minus_hessian) {
  if (minus_hessian.size() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (minus_hessian + minus_hessian.transpose()));
  double mag = 1.0;
  int neg = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = es.eigenvalues()[i];
    mag *= std::sqrt(std::abs(l));
    if (l < 0.0) ++neg;
  }
  return mag * std::exp(kI * (-kPi * neg / 2));
}

std::vector<StationaryPoint> stationary_points(const PhaseFunction& f, const Vec& x, const StationaryOptions& opts) {
  const Box& box = f.theta_domain;
  const int m = f.m;
  std::vector<Vec> seeds;
  if (m > 0 && m <= 3) {
    const int k = std::max(1, opts.seeds_per_axis);
    long total = 1;
    for (int j = 0; j < m; ++j) total *= k;
    for (long s = 0; s < total; ++s) {
      Vec p(m);
      long r = s;
      for (int j = 0; j < m; ++j) {
        const int i = static_cast<int>(r % k);
        r /= k;
        p[j] = k == 1 ? 0.5 * (box.lo[j] + box.hi[j]) : box.lo[j] + (box.hi[j] - box.lo[j]) * (i + 0.5) / k;
      }
      seeds.push_back(p);
    }
  } else {
    seeds.push_back(box.center());
  }
  for (const Vec& s : opts.extra_seeds) seeds.push_back(s);

  auto grad = [&](const Vec& t) { return f.phi_th(x, t); };
  auto hess = [&](const Vec& t) { return f.phi_thth(x, t); };
  NewtonOptions no;
  no.max_iter = 200;
  no.max_cond = std::numeric_limits<double>::infinity();
  const double span = (box.hi - box.lo).cwiseAbs().maxCoeff();
  no.max_step = 0.25 * span;
  const auto accept = [&](const Vec& t) { return box.contains(t, 1e-9); };
  const auto dist = [&](const Vec& a, const Vec& b) { return box.distance(a, b); };
  const auto roots = newton_multistart(grad, hess, seeds, no, accept, dist, 1e-5 * std::max(1.0, span));

  std::vector<StationaryPoint> out;
  for (const auto& r : roots) {
    StationaryPoint sp;
    sp.theta = box.wrap(r.x);
    sp.hessian = hess(sp.theta);
    sp.det = det(sp.hessian);
    sp.residual = r.residual;
    double scale = std::pow(std::max(1.0, max_abs(sp.hessian)), m);
    if (std::abs(sp.det) < 1e-4 * scale) {
      // near a fold: Gauss-Newton on the stacked system (Phi_theta, det Phi_thth)
      auto g = [&](const Vec& t) {
        Vec v(m + 1);
        v.head(m) = grad(t);
        v[m] = det(hess(t));
        return v;
      };
      Vec t = sp.theta;
      for (int it = 0; it < 40; ++it) {
        const Vec gv = g(t);
        const Mat J = fd_jacobian(g, t, 1e-7);
        const Vec step = J.colPivHouseholderQr().solve(-gv);
        t += step;
        if (step.norm() < 1e-15 * std::max(1.0, t.norm())) break;
      }
      const Vec gr = grad(t);
      const double res = gr.size() ? gr.cwiseAbs().maxCoeff() : 0.0;
      if (t.allFinite() && res <= 1e-10 && accept(t)) {
        sp.theta = box.wrap(t);
        sp.hessian = hess(sp.theta);
        sp.det = det(sp.hessian);
        sp.residual = res;
        scale = std::pow(std::max(1.0, max_abs(sp.hessian)), m);
      }
    }
    sp.degenerate = std::abs(sp.det) < opts.degeneracy_tol * scale;
    bool dup = false;
    for (const auto& q : out)
      if (box.distance(q.theta, sp.theta) < 1e-5 * std::max(1.0, span)) dup = true;
    if (!dup) out.push_back(std::move(sp));
  }
  return out;
}

cplx stationary_phase_eval(const PhaseFunction& f, const PhaseAmplitude& a, const Vec& x, double h,
                           const StationaryOptions& opts) {
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  const auto pts = stationary_points(f, x, opts);
  cplx sum = 0.0;
  for (const auto& sp : pts) {
    if (sp.degenerate) {
      std::ostringstream os;
      os << "degenerate stationary point theta = (" << sp.theta.transpose() << "), det Phi_thth = " << sp.det
         << "; use the canonical operator instead";
      throw FoldError(os.str());
    }
    sum += std::exp(kI * (f.phi(x, sp.theta) / h)) * a(x, sp.theta) / sqrt_det_branch(-sp.hessian);
  }
  return sum;
}

double fitted_order(const std::vector<double>& hs, const std::vector<double>& values) {
  if (hs.size() != values.size() || hs.size() < 2) throw ConfigError("order fit needs at least two samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double lx = std::log(hs[i]), ly = std::log(values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace caustica
