#include "caustica/newton.hpp"

#include <cmath>
#include <limits>

#include "caustica/chart.hpp"

namespace caustica {

double condition_number(const Mat& m) {
  if (m.size() == 0) return 1.0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  const double smin = s[s.size() - 1];
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s[0] / smin;
}

NewtonResult newton_solve(const SystemFn& f, const SystemJac& jac, const Vec& x0, const NewtonOptions& opts) {
  NewtonResult r;
  r.x = x0;
  Vec fx = f(r.x);
  auto norm = [](const Vec& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; };
  r.residual = norm(fx);
  const double target = opts.tol * opts.residual_scale;
  for (r.iterations = 0; r.iterations < opts.max_iter; ++r.iterations) {
    if (!std::isfinite(r.residual)) return r;
    const bool done = r.residual <= target;
    const Mat J = jac ? jac(r.x) : fd_jacobian(f, r.x, 1e-7);
    if (condition_number(J) > opts.max_cond) {
      r.ill_conditioned = true;
      break;
    }
    Vec step = J.partialPivLu().solve(-fx);
    if (opts.max_step > 0.0 && step.norm() > opts.max_step) step *= opts.max_step / step.norm();
    Vec trial = r.x + step;
    Vec ft = f(trial);
    if (done) {
      // one polishing step, kept only if it does not hurt
      if (norm(ft) <= r.residual) {
        r.x = trial;
        r.residual = norm(ft);
      }
      break;
    }
    double t = 1.0;
    while (!(norm(ft) < r.residual) && t > 1e-4) {
      t *= 0.5;
      trial = r.x + t * step;
      ft = f(trial);
    }
    r.x = trial;
    fx = ft;
    r.residual = norm(fx);
  }
  r.converged = r.residual <= target;
  return r;
}

std::vector<NewtonResult> newton_multistart(const SystemFn& f, const SystemJac& jac, const std::vector<Vec>& seeds,
                                            const NewtonOptions& opts,
                                            const std::function<bool(const Vec&)>& accept,
                                            const std::function<double(const Vec&, const Vec&)>& distance,
                                            double dedupe_tol) {
  std::vector<NewtonResult> roots;
  for (const Vec& s : seeds) {
    NewtonResult r = newton_solve(f, jac, s, opts);
    if (!r.converged) continue;
    if (accept && !accept(r.x)) continue;
    bool dup = false;
    for (const auto& q : roots) {
      const double d = distance ? distance(q.x, r.x) : (q.x - r.x).norm();
      if (d < dedupe_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) roots.push_back(std::move(r));
  }
  return roots;
}

}  // namespace caustica
