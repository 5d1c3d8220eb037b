#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "caustica/linalg.hpp"

namespace caustica {

struct NewtonOptions {
  int max_iter = 50;
  double tol = 1e-12;          // on the residual max-norm, scaled by residual_scale
  double residual_scale = 1.0;
  double max_cond = 1e12;      // abort when the Jacobian is this ill-conditioned
  double max_step = 0.0;       // 0 = unlimited; otherwise step norm cap
};

struct NewtonResult {
  Vec x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
  bool ill_conditioned = false;
};

using SystemFn = std::function<Vec(const Vec&)>;
using SystemJac = std::function<Mat(const Vec&)>;

/// Damped Newton iteration with backtracking on the residual norm. An empty
/// Jacobian callback selects a central finite-difference Jacobian. After
/// convergence one extra step is taken to polish the root.
NewtonResult newton_solve(const SystemFn& f, const SystemJac& jac, const Vec& x0, const NewtonOptions& opts = {});

/// Runs newton_solve from each seed; returns the converged roots that pass
/// `accept`, deduplicated by `distance` < dedupe_tol, in seed order.
std::vector<NewtonResult> newton_multistart(const SystemFn& f, const SystemJac& jac, const std::vector<Vec>& seeds,
                                            const NewtonOptions& opts,
                                            const std::function<bool(const Vec&)>& accept,
                                            const std::function<double(const Vec&, const Vec&)>& distance,
                                            double dedupe_tol = 1e-6);

/// Condition number (2-norm) of a square matrix; infinity when singular.
double condition_number(const Mat& m);

}  // namespace caustica
