#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "caustica/chart.hpp"
#include "caustica/geometry.hpp"
#include "caustica/path.hpp"

namespace caustica {

/// Continuous branch of arg f(t) along sampled parameter values.
struct ArgTrace {
  std::vector<std::pair<double, cplx>> samples;
  std::vector<double> unwrapped_arg;
  double total_variation = 0.0;
};

struct ArgTraceOptions {
  int initial_samples = 64;
  double max_step = kPi / 4;          // per-sample |delta arg| bound after refinement
  std::size_t max_samples = 1u << 16;
  double zero_tol = 1e-12;
};

/// Samples f on [t0, t1], bisecting until consecutive argument jumps are
/// below opts.max_step. Throws RegularizationNeededError when |f| drops below
/// opts.zero_tol and NonConvergenceError when the sample budget runs out.
ArgTrace trace_argument(const std::function<cplx(double)>& f, double t0, double t1,
                        const ArgTraceOptions& opts = {});

struct IndexResult {
  long value = 0;
  double raw = 0.0;
  bool integral = true;  // false when raw is not within 0.1 of an integer
  std::vector<std::pair<double, double>> eps_sequence;
};

/// (1/pi) * variation of arg jfun(gamma(t)) along the path.
double arg_variation(const LagrangianChart& chart, const ManifoldPath& path,
                     const std::function<cplx(const Vec&)>& jfun, const ArgTraceOptions& opts = {});

/// Epsilon schedule used for path indices.
inline const std::vector<double>& index_eps_schedule() {
  static const std::vector<double> s{0.3, 0.1, 0.03, 0.01};
  return s;
}

/// Maslov index of a path with regular endpoints: limit eps -> +0 of the
/// argument variation of J^eps, extrapolated linearly from the two smallest
/// eps and rounded (tolerance 0.1).
IndexResult path_index(const LagrangianChart& chart, const ManifoldPath& path);

/// Index of a closed path. The variation is eps-independent; the spread across
/// eps in {0.01, 0.1, 1} is returned in eps_sequence.
IndexResult cycle_index(const LagrangianChart& chart, const ManifoldPath& cycle);

/// Index m_(U,I) of a canonical chart reached by `path` from the central point
/// path(0) (which must satisfy J > 0). Uses the theta-homotopy formula when the
/// endpoint is regular and the scheduled formula otherwise.
IndexResult chart_index(const LagrangianChart& chart, const ManifoldPath& path, const IndexSet& I);
IndexResult chart_index_regular(const LagrangianChart& chart, const ManifoldPath& path, const IndexSet& I);
IndexResult chart_index_scheduled(const LagrangianChart& chart, const ManifoldPath& path, const IndexSet& I,
                                  double eps0 = 1.0);

/// Index m_U of a new singular chart. `block` is the (2n-k-1)-square matrix
/// [[E - i tau_xx, -i tau_x psi''], [-i tau_psi'' x, -i tau_psi'' psi'']] at
/// the chart center; `path` runs from the central point to the center.
IndexResult new_chart_index(const LagrangianChart& chart, const ManifoldPath& path, const CMat& block);

/// Sum of principal arguments of the eigenvalues of `block`, each required to
/// lie in [-pi/2, pi/2] (up to 1e-9).
double clamped_eigen_arg_sum(const CMat& block);

}  // namespace caustica
