#pragma once

#include <cmath>
#include <vector>

#include "caustica/linalg.hpp"

namespace caustica {

/// exp(-1/t) for t > 0, else 0.
inline double flat_exp(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

/// C-infinity step: 0 for s <= 0, 1 for s >= 1.
inline double smooth_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = flat_exp(s), b = flat_exp(1.0 - s);
  return a / (a + b);
}

/// Radial bump: 1 for |d| <= plateau, 0 for |d| >= support.
inline double bump(double d, double plateau, double support) {
  const double r = std::abs(d);
  if (r <= plateau) return 1.0;
  if (r >= support) return 0.0;
  return smooth_step((support - r) / (support - plateau));
}

/// Product of one-dimensional bumps around `center`. Axes with support <= 0
/// are left uncut (factor 1), which is how periodic or compact directions are
/// marked.
struct CutoffSpec {
  Vec center;
  Vec plateau;
  Vec support;

  bool empty() const { return center.size() == 0; }

  double operator()(const Vec& p) const {
    double v = 1.0;
    for (Eigen::Index i = 0; i < center.size(); ++i) {
      if (support[i] <= 0.0) continue;
      v *= bump(p[i] - center[i], plateau[i], support[i]);
      if (v == 0.0) break;
    }
    return v;
  }
};

}  // namespace caustica
