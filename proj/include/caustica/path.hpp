#pragma once

#include <functional>

#include "caustica/linalg.hpp"

namespace caustica {

/// Piecewise-smooth path t in [0, 1] -> parameter space.
struct ManifoldPath {
  std::function<Vec(double)> gamma;

  Vec operator()(double t) const { return gamma(t); }
  Vec start() const { return gamma(0.0); }
  Vec end() const { return gamma(1.0); }

  static ManifoldPath straight(const Vec& from, const Vec& to);
  static ManifoldPath constant(const Vec& at);
  /// Runs `first` on [0, 1/2] and `second` on [1/2, 1].
  static ManifoldPath concat(const ManifoldPath& first, const ManifoldPath& second);
  ManifoldPath reversed() const;
  /// gamma(s(t)) for a monotone s with s(0) = 0 and s(1) = 1.
  ManifoldPath reparametrized(std::function<double(double)> s) const;
};

}  // namespace caustica
