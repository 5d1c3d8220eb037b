#pragma once

#include <functional>
#include <vector>

#include "caustica/linalg.hpp"

namespace caustica {

enum class Exec { Serial, Parallel };

/// Rule for one integration axis: trapezoid on a full period or composite
/// Gauss-Legendre panels.
enum class Rule { Periodic, GaussLegendre };

struct AxisSpec {
  double lo = 0.0;
  double hi = 1.0;
  Rule rule = Rule::GaussLegendre;
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;       // change below this also counts as converged
  int initial_nodes = 16;     // per axis, first level
  int max_nodes = 1 << 14;    // per axis
  long max_total_nodes = 1L << 24;
  int min_levels = 2;
};

struct QuadResult {
  cplx value{0.0, 0.0};
  double abs_integral = 0.0;  // integral of |f|, the scale used by the stopping test
  double change = 0.0;        // |last - previous| of the final refinement
  int nodes_per_axis = 0;
  long evaluations = 0;
};

/// Nodes and weights of the Gauss-Legendre rule of order 16 on [-1, 1].
const std::vector<double>& gl16_nodes();
const std::vector<double>& gl16_weights();

/// Fixed tensor-product rule with `nodes` points per axis (a multiple of 16
/// for Gauss-Legendre axes). Nodes are visited in row-major order and the
/// weighted values summed pairwise, so both execution modes give identical bits.
QuadResult integrate_fixed(const std::vector<AxisSpec>& axes, const std::function<cplx(const Vec&)>& f,
                           int nodes, Exec exec = Exec::Parallel);

/// Doubles the node count on every axis until the change drops below
/// max(rel_tol * max(|I|, integral |f|), abs_tol). Throws AccuracyError when max_nodes is
/// reached first. An empty axis list evaluates f once at the empty point.
QuadResult integrate(const std::vector<AxisSpec>& axes, const std::function<cplx(const Vec&)>& f,
                     const QuadratureSpec& spec = {}, Exec exec = Exec::Parallel);

}  // namespace caustica
