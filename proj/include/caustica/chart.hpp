#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "caustica/linalg.hpp"

namespace caustica {

/// Parameter box in R^n; periodic axes are identified modulo (hi - lo).
struct Box {
  Vec lo;
  Vec hi;
  std::vector<bool> periodic;

  static Box make(std::vector<double> lo, std::vector<double> hi, std::vector<bool> periodic = {});

  int dim() const { return static_cast<int>(lo.size()); }
  bool is_periodic(int axis) const { return !periodic.empty() && periodic[axis]; }
  bool contains(const Vec& p, double slack = 1e-12) const;
  /// Maps periodic coordinates into [lo, hi).
  Vec wrap(const Vec& p) const;
  /// Distance that treats periodic axes as circles.
  double distance(const Vec& a, const Vec& b) const;
  Vec center() const { return 0.5 * (lo + hi); }
};

using ScalarFn = std::function<double(const Vec&)>;
using VecFn = std::function<Vec(const Vec&)>;
using MatFn = std::function<Mat(const Vec&)>;
/// Second derivatives of a vector map: entry [i](j, k) = d^2 F_i / d a_j d a_k.
using Tensor3 = std::vector<Mat>;
using TensorFn = std::function<Tensor3(const Vec&)>;

/// Everything needed to build a chart. Derivative maps may be left empty; a
/// central finite-difference fallback is attached for them.
struct ChartMaps {
  std::string name;
  int dim = 0;
  Box domain;
  VecFn X;
  VecFn P;
  MatFn dX;  // column j = dX / d alpha_j
  MatFn dP;
  TensorFn d2X;
  TensorFn d2P;
  ScalarFn mu;
  ScalarFn action;  // eikonal; optional
};

/// Parametrized Lagrangian manifold x = X(alpha), p = P(alpha) with measure
/// d mu = mu(alpha) d alpha_1 ^ ... ^ d alpha_n. Immutable after construction.
class LagrangianChart {
 public:
  explicit LagrangianChart(ChartMaps maps);

  const std::string& name() const { return maps_.name; }
  int dim() const { return maps_.dim; }
  const Box& domain() const { return maps_.domain; }

  Vec X(const Vec& a) const { return maps_.X(a); }
  Vec P(const Vec& a) const { return maps_.P(a); }
  Mat dX(const Vec& a) const { return maps_.dX(a); }
  Mat dP(const Vec& a) const { return maps_.dP(a); }
  Tensor3 d2X(const Vec& a) const { return maps_.d2X(a); }
  Tensor3 d2P(const Vec& a) const { return maps_.d2P(a); }
  double mu(const Vec& a) const { return maps_.mu(a); }

  bool has_action() const { return static_cast<bool>(maps_.action); }
  double action(const Vec& a) const;

  bool analytic_dX() const { return analytic_[0]; }
  bool analytic_dP() const { return analytic_[1]; }
  bool analytic_d2X() const { return analytic_[2]; }
  bool analytic_d2P() const { return analytic_[3]; }

  /// Throws DomainError unless `a` lies in the parameter box.
  void require_in_domain(const Vec& a) const;

  const ChartMaps& maps() const { return maps_; }

 private:
  ChartMaps maps_;
  bool analytic_[4] = {false, false, false, false};
};

/// Central finite-difference derivatives with relative step `rel_step`
/// scaled per coordinate by max(1, |a_j|).
Mat fd_jacobian(const VecFn& f, const Vec& a, double rel_step = 1e-5);
Tensor3 fd_tensor(const MatFn& df, const Vec& a, double rel_step = 1e-5);

/// Chart whose first coordinate is an eikonal tau (dtau = P dX) and the rest
/// are psi_1..psi_{n-1}. The eikonal value is alpha_0 + tau_offset.
class EikonalChart {
 public:
  explicit EikonalChart(LagrangianChart base, double tau_offset = 0.0);

  const LagrangianChart& base() const { return base_; }
  int dim() const { return base_.dim(); }
  double tau_offset() const { return tau_offset_; }
  double eikonal(const Vec& a) const { return a[0] + tau_offset_; }

 private:
  LagrangianChart base_;
  double tau_offset_;
};

/// Smooth change of parameters alpha = A(beta). dA has columns d alpha / d beta_j,
/// d2A[i](j, k) = d^2 alpha_i / d beta_j d beta_k.
struct CoordinateMap {
  VecFn A;
  MatFn dA;
  TensorFn d2A;
};

/// Pulls a chart back along a coordinate map; the density picks up det(dA).
LagrangianChart compose(const LagrangianChart& chart, const CoordinateMap& map, const Box& new_domain,
                        const std::string& name);

/// Product with {p_{n+1} = 1, x_{n+1} free}; makes P dX nowhere zero.
LagrangianChart uniformize(const LagrangianChart& chart, double x_extent = 10.0);

}  // namespace caustica
