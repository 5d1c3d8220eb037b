#pragma once

#include <functional>
#include <vector>

#include "caustica/canonical.hpp"
#include "caustica/geometry.hpp"
#include "caustica/oscillatory.hpp"

namespace caustica {

/// Parametrization c -> (x, theta) of the critical set C_Phi together with
/// the density of d mu in the coordinates c.
struct CriticalManifold {
  int n = 0;
  int m = 0;
  Box domain;
  VecFn embed;    // c -> (x, theta), length n + m
  MatFn d_embed;  // optional, (n + m) x n
  ScalarFn mu;
  /// Nearest-point coordinates of (x, theta); used to extend amplitudes off C_Phi.
  std::function<Vec(const Vec& x, const Vec& th)> project;

  Mat tangent(const Vec& c) const;
};

struct CriticalPoint {
  Vec x;
  Vec theta;
  Vec p;  // Phi_x
  double residual = 0.0;
  double sigma_min = 0.0;
};

struct Nondegeneracy {
  bool ok = false;
  double sigma_min = 0.0;
};

/// sigma_min([Phi_thx | Phi_thth]) > 1e-8 at a point of C_Phi.
Nondegeneracy nondegeneracy_check(const PhaseFunction& f, const Vec& x, const Vec& th);

/// All stationary points of Phi(x, .) lifted to (x, Phi_x).
std::vector<CriticalPoint> critical_set(const PhaseFunction& f, const Vec& x, const StationaryOptions& opts = {});

/// Phi restricted to C_Phi.
double action_on_lift(const PhaseFunction& f, const CriticalPoint& cp);

/// Relative mismatch between d tau and p dx along C_Phi by central differences at c.
double action_lift_residual(const PhaseFunction& f, const CriticalManifold& M, const Vec& c);

/// Lambda_Phi as a chart in the coordinates c.
LagrangianChart lifted_chart(const PhaseFunction& f, const CriticalManifold& M, const std::string& name);

/// Two ways of extending d mu off C_Phi: coordinates constant along the
/// normal directions grad Phi_theta, or along a skewed transversal.
enum class Extension { Normal, Skewed };

/// F[Phi, d mu] at c. Throws InconsistentMeasureError when |F| < 1e-12.
double density_factor(const PhaseFunction& f, const CriticalManifold& M, const Vec& c,
                      Extension ext = Extension::Normal);

/// F from both extensions; throws InconsistencyError if they differ by more than tol.
struct DensityCheck {
  double F = 0.0;
  double F_skewed = 0.0;
  double difference = 0.0;
};
DensityCheck density_factor_checked(const PhaseFunction& f, const CriticalManifold& M, const Vec& c,
                                    double tol = 1e-8);

/// The block [[-Phi_thth, -Phi_thx_Ibar], [-Phi_x_Ibar_th, -Phi_x_Ibar_x_Ibar]].
Mat bridge_block(const PhaseFunction& f, const Vec& x, const Vec& th, const IndexSet& I);

/// m = -arg F / pi - sigma_minus(block) + |Ibar|, arg F = pi for F < 0.
long bridge_index(const PhaseFunction& f, const CriticalManifold& M, const Vec& c, const IndexSet& I);

/// Everything needed to compare I[Phi, phi sqrt F] with K phi on one chart.
struct BridgeSetup {
  PhaseFunction phase;
  CriticalManifold manifold;
  StandardChart chart;                    // its tau and m are replaced by the bridge values
  std::function<Vec(const Vec&)> to_c;    // chart parameters -> c
  Vec index_point;                        // c at which bridge_index is evaluated
};

struct EquivalenceRow {
  double h = 0.0;
  cplx lhs{0.0, 0.0};  // brute_quadrature side
  cplx rhs{0.0, 0.0};  // canonical operator side
  double residual = 0.0;
};

struct EquivalenceReport {
  std::vector<EquivalenceRow> rows;
  long index = 0;
  double order = 0.0;  // NaN when some residual is zero
};

/// Residual |lhs - rhs| / max(|lhs|, |rhs|) for each h and its fitted order.
EquivalenceReport equivalence_residual(const BridgeSetup& setup, const std::function<cplx(const Vec&)>& phi,
                                       const Vec& x, const std::vector<double>& hs, const QuadratureSpec& quad = {});

/// Phase function of a standard chart: Phi(x, p_Ibar) = tau + p_Ibar (x_Ibar - X_Ibar),
/// theta ranging over `theta_box`.
PhaseFunction php_phase(const StandardChart& sc, const Box& theta_box);
/// C_Phi of that phase, parametrized by the canonical coordinates (x_I, p_Ibar).
CriticalManifold php_manifold(const StandardChart& sc);
BridgeSetup php_setup(const StandardChart& sc, const Vec& index_point);

/// Airy phase against the x-chart of the theta > 0 sheet, d mu = d theta.
BridgeSetup airy_xchart_setup();
CriticalManifold airy_critical_manifold(double extent = 4.0);

}  // namespace caustica
