#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "caustica/chart.hpp"
#include "caustica/cutoff.hpp"
#include "caustica/geometry.hpp"
#include "caustica/maslov.hpp"
#include "caustica/newton.hpp"
#include "caustica/path.hpp"
#include "caustica/quadrature.hpp"

namespace caustica {

/// Amplitude on the manifold, as a function of the chart parameters.
using Amplitude = std::function<cplx(const Vec&)>;

/// Solver for the chart system: given (x, psi'') returns (tau, psi') or
/// nothing when (x, psi'') is outside its range.
using Me1Solver = std::function<std::optional<Vec>(const Vec& x, const Vec& psi2)>;

struct PsiSplit {
  int k = 0;
  std::vector<int> psi_prime;   // psi indices (0-based; chart coordinate j + 1)
  std::vector<int> psi_second;
};

/// Rank of X_psi at `center` (singular values above 1e-8 * max) and a
/// column-pivoted choice of k independent columns.
PsiSplit split_psi(const EikonalChart& eik, const Vec& center);

struct NewChartOptions {
  std::vector<AxisSpec> psi2_axes;  // integration domain for psi''
  CutoffSpec cutoff;                // empty = chi identically 1
  Me1Solver closed_form;            // optional exact solution of the chart system
  std::function<Vec(const Vec&, const Vec&)> seed;  // optional Newton guess for (tau, psi')
  std::optional<double> index_override;  // skip the index computation
  double index_shift = 0.0;         // added to the computed index (example normalization)
  double w_half_width = 0.5;        // half-width of the W box around (x*, psi''*)
};

/// New singular chart around a focal point: eikonal coordinates, the split
/// psi = (psi', psi''), the implicit functions tau(x, psi''), psi'(x, psi'')
/// and the chart index m_U. Immutable once built.
class NewSingularChart {
 public:
  /// Builds the chart around `center` (eikonal coordinates). `path` runs in
  /// the same coordinates from the central point to `center` and fixes m_U.
  NewSingularChart(EikonalChart eik, Vec center, ManifoldPath path, NewChartOptions opts);

  const EikonalChart& eik() const { return eik_; }
  const LagrangianChart& chart() const { return eik_.base(); }
  const Vec& center() const { return center_; }
  const PsiSplit& split() const { return split_; }
  int k() const { return split_.k; }
  int n() const { return eik_.dim(); }
  const ManifoldPath& path() const { return path_; }
  const NewChartOptions& options() const { return opts_; }
  const IndexResult& index() const { return index_; }
  /// Index actually used in the phase factor (raw index plus the shift).
  double m_U() const { return m_u_; }
  const Vec& x_star() const { return x_star_; }
  Vec psi2_star() const { return psi2_of(center_); }

  /// Full eikonal coordinates from u = (tau, psi') and psi''.
  Vec assemble(const Vec& u, const Vec& psi2) const;
  Vec psi2_of(const Vec& alpha) const;
  Vec u_of(const Vec& alpha) const;

  /// Residual of the chart system at u for the given (x, psi'').
  Vec me1_residual(const Vec& x, const Vec& psi2, const Vec& u) const;
  Mat me1_jacobian(const Vec& x, const Vec& psi2, const Vec& u) const;

  /// Solves the chart system; uses the closed form when present, else Newton from `guess`
  /// (or the seed / center) with up to 8 starts.
  Vec solve(const Vec& x, const Vec& psi2, const std::optional<Vec>& guess = std::nullopt) const;

  /// First derivatives (tau_x, tau_psi'') by the implicit function theorem.
  Vec tau_gradient(const Vec& x, const Vec& psi2, const Vec& u) const;
  /// Hessian of tau in z = (x, psi'') by central differences of tau_gradient.
  Mat tau_hessian(const Vec& x, const Vec& psi2) const;
  /// The (2n-k-1)-square matrix entering m_U.
  CMat index_block() const;

 private:
  EikonalChart eik_;
  Vec center_;
  ManifoldPath path_;
  NewChartOptions opts_;
  PsiSplit split_;
  Vec x_star_;
  IndexResult index_;
  double m_u_ = 0.0;
};

/// Standalone form of NewSingularChart::solve.
Vec solve_me1(const NewSingularChart& chart, const Vec& x, const Vec& psi2, const Vec& guess);

struct MMatrix {
  Mat M;
  double det = 0.0;
};

/// M = [P | X_psi' | P_psi'' - P_psi' (X_psi'^T X_psi')^{-1} X_psi'^T X_psi''] at
/// the eikonal point alpha. Throws DegenerateMError when |det M| < 1e-12 * scale.
MMatrix m_matrix(const NewSingularChart& chart, const Vec& alpha);

struct EvalStats {
  long evaluations = 0;
  int nodes_per_axis = 0;
  double change = 0.0;
};

/// The new-chart canonical operator at x.
cplx evaluate_new(const NewSingularChart& chart, const Amplitude& a, const Vec& x, double h,
                  const QuadratureSpec& quad = {}, Exec exec = Exec::Parallel, EvalStats* stats = nullptr);

/// Regular preimage of x under the chart projection.
struct Branch {
  Vec alpha;
  double jacobian = 0.0;
  double index = 0.0;
};

struct NonsingularOptions {
  std::vector<Vec> seeds;                        // Newton seeds in chart parameters
  std::function<double(const Vec&)> branch_index;  // index of the chart containing alpha
  double caustic_guard = 1e-6;
};

/// Regular preimages X(alpha) = x found by multi-start Newton.
std::vector<Branch> preimages(const EikonalChart& eik, const Vec& x, const NonsingularOptions& opts);

/// Sum over preimages of e^{i tau/h - i pi m/2} a sqrt(|mu||P|) / det(Gram)^{1/4}.
cplx evaluate_nonsingular(const EikonalChart& eik, const Amplitude& a, const Vec& x, double h,
                          const NonsingularOptions& opts);

/// A standard canonical chart (x_I, p_Ibar) with its eikonal and index.
struct StandardChart {
  LagrangianChart chart;
  IndexSet I;
  std::function<double(const Vec&)> tau;  // eikonal tau_(U,I) on chart parameters
  double m = 0.0;
  /// alpha(y) with y_j = x_j (j in I) or p_j (j in Ibar); optional closed form.
  std::function<std::optional<Vec>(const Vec&)> inverse;
  Vec seed;                 // Newton seed when no closed form is given
  Vec momentum_center;      // center of the amplitude's p_Ibar support
  double momentum_radius = 1.0;  // radius of that support; truncation runs to 1.2x
};

/// Coordinates (x_I, p_Ibar) of a chart point.
Vec canonical_coordinates(const StandardChart& sc, const Vec& alpha);
/// alpha(y), closed form or Newton; throws CoordinateChartError on failure.
Vec standard_inverse(const StandardChart& sc, const Vec& y);

/// Standard-chart operator by direct quadrature of the inverse 1/h-Fourier transform over p_Ibar.
cplx evaluate_standard(const StandardChart& sc, const Amplitude& a, const Vec& x, double h,
                       const QuadratureSpec& quad = {}, Exec exec = Exec::Parallel, EvalStats* stats = nullptr);

/// Charts glued by weights e_j(alpha) summing to one on the amplitude support.
struct PartitionOfUnity {
  struct Piece {
    std::string name;
    std::function<double(const Vec&)> weight;
    std::function<cplx(const Amplitude&, const Vec&, double)> evaluate;
  };
  std::vector<Piece> pieces;
};

/// Sum of the per-chart operators applied to e_j a. `support_samples` are
/// chart points where the weights are checked to sum to one (1e-12).
cplx evaluate_global(const PartitionOfUnity& pou, const Amplitude& a, const Vec& x, double h,
                     const std::vector<Vec>& support_samples);

struct QuantizationResidual {
  double action = 0.0;  // closed integral of P dX
  long index = 0;
  double residual = 0.0;  // (2/(pi h)) action - index, reduced to (-2, 2]
  bool pass = false;
};

/// Integral of P dX along a path (Gauss-Legendre in t, derivative of gamma by differences).
double path_action(const LagrangianChart& chart, const ManifoldPath& path);

/// Bohr-Sommerfeld residuals for each cycle.
std::vector<QuantizationResidual> check_quantization(const LagrangianChart& chart,
                                                     const std::vector<ManifoldPath>& cycles, double h,
                                                     double tol = 1e-6);

}  // namespace caustica
