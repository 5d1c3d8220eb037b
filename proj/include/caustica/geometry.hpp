#pragma once

#include <vector>

#include "caustica/chart.hpp"

namespace caustica {

/// Subset I of {0, ..., n-1}: the positions whose x-coordinate is kept in a
/// canonical chart (x_I, p_Ibar).
using IndexSet = std::vector<int>;

IndexSet complement(const IndexSet& set, int n);

/// Max-norm of the antisymmetric part of dP^T dX.
double lagrangian_defect(const LagrangianChart& chart, const Vec& alpha);

/// Largest residual of <P, X_tau> = 1, <P, X_psi_j> = 0 and the symmetry
/// relations <P_a, X_b> = <P_b, X_a>.
double eikonal_defect(const EikonalChart& chart, const Vec& alpha);

/// Components <P, X_{alpha_j}> of the form P dX.
Vec pdx_form(const LagrangianChart& chart, const Vec& alpha);

/// det d(X - i eps P)/d alpha divided by mu.
cplx jacobian_eps(const LagrangianChart& chart, const Vec& alpha, double eps);

/// det d(X_I, P_Ibar)/d alpha divided by mu, rows in ascending index order.
double jacobian_canonical(const LagrangianChart& chart, const Vec& alpha, const IndexSet& I);

/// |J| computed as sqrt(det Gram(X_psi)) / (|mu| |P|).
double jacobian_eikonal_abs(const EikonalChart& chart, const Vec& alpha);

/// Gram matrix X_cols^T X_cols; `cols` index the psi coordinates (0-based,
/// psi_j is chart coordinate j + 1).
Mat gram(const EikonalChart& chart, const Vec& alpha, const std::vector<int>& cols);

}  // namespace caustica
