#include "caustica/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "caustica/errors.hpp"

namespace caustica {

IndexSet complement(const IndexSet& set, int n) {
  IndexSet out;
  for (int j = 0; j < n; ++j)
    if (std::find(set.begin(), set.end(), j) == set.end()) out.push_back(j);
  return out;
}

double lagrangian_defect(const LagrangianChart& chart, const Vec& alpha) {
  chart.require_in_domain(alpha);
  const Mat s = chart.dP(alpha).transpose() * chart.dX(alpha);
  return (0.5 * (s - s.transpose())).cwiseAbs().maxCoeff();
}

double eikonal_defect(const EikonalChart& chart, const Vec& alpha) {
  const LagrangianChart& c = chart.base();
  c.require_in_domain(alpha);
  const Vec form = c.dX(alpha).transpose() * c.P(alpha);
  double worst = std::abs(form[0] - 1.0);
  for (Eigen::Index j = 1; j < form.size(); ++j) worst = std::max(worst, std::abs(form[j]));
  return std::max(worst, lagrangian_defect(c, alpha));
}

Vec pdx_form(const LagrangianChart& chart, const Vec& alpha) {
  chart.require_in_domain(alpha);
  return chart.dX(alpha).transpose() * chart.P(alpha);
}

cplx jacobian_eps(const LagrangianChart& chart, const Vec& alpha, double eps) {
  chart.require_in_domain(alpha);
  const double mu = chart.mu(alpha);
  if (mu == 0.0 || !std::isfinite(mu)) throw InvalidMeasureError("density vanishes at the point");
  const CMat m = chart.dX(alpha).cast<cplx>() - kI * eps * chart.dP(alpha).cast<cplx>();
  return det(m) / mu;
}

double jacobian_canonical(const LagrangianChart& chart, const Vec& alpha, const IndexSet& I) {
  chart.require_in_domain(alpha);
  const Mat dx = chart.dX(alpha), dp = chart.dP(alpha);
  Mat rows = dp;
  for (int j : I) rows.row(j) = dx.row(j);
  const double mu = chart.mu(alpha);
  if (mu == 0.0) throw InvalidMeasureError("density vanishes at the point");
  return det(rows) / mu;
}

Mat gram(const EikonalChart& chart, const Vec& alpha, const std::vector<int>& cols) {
  const LagrangianChart& c = chart.base();
  c.require_in_domain(alpha);
  if (cols.empty()) return Mat(0, 0);
  const Mat dx = c.dX(alpha);
  Mat sel(dx.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) sel.col(j) = dx.col(cols[j] + 1);
  return sel.transpose() * sel;
}

double jacobian_eikonal_abs(const EikonalChart& chart, const Vec& alpha) {
  const LagrangianChart& c = chart.base();
  std::vector<int> all(c.dim() - 1);
  for (int j = 0; j + 1 < c.dim(); ++j) all[j] = j;
  const double g = det(gram(chart, alpha, all));
  const double pnorm = c.P(alpha).norm();
  if (pnorm == 0.0) throw ConditionViolatedError("|P| = 0, no eikonal coordinates here");
  const double mu = c.mu(alpha);
  if (mu == 0.0) throw InvalidMeasureError("density vanishes at the point");
  return std::sqrt(std::max(0.0, g)) / (std::abs(mu) * pnorm);
}

}  // namespace caustica
