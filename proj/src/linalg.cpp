#include "caustica/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "caustica/errors.hpp"

namespace caustica {

double det(const Mat& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

cplx det(const CMat& m) {
  if (m.rows() == 0) return {1.0, 0.0};
  return m.partialPivLu().determinant();
}

int sigma_minus(const Mat& a, double tol) {
  if (a.rows() != a.cols()) throw DomainError("sigma_minus needs a square matrix");
  if (a.rows() == 0) return 0;
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()))
    throw DomainError("sigma_minus needs a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (a + a.transpose()), Eigen::EigenvaluesOnly);
  const Vec& ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  int negatives = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) < tol * scale)
      throw DegenerateSignatureError("eigenvalue " + std::to_string(ev[i]) + " too close to zero");
    if (ev[i] < 0) ++negatives;
  }
  return negatives;
}

CVec eigenvalues(const CMat& m) {
  if (m.rows() == 0) return CVec();
  Eigen::ComplexEigenSolver<CMat> es(m, false);
  return es.eigenvalues();
}

int numerical_rank(const Mat& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const Vec& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > rel_tol * s[0]) ++r;
  return r;
}

double sigma_min(const Mat& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(m);
  return svd.singularValues().minCoeff();
}

namespace {

template <class T>
T cascade(const T* v, std::size_t n) {
  if (n <= 8) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return cascade(v, half) + cascade(v + half, n - half);
}

}  // namespace

cplx pairwise_sum(const cplx* values, std::size_t count) { return cascade(values, count); }
double pairwise_sum(const double* values, std::size_t count) { return cascade(values, count); }

}  // namespace caustica
