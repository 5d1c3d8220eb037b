#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace caustica {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

/// Determinant by LU with partial pivoting. The empty matrix has determinant 1.
double det(const Mat& m);
cplx det(const CMat& m);

/// Number of negative eigenvalues of a symmetric matrix.
/// Throws DegenerateSignatureError if an eigenvalue is within `tol` of zero
/// (relative to the largest eigenvalue magnitude, floored at 1), and
/// DomainError if the matrix is not symmetric to 1e-10.
int sigma_minus(const Mat& a, double tol = 1e-10);

/// Eigenvalues of a general complex matrix.
CVec eigenvalues(const CMat& m);

/// Numerical rank from singular values above rel_tol * sigma_max.
int numerical_rank(const Mat& m, double rel_tol = 1e-8);

/// Smallest singular value (0 for an empty matrix).
double sigma_min(const Mat& m);

/// Pairwise (cascade) summation; the result depends only on the input order.
cplx pairwise_sum(const cplx* values, std::size_t count);
double pairwise_sum(const double* values, std::size_t count);

inline cplx pairwise_sum(const std::vector<cplx>& v) { return pairwise_sum(v.data(), v.size()); }
inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

/// Principal value of arg(b / a) in (-pi, pi].
inline double arg_step(cplx a, cplx b) { return std::arg(b / a); }

}  // namespace caustica
