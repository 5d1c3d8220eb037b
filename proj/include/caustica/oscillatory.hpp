#pragma once

#include <functional>
#include <string>
#include <vector>

#include "caustica/chart.hpp"
#include "caustica/linalg.hpp"
#include "caustica/quadrature.hpp"

namespace caustica {

/// Phase Phi(x, theta) with x in R^n and theta in R^m. Derivative callbacks
/// are optional; empty ones fall back to central differences.
struct PhaseFunction {
  std::string name;
  int n = 0;
  int m = 0;
  std::function<double(const Vec& x, const Vec& th)> phi;
  std::function<Vec(const Vec& x, const Vec& th)> grad_x;
  std::function<Vec(const Vec& x, const Vec& th)> grad_th;
  std::function<Mat(const Vec& x, const Vec& th)> hess_thth;  // m x m
  std::function<Mat(const Vec& x, const Vec& th)> hess_thx;   // m x n
  std::function<Mat(const Vec& x, const Vec& th)> hess_xx;    // n x n
  Box theta_domain;  // integration box V for theta

  double value(const Vec& x, const Vec& th) const { return phi(x, th); }
  Vec phi_x(const Vec& x, const Vec& th) const;
  Vec phi_th(const Vec& x, const Vec& th) const;
  Mat phi_thth(const Vec& x, const Vec& th) const;
  Mat phi_thx(const Vec& x, const Vec& th) const;
  Mat phi_xx(const Vec& x, const Vec& th) const;
};

/// Largest relative mismatch between supplied derivatives and finite
/// differences over the sample points (x, theta).
double derivative_mismatch(const PhaseFunction& f, const std::vector<std::pair<Vec, Vec>>& samples);

/// Phi = x theta - theta^2 / 2 (n = m = 1).
PhaseFunction gaussian_phase(double theta_extent = 14.0);
/// Phi = x theta + theta^3 / 3 (n = m = 1).
PhaseFunction airy_phase(double theta_extent = 4.0);

using PhaseAmplitude = std::function<cplx(const Vec& x, const Vec& th)>;

/// e^{i pi m/4} (2 pi h)^{-m/2} times the integral of e^{i Phi/h} a over the
/// theta box.
cplx brute_quadrature(const PhaseFunction& f, const PhaseAmplitude& a, const Vec& x, double h,
                      const QuadratureSpec& spec = {}, Exec exec = Exec::Parallel, QuadResult* info = nullptr);

/// Samples on a uniform tensor grid, row-major (last axis fastest).
struct SampledFunction {
  std::vector<double> lo;
  std::vector<double> step;
  std::vector<int> count;
  std::vector<cplx> values;

  int dim() const { return static_cast<int>(count.size()); }
  std::size_t size() const;
  double coord(int axis, int i) const { return lo[axis] + step[axis] * i; }
  static SampledFunction sample(const std::vector<double>& lo, const std::vector<double>& hi,
                                const std::vector<int>& count, const std::function<cplx(const Vec&)>& f);
};

enum class FourierDirection { Forward, Inverse };

struct FourierOptions {
  double window_tol = 1e-10;  // allowed boundary magnitude relative to the peak
};

/// 1/h-Fourier transform over the axes in `axes` (the Ibar variables). The
/// output grid replaces those axes by `target` (lo, step, count per listed
/// axis); the remaining axes are carried through. Forward uses
/// e^{-i pi k/4}(2 pi h)^{-k/2} and e^{-i p y/h}; Inverse the conjugate signs.
SampledFunction h_fourier(const SampledFunction& u, const std::vector<int>& axes, const SampledFunction& target,
                          double h, FourierDirection dir, const FourierOptions& opts = {});

struct StationaryPoint {
  Vec theta;
  Mat hessian;  // Phi_theta_theta
  double det = 0.0;
  double residual = 0.0;
  bool degenerate = false;
};

struct StationaryOptions {
  int seeds_per_axis = 9;
  std::vector<Vec> extra_seeds;
  double degeneracy_tol = 1e-10;
};

/// Roots of Phi_theta(x, .) in the theta box, deduplicated.
std::vector<StationaryPoint> stationary_points(const PhaseFunction& f, const Vec& x,
                                               const StationaryOptions& opts = {});

/// sqrt(det(-Phi_thth)) with arg det = -pi sigma_minus(-Phi_thth).
cplx sqrt_det_branch(const Mat& minus_hessian);

/// Leading stationary-phase term summed over stationary points; throws
/// FoldError if any of them is degenerate.
cplx stationary_phase_eval(const PhaseFunction& f, const PhaseAmplitude& a, const Vec& x, double h,
                           const StationaryOptions& opts = {});

/// Least-squares slope of log(values) against log(hs).
double fitted_order(const std::vector<double>& hs, const std::vector<double>& values);

}  // namespace caustica
