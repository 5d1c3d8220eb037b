#include <boost/math/special_functions/airy.hpp>
#include <random>

#include "caustica/cutoff.hpp"
#include "caustica/errors.hpp"
#include "caustica/oscillatory.hpp"
#include "doctest.h"

using namespace caustica;

namespace {

// e^{i pi/4} (2 pi h)^{-1/2} times the integral of e^{i(x t + t^3/3)/h} over R.
cplx airy_integral(double x, double h) {
  return std::exp(kI * (kPi / 4)) / std::sqrt(2 * kPi * h) * (2 * kPi * std::cbrt(h)) *
         boost::math::airy_ai(x / std::pow(h, 2.0 / 3.0));
}

}  // namespace

TEST_CASE("phase derivatives match finite differences") {
  std::vector<std::pair<Vec, Vec>> s;
  for (double x : {-1.0, 0.3})
    for (double t : {-0.7, 0.0, 1.4}) s.push_back({Vec::Constant(1, x), Vec::Constant(1, t)});
  CHECK(derivative_mismatch(gaussian_phase(), s) <= 1e-6);
  CHECK(derivative_mismatch(airy_phase(), s) <= 1e-6);
}

TEST_CASE("brute quadrature: damped Gaussian integral in closed form") {
  const PhaseFunction f = gaussian_phase();
  const double s = 2.0;
  QuadratureSpec q;
  q.rel_tol = 1e-12;
  for (double h : {0.3, 0.05}) {
    for (double x : {-0.5, 0.0, 1.2}) {
      const cplx got = brute_quadrature(f, [s](const Vec&, const Vec& t) { return cplx(std::exp(-t[0] * t[0] / (2 * s * s))); },
                                        Vec::Constant(1, x), h, q);
      const cplx A = kI / h + 1.0 / (s * s);
      const cplx expect = std::exp(kI * (kPi / 4)) / std::sqrt(2 * kPi * h) * std::sqrt(2 * kPi / A) *
                          std::exp(-x * x / (2.0 * h * h * A));
      CHECK(std::abs(got - expect) <= 1e-10);
    }
  }
}

TEST_CASE("stationary phase is exact for the Gaussian phase") {
  const PhaseFunction f = gaussian_phase();
  for (double h : {0.2, 0.01})
    for (double x : {-1.0, 0.4}) {
      const cplx sp = stationary_phase_eval(f, [](const Vec&, const Vec&) { return cplx(1.0); }, Vec::Constant(1, x), h);
      CHECK(std::abs(sp - std::exp(kI * (x * x / (2 * h)))) <= 1e-12);
    }
}

TEST_CASE("Airy: quadrature against Ai and stationary phase at rate h") {
  // a long cutoff transition keeps its non-stationary contribution far below the checks
  const PhaseFunction f = airy_phase(8.0);
  const PhaseAmplitude cut = [](const Vec&, const Vec& t) { return cplx(bump(t[0], 2.0, 7.5)); };
  QuadratureSpec q;
  q.rel_tol = 1e-11;
  for (double h : {0.1, 0.05}) {
    for (double x : {-1.2, -1.0, -0.8}) {
      const cplx brute = brute_quadrature(f, cut, Vec::Constant(1, x), h, q);
      CHECK(std::abs(brute - airy_integral(x, h)) <= 1e-8);
    }
  }
  double prev = 0.0;
  for (double h : {0.04, 0.02, 0.01}) {
    double sup = 0.0;
    for (int i = 0; i <= 20; ++i) {
      const double x = -1.25 + 0.5 * i / 20.0;
      const cplx sp = stationary_phase_eval(f, cut, Vec::Constant(1, x), h);
      sup = std::max(sup, std::abs(sp - airy_integral(x, h)));
    }
    CHECK(sup <= 0.5 * h);
    if (prev > 0.0) CHECK(sup < 0.75 * prev);
    prev = sup;
  }
  CHECK_THROWS_AS(stationary_phase_eval(f, cut, Vec::Constant(1, 0.0), 0.1), FoldError);
}

TEST_CASE("stationary points of the Airy phase") {
  const auto pts = stationary_points(airy_phase(), Vec::Constant(1, -2.25));
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    CHECK(std::abs(std::abs(p.theta[0]) - 1.5) <= 1e-12);
    CHECK(p.hessian(0, 0) == doctest::Approx(2 * p.theta[0]));
    CHECK_FALSE(p.degenerate);
  }
  CHECK(stationary_points(airy_phase(), Vec::Constant(1, 1.0)).empty());
}

TEST_CASE("branch of sqrt det(-Phi_thth)") {
  const Mat m = Vec{{2.0, -3.0}}.asDiagonal();
  CHECK(std::abs(sqrt_det_branch(m) - cplx(0.0, -std::sqrt(6.0))) <= 1e-14);
  CHECK(std::abs(sqrt_det_branch(Mat(Vec{{-1.0, -4.0}}.asDiagonal())) + 2.0) <= 1e-14);
  CHECK(std::abs(sqrt_det_branch(Mat(Vec{{0.25}}.asDiagonal())) - 0.5) <= 1e-15);
  // rotation invariance: the branch depends only on the eigenvalues
  const double c = std::cos(0.4), s = std::sin(0.4);
  const Mat r{{c, -s}, {s, c}};
  CHECK(std::abs(sqrt_det_branch(r * m * r.transpose()) - sqrt_det_branch(m)) <= 1e-13);
}

TEST_CASE("1/h-Fourier transform of a Gaussian and the round trip") {
  const double h = 0.5;
  const SampledFunction u = SampledFunction::sample({-9.0}, {9.0}, {181}, [](const Vec& y) {
    return cplx(std::exp(-y[0] * y[0] / 2));
  });
  const SampledFunction tgt = SampledFunction::sample({-3.0}, {3.0}, {61}, [](const Vec&) { return cplx(0.0); });
  const SampledFunction F = h_fourier(u, {0}, tgt, h, FourierDirection::Forward);
  for (int i = 0; i < 61; ++i) {
    const double p = F.coord(0, i);
    const cplx expect = std::exp(-kI * (kPi / 4)) / std::sqrt(h) * std::exp(-p * p / (2 * h * h));
    CHECK(std::abs(F.values[i] - expect) <= 1e-12);
  }
  // the transform lives on |p| <= 3 where it has decayed to e^{-18}; invert back
  const SampledFunction G = h_fourier(F, {0}, SampledFunction::sample({-2.0}, {2.0}, {21}, [](const Vec&) { return cplx(0.0); }),
                                      h, FourierDirection::Inverse, FourierOptions{1e-7});
  for (int i = 0; i < 21; ++i) {
    const double y = G.coord(0, i);
    CHECK(std::abs(G.values[i] - std::exp(-y * y / 2)) <= 1e-6);
  }
  // truncated window and under-resolved kernel are reported
  const SampledFunction flat = SampledFunction::sample({-1.0}, {1.0}, {21}, [](const Vec&) { return cplx(1.0); });
  CHECK_THROWS_AS(h_fourier(flat, {0}, tgt, h, FourierDirection::Forward), AccuracyError);
  const SampledFunction wide = SampledFunction::sample({-60.0}, {60.0}, {11}, [](const Vec&) { return cplx(0.0); });
  CHECK_THROWS_AS(h_fourier(u, {0}, wide, h, FourierDirection::Forward), AccuracyError);
}

TEST_CASE("partial transform carries the other axes through") {
  const double h = 1.0;
  const SampledFunction u = SampledFunction::sample({-1.0, -10.0}, {1.0, 10.0}, {3, 201}, [](const Vec& v) {
    return cplx(v[0] + 2.0, 0.0) * std::exp(-v[1] * v[1] / 2);
  });
  const SampledFunction tgt = SampledFunction::sample({0.0}, {1.0}, {3}, [](const Vec&) { return cplx(0.0); });
  const SampledFunction F = h_fourier(u, {1}, tgt, h, FourierDirection::Forward);
  REQUIRE(F.count == std::vector<int>({3, 3}));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double x = F.coord(0, i), p = F.coord(1, j);
      const cplx expect = (x + 2.0) * std::exp(-kI * (kPi / 4)) * std::exp(-p * p / 2);
      CHECK(std::abs(F.values[i * 3 + j] - expect) <= 1e-12);
    }
}

TEST_CASE("fitted order recovers power laws") {
  const std::vector<double> hs{0.2, 0.1, 0.05, 0.025};
  for (double q : {0.5, 1.0, 1.7}) {
    std::vector<double> v;
    for (double h : hs) v.push_back(3.0 * std::pow(h, q));
    CHECK(fitted_order(hs, v) == doctest::Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("serial and parallel brute quadrature agree bit for bit") {
  const PhaseFunction f = airy_phase();
  const PhaseAmplitude cut = [](const Vec&, const Vec& t) { return cplx(bump(t[0], 2.5, 3.8)); };
  const cplx a = brute_quadrature(f, cut, Vec::Constant(1, -0.9), 0.05, {}, Exec::Serial);
  const cplx b = brute_quadrature(f, cut, Vec::Constant(1, -0.9), 0.05, {}, Exec::Parallel);
  CHECK(a == b);
}
