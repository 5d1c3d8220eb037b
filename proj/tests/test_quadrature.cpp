#include <cmath>

#include "caustica/errors.hpp"
#include "caustica/newton.hpp"
#include "caustica/quadrature.hpp"
#include "doctest.h"

using namespace caustica;

TEST_CASE("Gauss-Legendre 16 rule is exact for degree 31") {
  double s0 = 0.0, s30 = 0.0, s31 = 0.0;
  for (std::size_t i = 0; i < gl16_nodes().size(); ++i) {
    const double x = gl16_nodes()[i], w = gl16_weights()[i];
    s0 += w;
    s30 += w * std::pow(x, 30);
    s31 += w * std::pow(x, 31);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s30 == doctest::Approx(2.0 / 31.0).epsilon(1e-13));
  CHECK(std::abs(s31) <= 1e-15);
}

TEST_CASE("oscillatory integrals against closed forms") {
  QuadratureSpec q;
  q.rel_tol = 1e-12;
  for (double k : {1.0, 25.0, 200.0}) {
    const QuadResult r = integrate({{0.0, 1.0, Rule::GaussLegendre}},
                                   [k](const Vec& t) { return std::exp(kI * (k * t[0])); }, q);
    const cplx expect = (std::exp(kI * k) - 1.0) / (kI * k);
    CHECK(std::abs(r.value - expect) <= 1e-11);
  }
  // periodic trapezoid: integral of e^{i z cos t} over a period is 2 pi J0(z)
  for (double z : {0.5, 3.0, 30.0}) {
    const QuadResult r = integrate({{0.0, 2 * kPi, Rule::Periodic}},
                                   [z](const Vec& t) { return std::exp(kI * (z * std::cos(t[0]))); }, q);
    CHECK(std::abs(r.value - 2 * kPi * std::cyl_bessel_j(0.0, z)) <= 1e-11);
  }
}

TEST_CASE("tensor-product Gaussian in two dimensions") {
  QuadratureSpec q;
  q.rel_tol = 1e-12;
  const QuadResult r = integrate({{-8.0, 8.0, Rule::GaussLegendre}, {-8.0, 8.0, Rule::GaussLegendre}},
                                 [](const Vec& t) { return cplx(std::exp(-t.squaredNorm() / 2), 0.0); }, q);
  CHECK(r.value.real() == doctest::Approx(2 * kPi).epsilon(1e-12));
  CHECK(r.abs_integral == doctest::Approx(2 * kPi).epsilon(1e-12));
}

TEST_CASE("serial and parallel quadrature agree bit for bit") {
  const std::vector<AxisSpec> axes{{0.0, 2 * kPi, Rule::Periodic}, {-1.0, 2.0, Rule::GaussLegendre}};
  auto f = [](const Vec& t) { return std::exp(kI * (7.0 * std::sin(t[0]) * t[1])) * (1.0 + t[1] * t[1]); };
  for (int nodes : {32, 64, 128}) {
    const QuadResult s = integrate_fixed(axes, f, nodes, Exec::Serial);
    const QuadResult p = integrate_fixed(axes, f, nodes, Exec::Parallel);
    CHECK(s.value.real() == p.value.real());
    CHECK(s.value.imag() == p.value.imag());
  }
  const QuadResult s = integrate(axes, f, {}, Exec::Serial);
  const QuadResult p = integrate(axes, f, {}, Exec::Parallel);
  CHECK(s.value == p.value);
  CHECK(s.nodes_per_axis == p.nodes_per_axis);
}

TEST_CASE("quadrature contracts") {
  QuadratureSpec tight;
  tight.max_nodes = 32;
  tight.rel_tol = 1e-14;
  CHECK_THROWS_AS(integrate({{0.0, 1.0, Rule::GaussLegendre}},
                            [](const Vec& t) { return std::exp(kI * (5000.0 * t[0] * t[0])); }, tight),
                  AccuracyError);
  QuadratureSpec bad;
  bad.rel_tol = 0.0;
  CHECK_THROWS_AS(integrate({{0.0, 1.0}}, [](const Vec&) { return cplx(1.0); }, bad), ConfigError);
  int calls = 0;
  const QuadResult r = integrate({}, [&](const Vec& t) {
    ++calls;
    CHECK(t.size() == 0);
    return cplx(3.0, 1.0);
  });
  CHECK(calls == 1);
  CHECK(r.value == cplx(3.0, 1.0));
  // identically zero integrand converges through the absolute floor
  QuadratureSpec abs;
  abs.abs_tol = 1e-14;
  CHECK(integrate({{0.0, 1.0}}, [](const Vec&) { return cplx(0.0); }, abs).value == cplx(0.0));
}

TEST_CASE("Newton solver and multistart") {
  auto f = [](const Vec& x) { return Vec::Constant(1, x[0] * x[0] - 2.0); };
  auto j = [](const Vec& x) { return Mat::Constant(1, 1, 2.0 * x[0]); };
  const NewtonResult r = newton_solve(f, j, Vec::Constant(1, 1.0));
  CHECK(r.converged);
  CHECK(r.x[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  // finite-difference Jacobian when none is supplied
  const NewtonResult r2 = newton_solve(f, {}, Vec::Constant(1, 3.0));
  CHECK(r2.x[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

  std::vector<Vec> seeds;
  for (double s : {-3.0, -1.0, 0.5, 1.0, 2.0, 4.0}) seeds.push_back(Vec::Constant(1, s));
  const auto roots = newton_multistart(
      f, j, seeds, {}, [](const Vec&) { return true; }, [](const Vec& a, const Vec& b) { return (a - b).norm(); });
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].x[0] == doctest::Approx(-std::sqrt(2.0)));
  CHECK(roots[1].x[0] == doctest::Approx(std::sqrt(2.0)));

  // a 2x2 system with a known root
  auto g = [](const Vec& x) { return Vec{{std::sin(x[0]) + x[1] - 1.0, x[0] * x[1] - 0.25}}; };
  const NewtonResult r3 = newton_solve(g, {}, Vec{{0.3, 0.8}});
  CHECK(r3.converged);
  CHECK(g(r3.x).cwiseAbs().maxCoeff() <= 1e-12);

  CHECK(std::isinf(condition_number(Mat{{1.0, 1.0}, {1.0, 1.0}})));
  CHECK(condition_number(Mat{{2.0, 0.0}, {0.0, 0.5}}) == doctest::Approx(4.0));
}
