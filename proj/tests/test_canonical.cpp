#include <random>

#include "caustica/canonical.hpp"
#include "caustica/cutoff.hpp"
#include "caustica/errors.hpp"
#include "caustica/examples.hpp"
#include "doctest.h"

using namespace caustica;

namespace {

const Amplitude kUnit = [](const Vec&) { return cplx(1.0); };

// Independent closed form of the focusing spherical wave.
double spherical(const Vec& x, double h) { return -2.0 * std::sin(x.norm() / h) / x.norm(); }

NonsingularOptions radial_branches() {
  const long cross = path_index(radial_manifold(), ManifoldPath::straight(Vec{{1.0, 0.7, 0.4}}, Vec{{-1.0, 0.7, 0.4}})).value;
  NonsingularOptions o;
  for (double tau : {-1.0, 1.0})
    for (double th : {0.5, 1.5, 2.6})
      for (double ps : {0.5, 2.5, 4.5}) o.seeds.push_back(Vec{{tau, th, ps}});
  o.branch_index = [cross](const Vec& a) { return kRadialIndexShift + (a[0] < 0.0 ? cross : 0); };
  return o;
}

}  // namespace

TEST_CASE("radial closed form through J_1/2") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 20; ++i) {
    const Vec x{{u(rng), u(rng), u(rng)}};
    CHECK(radial_field_bessel(x, 0.07) == doctest::Approx(spherical(x, 0.07)).epsilon(1e-12));
    CHECK(radial_field(x, 0.07) == doctest::Approx(spherical(x, 0.07)).epsilon(1e-14));
  }
  CHECK_THROWS_AS(radial_field(Vec::Zero(3), 0.1), SingularOracleError);
}

TEST_CASE("new chart reproduces the spherical wave") {
  const NewSingularChart nc = radial_new_chart();
  std::mt19937_64 rng(32);
  std::normal_distribution<double> g;
  for (int i = 0; i < 6; ++i) {
    Vec x{{g(rng), g(rng), g(rng)}};
    x *= (0.5 + 1.5 * i / 5.0) / x.norm();
    for (double h : {0.1, 0.05}) {
      const cplx u = evaluate_new(nc, kUnit, x, h);
      CHECK(std::abs(u - spherical(x, h)) <= 1e-8 * 2.0 / x.norm());
    }
  }
  // at the focus the field takes its limit -2/h
  CHECK(std::abs(evaluate_new(nc, kUnit, Vec::Zero(3), 0.1) + 20.0) <= 1e-8);
}

TEST_CASE("chart-system solutions have zero residual") {
  const NewSingularChart nc = radial_new_chart();
  const Vec x{{0.3, -0.2, 0.5}};
  for (double th : {0.3, 1.2, 2.5}) {
    const Vec psi2{{th, 1.7}};
    const Vec u = nc.solve(x, psi2);
    CHECK(nc.me1_residual(x, psi2, u).cwiseAbs().maxCoeff() <= 1e-12);
    // tau(x, psi'') = <x, n(psi'')> for the radial manifold
    const double expect = x[0] * std::sin(th) * std::cos(1.7) + x[1] * std::sin(th) * std::sin(1.7) + x[2] * std::cos(th);
    CHECK(u[0] == doctest::Approx(expect).epsilon(1e-12));
    const Vec grad = nc.tau_gradient(x, psi2, u);
    CHECK(grad[0] == doctest::Approx(std::sin(th) * std::cos(1.7)).epsilon(1e-10));
  }
}

TEST_CASE("nonsingular sum away from the focus and its guard") {
  const EikonalChart eik = radial_eikonal();
  const NonsingularOptions o = radial_branches();
  for (const Vec& x : {Vec{{0.6, 0.2, -0.4}}, Vec{{-1.1, 0.9, 0.3}}}) {
    const auto br = preimages(eik, x, o);
    CHECK(br.size() == 2);
    CHECK(std::abs(evaluate_nonsingular(eik, kUnit, x, 0.05, o) - spherical(x, 0.05)) <= 1e-9);
  }
  CHECK_THROWS_AS(evaluate_nonsingular(eik, kUnit, Vec{{1e-5, 0.0, 1e-5}}, 0.1, o), NearCausticError);
}

TEST_CASE("linearity in the amplitude") {
  const NewSingularChart nc = radial_new_chart();
  const Amplitude a1 = [](const Vec& a) { return cplx(bump(a[1] - 1.0, 0.4, 0.8), 0.0); };
  const Amplitude a2 = [](const Vec& a) { return cplx(0.0, std::cos(a[2])) * bump(a[0], 1.0, 3.0); };
  const Amplitude mix = [&](const Vec& a) { return a1(a) - 2.0 * a2(a); };
  const Vec x{{0.2, 0.1, -0.3}};
  const cplx lhs = evaluate_new(nc, mix, x, 0.1);
  const cplx rhs = evaluate_new(nc, a1, x, 0.1) - 2.0 * evaluate_new(nc, a2, x, 0.1);
  CHECK(std::abs(lhs - rhs) <= 1e-7 * std::max(1.0, std::abs(lhs)));
  CHECK(evaluate_new(nc, [](const Vec&) { return cplx(0.0); }, x, 0.1) == cplx(0.0));
  CHECK_THROWS_AS(evaluate_new(nc, kUnit, x, 0.0), ConfigError);
}

TEST_CASE("serial and parallel new-chart evaluation agree bit for bit") {
  const NewSingularChart nc = radial_new_chart();
  const Vec x{{0.4, -0.3, 0.2}};
  const cplx s = evaluate_new(nc, kUnit, x, 0.1, {}, Exec::Serial);
  const cplx p = evaluate_new(nc, kUnit, x, 0.1, {}, Exec::Parallel);
  CHECK(s == p);
}

TEST_CASE("standard and new charts agree for a tau-independent amplitude") {
  // both sides share phase and measure; only the tau argument of the amplitude differs
  const double m = chart_index(radial_manifold(), ManifoldPath::straight(Vec{{1.0, 0.5, 0.0}}, Vec{{0.0, 0.5, 0.0}}),
                               {2}).value + kRadialIndexShift;
  const StandardChart sc = radial_standard_chart(m, std::sin(0.9));
  const NewSingularChart nc = radial_new_chart();
  const Amplitude cap = [](const Vec& a) { return cplx(bump(a[1], 0.6, 0.9)); };
  const Vec x{{0.05, -0.02, 0.1}};
  const cplx us = evaluate_standard(sc, cap, x, 0.1);
  const cplx un = evaluate_new(nc, cap, x, 0.1);
  CHECK(std::abs(us - un) <= 1e-8 * std::abs(un));
  const Vec y = canonical_coordinates(sc, Vec{{0.7, 0.4, 1.0}});
  CHECK((standard_inverse(sc, y) - Vec{{0.7, 0.4, 1.0}}).norm() <= 1e-12);
  CHECK_THROWS_AS(standard_inverse(sc, Vec{{0.9, 0.9, 0.0}}), CoordinateChartError);
  CHECK_THROWS_AS(radial_standard_chart(-1.0, 0.9), ConfigError);
}

TEST_CASE("beam: new chart equals the Bessel beam for a unit amplitude") {
  BeamParams bp;
  const NewSingularChart nc = beam_new_chart(bp);
  CHECK(nc.m_U() == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(nc.k() == 1);
  const Amplitude a = beam_amplitude(bp, [](double, double) { return cplx(1.0); });
  for (const Vec& x : {Vec{{0.3, 0.1, 0.0}}, Vec{{0.0, 0.0, 0.5}}, Vec{{-0.7, 0.4, -0.6}}}) {
    for (double h : {0.2, 0.05}) {
      const double r = std::hypot(x[0], x[1]);
      const double l = bp.profile.f(x[2]);
      const cplx ref = std::sqrt(2 * kPi * kI / h) * std::exp(kI * (bp.k * x[2] / h)) * std::cyl_bessel_j(0.0, l * r / h);
      CHECK(std::abs(evaluate_new(nc, a, x, h) - ref) <= 1e-9 * std::abs(std::sqrt(2 * kPi / h)));
      CHECK(std::abs(beam_reference_field(bp, x, h, [](double, double) { return cplx(1.0); }) - ref) <= 1e-12);
    }
  }
}

TEST_CASE("partition of unity") {
  const NewSingularChart nc = radial_new_chart();
  auto eval = [&](const Amplitude& a, const Vec& x, double h) { return evaluate_new(nc, a, x, h); };
  PartitionOfUnity pou;
  pou.pieces.push_back({"upper", [](const Vec& a) { return smooth_step(2.0 - a[1]); }, eval});
  pou.pieces.push_back({"lower", [](const Vec& a) { return 1.0 - smooth_step(2.0 - a[1]); }, eval});
  const Vec x{{0.3, 0.4, -0.2}};
  std::vector<Vec> samples;
  for (double th = 0.1; th < 3.1; th += 0.3) samples.push_back(Vec{{0.5, th, 1.0}});
  const cplx glued = evaluate_global(pou, kUnit, x, 0.1, samples);
  CHECK(std::abs(glued - spherical(x, 0.1)) <= 1e-7);
  pou.pieces.pop_back();
  CHECK_THROWS_AS(evaluate_global(pou, kUnit, x, 0.1, samples), CoverageError);
}

TEST_CASE("actions and Bohr-Sommerfeld residuals") {
  // P dX = d tau on the radial manifold
  const LagrangianChart lc = radial_manifold();
  CHECK(path_action(lc, ManifoldPath::straight(Vec{{0.5, 0.3, 0.0}}, Vec{{2.0, 2.0, 5.0}})) ==
        doctest::Approx(1.5).epsilon(1e-10));
  const LagrangianChart circle = circle_manifold();
  const ManifoldPath cyc{[](double t) { return Vec::Constant(1, 2 * kPi * t); }};
  const long m = cycle_index(circle, cyc).value;
  for (double h : {1.0, 0.5, 1.0 / 3.0, 0.25}) {
    const auto q = check_quantization(circle, {cyc}, h);
    REQUIRE(q.size() == 1);
    // (2 / (pi h)) (-pi) - m reduced mod 4
    double raw = -2.0 / h - static_cast<double>(m);
    raw -= 4.0 * std::round(raw / 4.0);
    if (raw <= -2.0) raw += 4.0;
    // +2 and -2 are the same class mod 4
    const double gap = q[0].residual - raw;
    CHECK(std::abs(gap - 4.0 * std::round(gap / 4.0)) <= 1e-8);
    CHECK(q[0].pass == (std::abs(raw) < 1e-6));
  }
  CHECK_THROWS_AS(check_quantization(circle, {ManifoldPath::straight(Vec::Constant(1, 0.0), Vec::Constant(1, 1.0))}, 1.0),
                  NotACycleError);
}
