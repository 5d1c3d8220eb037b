#include <random>

#include "caustica/errors.hpp"
#include "caustica/examples.hpp"
#include "caustica/geometry.hpp"
#include "caustica/maslov.hpp"
#include "doctest.h"

using namespace caustica;

namespace {

// Unwrapped argument variation by brute force on a fine uniform grid.
double brute_variation(const std::function<cplx(double)>& f, int n = 200000) {
  double acc = 0.0;
  cplx prev = f(0.0);
  for (int i = 1; i <= n; ++i) {
    const cplx cur = f(static_cast<double>(i) / n);
    acc += std::arg(cur / prev);
    prev = cur;
  }
  return acc;
}

}  // namespace

TEST_CASE("argument tracing") {
  for (int k : {-3, 0, 1, 5}) {
    const ArgTrace tr = trace_argument([k](double t) { return std::exp(kI * (2 * kPi * k * t)); }, 0.0, 1.0);
    CHECK(tr.total_variation == doctest::Approx(2 * kPi * k).epsilon(1e-12));
    for (std::size_t i = 1; i < tr.unwrapped_arg.size(); ++i)
      CHECK(std::abs(tr.unwrapped_arg[i] - tr.unwrapped_arg[i - 1]) <= kPi / 4 + 1e-12);
  }
  // fast winding forces refinement beyond the 64 initial samples
  const ArgTrace fast = trace_argument([](double t) { return std::exp(kI * (2 * kPi * 100 * t)); }, 0.0, 1.0);
  CHECK(fast.total_variation == doctest::Approx(200 * kPi).epsilon(1e-12));
  CHECK_THROWS_AS(trace_argument([](double t) { return cplx(t - 0.5, 0.0); }, 0.0, 1.0),
                  RegularizationNeededError);
}

TEST_CASE("radial path index through the focus") {
  const LagrangianChart lc = radial_manifold();
  const ManifoldPath p = ManifoldPath::straight(Vec{{-1.0, 0.7, 0.4}}, Vec{{1.0, 0.7, 0.4}});
  const IndexResult r = path_index(lc, p);
  CHECK(r.value == 2);
  CHECK(r.integral);
  // J^eps = (tau - i eps)^2, so the variation is 2 (pi - 2 atan eps) / pi exactly
  for (const auto& [eps, raw] : r.eps_sequence)
    CHECK(raw == doctest::Approx(2.0 * (kPi - 2.0 * std::atan(eps)) / kPi).epsilon(1e-10));
  CHECK(path_index(lc, p.reversed()).value == -2);
  CHECK(path_index(lc, p.reparametrized([](double t) { return t * t; })).value == 2);
}

TEST_CASE("path index is additive and vanishes on constant paths") {
  const LagrangianChart lc = radial_manifold();
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> tau(-2.0, 2.0), th(0.3, 2.8), ps(0.0, 6.0);
  auto pt = [&] {
    Vec v{{tau(rng), th(rng), ps(rng)}};
    if (std::abs(v[0]) < 0.2) v[0] = 0.6;
    return v;
  };
  for (int i = 0; i < 8; ++i) {
    const Vec a = pt(), b = pt(), c = pt();
    const ManifoldPath ab = ManifoldPath::straight(a, b), bc = ManifoldPath::straight(b, c);
    CHECK(path_index(lc, ManifoldPath::concat(ab, bc)).value == path_index(lc, ab).value + path_index(lc, bc).value);
    CHECK(path_index(lc, ManifoldPath::constant(a)).value == 0);
    // crossing the focus flips the sign of tau; the index records the crossing count with sign
    const long expect = (a[0] < 0) == (b[0] < 0) ? 0 : (a[0] < 0 ? 2 : -2);
    CHECK(path_index(lc, ab).value == expect);
  }
  CHECK_THROWS_AS(path_index(lc, ManifoldPath::straight(Vec{{0.0, 1.0, 0.0}}, Vec{{1.0, 1.0, 0.0}})),
                  InvalidEndpointError);
}

TEST_CASE("circle: cycle index from the unwrapped argument of J^eps") {
  const LagrangianChart lc = circle_manifold();
  const ManifoldPath cyc{[](double t) { return Vec::Constant(1, 2 * kPi * t); }};
  const IndexResult r = cycle_index(lc, cyc);
  for (const auto& [eps, raw] : r.eps_sequence) {
    const double e = eps;
    const double expect =
        brute_variation([e](double t) { return cplx(-std::sin(2 * kPi * t), -e * std::cos(2 * kPi * t)); }) / kPi;
    CHECK(raw == doctest::Approx(expect).epsilon(1e-9));
  }
  CHECK(std::abs(r.value) == 2);
  CHECK(path_action(lc, cyc) == doctest::Approx(-kPi).epsilon(1e-10));
}

TEST_CASE("beam psi-cycle has index zero for every eps") {
  const LagrangianChart lc = beam_manifold(BeamParams{});
  for (double alpha : {-1.2, 0.4, 2.0}) {
    const ManifoldPath cyc{[alpha](double t) { return Vec{{alpha, 2 * kPi * t, 0.3}}; }};
    const IndexResult r = cycle_index(lc, cyc);
    CHECK(r.value == 0);
    for (const auto& [eps, raw] : r.eps_sequence) CHECK(std::abs(raw) <= 1e-9);
  }
}

TEST_CASE("chart index: homotopy and scheduled formulas agree at regular endpoints") {
  const LagrangianChart lc = radial_manifold();
  const Vec a0{{1.0, 0.5, 0.0}};
  for (double tau : {0.5, 2.0, -0.7}) {
    for (double th : {0.5, 1.0}) {
      const ManifoldPath p = ManifoldPath::straight(a0, Vec{{tau, th, 0.3}});
      const IndexResult reg = chart_index_regular(lc, p, {2});
      const IndexResult sch = chart_index_scheduled(lc, p, {2});
      CHECK(reg.value == sch.value);
      CHECK(reg.integral);
    }
  }
  // the focus itself is reached only through the scheduled formula
  const IndexResult focal = chart_index(lc, ManifoldPath::straight(a0, Vec{{0.0, 0.5, 0.0}}), {2});
  CHECK(focal.value == 0);
  // the identity chart I = {0,1,2} carries the path index
  const ManifoldPath through = ManifoldPath::straight(a0, Vec{{-1.0, 0.5, 0.0}});
  CHECK(chart_index(lc, through, {0, 1, 2}).value == path_index(lc, through).value);
  // beam J = lambda alpha is negative for alpha < 0, so that cannot be a central point
  const LagrangianChart beam = beam_manifold(BeamParams{});
  CHECK_THROWS_AS(chart_index(beam, ManifoldPath::straight(Vec{{-1.0, 0.0, 0.0}}, Vec{{1.0, 0.0, 0.0}}), {0, 1, 2}),
                  InvalidEndpointError);
}

TEST_CASE("eigenvalue argument sum") {
  CMat d = CMat::Zero(2, 2);
  d(0, 0) = cplx(1.0, -1.0);
  d(1, 1) = cplx(2.0, 2.0);
  CHECK(clamped_eigen_arg_sum(d) == doctest::Approx(0.0).epsilon(1e-14));
  d(1, 1) = cplx(0.0, 3.0);
  CHECK(clamped_eigen_arg_sum(d) == doctest::Approx(kPi / 4));
  d(1, 1) = cplx(-1.0, 0.1);
  CHECK_THROWS_AS(clamped_eigen_arg_sum(d), NumericalBranchError);
  d(1, 1) = 0.0;
  CHECK_THROWS_AS(clamped_eigen_arg_sum(d), DegenerateChartError);
}

TEST_CASE("new radial chart carries the shifted index") {
  const NewSingularChart nc = radial_new_chart();
  CHECK(nc.index().raw == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(nc.m_U() == doctest::Approx(-1.0 + kRadialIndexShift));
  CHECK(nc.k() == 0);
}
