#include <random>

#include "caustica/canonical.hpp"
#include "caustica/errors.hpp"
#include "caustica/examples.hpp"
#include "caustica/geometry.hpp"
#include "doctest.h"

using namespace caustica;

namespace {

const auto kUnitAB = [](double, double) { return cplx(1.0); };

}  // namespace

TEST_CASE("flowed manifold is the beam pushed along P/|P|") {
  BeamParams bp;
  const LagrangianChart beam = beam_manifold(bp);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> al(-2.0, 2.0), ps(0.0, 2 * kPi), ph(-1.5, 1.5);
  for (double t : {0.0, 0.3, 1.2}) {
    for (double c : {1.0, 0.5}) {
      const LagrangianChart ev = evolved_manifold(bp, t, c);
      for (int i = 0; i < 15; ++i) {
        const Vec a{{al(rng), ps(rng), ph(rng)}};
        const Vec p = beam.P(a);
        CHECK((ev.X(a) - (beam.X(a) + t * c * p / p.norm())).norm() <= 1e-13);
        CHECK((ev.P(a) - p).norm() <= 1e-14);
        CHECK(lagrangian_defect(ev, a) <= 1e-9);
        // the flow of a degree-one Hamiltonian leaves P dX unchanged
        CHECK((pdx_form(ev, a) - pdx_form(beam, a)).cwiseAbs().maxCoeff() <= 1e-9);
      }
    }
  }
  CHECK_THROWS_AS(evolved_solve(bp, 0.5, 0.0, -1.0, 1.0), ConfigError);
}

TEST_CASE("evolved chart-system inversion round-trips") {
  BeamParams bp;
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> al(0.2, 2.0), ph(-1.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const double a = al(rng), p = ph(rng);
    for (double t : {0.1, 0.5, 1.0}) {
      const EvolvedBeamState s = evolve_point(bp, a, p, 0.0, t, 1.0);
      const EvolvedSolution sol = evolved_solve(bp, s.Xcal, s.X3, t, 1.0);
      CHECK(sol.residual <= 1e-12);
      CHECK(sol.alpha == doctest::Approx(a).epsilon(1e-10));
      CHECK(sol.phi == doctest::Approx(p).epsilon(1e-10));
      CHECK(sol.tau == doctest::Approx(bp.profile.f(p) * a + bp.k * p).epsilon(1e-10));
    }
  }
}

TEST_CASE("caustic onset for lambda = 2 + tanh on the axis") {
  BeamParams bp;  // a = b = 1
  for (double c : {1.0, 2.0, 0.25}) {
    // (lambda^2 + k^2)^2 = 25 at phi = 0 and lambda' = 1, so the root is t = 25 / (2c)
    const double root = 25.0 / (2.0 * c);
    CHECK(std::abs(caustic_onset(bp, 0.0, 0.0, root, c)) <= 1e-12);
    CHECK(caustic_onset(bp, 0.0, 0.0, 0.9 * root, c) > 0.0);
    CHECK(caustic_onset(bp, 0.0, 0.0, 1.1 * root, c) < 0.0);
  }
  BeamParams flat;
  flat.profile = constant_profile(1.5);
  for (double t : {0.0, 5.0, 500.0}) CHECK(caustic_onset(flat, 0.2, -1.0, t, 1.0) > 0.0);
}

TEST_CASE("|det M| of the generic construction against |P| lambda |X_phi|") {
  BeamParams bp;
  for (double t : {0.2, 0.7}) {
    const NewSingularChart ch = evolved_new_chart(bp, t, 1.0);
    CHECK(ch.m_U() == doctest::Approx(-0.5).epsilon(1e-8));
    for (double al : {0.4, 1.3}) {
      for (double ph : {-0.6, 0.5}) {
        const Vec a{{al, 0.8, ph}};
        const double generic = std::abs(m_matrix(ch, beam_eik_coords(bp, a)).det);
        CHECK(generic == doctest::Approx(evolved_det_m(bp, al, ph, t, 1.0)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("evolved field at t = 0 is the Bessel beam") {
  BeamParams bp;
  for (const Vec& x : {Vec{{0.4, 0.1, 0.2}}, Vec{{-0.2, 0.5, -0.4}}}) {
    const double h = 0.1;
    const cplx u = evolved_field(bp, x, 0.0, 1.0, h, kUnitAB);
    CHECK(std::abs(u - beam_reference_field(bp, x, h, kUnitAB)) <= 1e-8);
  }
}

TEST_CASE("constant profile: the beam is an eigenfunction of c|D|") {
  BeamParams bp;
  bp.profile = constant_profile(1.5);
  bp.k = 0.8;
  const double pn = std::hypot(1.5, 0.8);
  for (double t : {0.3, 1.0}) {
    for (const Vec& x : {Vec{{0.5, -0.2, 0.1}}, Vec{{-0.3, 0.6, 0.7}}}) {
      const double h = 0.1;
      const cplx u = evolved_field(bp, x, t, 1.0, h, kUnitAB);
      const cplx expect = std::exp(-kI * (t * pn / h)) * beam_reference_field(bp, x, h, kUnitAB);
      CHECK(std::abs(u - expect) <= 1e-8 * std::sqrt(2 * kPi / h));
    }
  }
}

TEST_CASE("density transport along the flow") {
  BeamParams bp;
  for (const Vec& x : {Vec{{0.6, 0.3, 0.2}}, Vec{{-0.5, 0.8, -0.3}}})
    for (double t : {0.1, 0.4}) CHECK(flow_density_residual(bp, x, t, 1.0) <= 1e-6);
}

TEST_CASE("profiles") {
  const Profile c = constant_profile(2.5);
  CHECK(c.f(3.0) == 2.5);
  CHECK(c.d1(3.0) == 0.0);
  CHECK(c.d2(-1.0) == 0.0);
  CHECK_THROWS_AS(tanh_profile(0.0, 1.0), ProfileError);
  CHECK_NOTHROW(require_positive(tanh_profile(1.0, 0.1), -10.0, 10.0));
  // beam eikonal coordinates invert
  BeamParams bp;
  const Vec a{{0.7, 1.1, -0.4}};
  CHECK((beam_alpha_coords(bp, beam_eik_coords(bp, a)) - a).norm() <= 1e-13);
}
