#include "caustica/cutoff.hpp"
#include "caustica/errors.hpp"
#include "caustica/examples.hpp"
#include "caustica/fourier_bridge.hpp"
#include "doctest.h"

using namespace caustica;

TEST_CASE("critical set of the Airy phase") {
  const PhaseFunction f = airy_phase();
  const auto cps = critical_set(f, Vec::Constant(1, -1.0));
  REQUIRE(cps.size() == 2);
  for (const auto& cp : cps) {
    const double th = cp.theta[0];
    CHECK(std::abs(std::abs(th) - 1.0) <= 1e-12);
    CHECK(cp.p[0] == doctest::Approx(th));  // Phi_x = theta
    CHECK(action_on_lift(f, cp) == doctest::Approx(-th + th * th * th / 3.0));
    CHECK(cp.sigma_min > 1e-8);
  }
  // [Phi_thx | Phi_thth] = [1 | 2 theta] has full rank even at the fold
  CHECK(nondegeneracy_check(f, Vec::Constant(1, 0.0), Vec::Constant(1, 0.0)).ok);
}

TEST_CASE("lifted Airy manifold and d tau = p dx") {
  const PhaseFunction f = airy_phase();
  const CriticalManifold M = airy_critical_manifold();
  const LagrangianChart lc = lifted_chart(f, M, "airy-lift");
  for (double c : {-1.5, 0.3, 2.0}) {
    const Vec a = Vec::Constant(1, c);
    CHECK(lc.X(a)[0] == doctest::Approx(-c * c));
    CHECK(lc.P(a)[0] == doctest::Approx(c));
    CHECK(action_lift_residual(f, M, a) <= 1e-6);
  }
}

TEST_CASE("density factor: |F| = 1 for d mu = d theta on the Airy set") {
  // in (x, theta) the pair (c, Phi_theta) = (theta, x + theta^2) has unit Jacobian
  const BridgeSetup st = airy_xchart_setup();
  for (double c : {-1.2, 0.5, 1.0, 2.0}) {
    const DensityCheck d = density_factor_checked(st.phase, st.manifold, Vec::Constant(1, c));
    CHECK(std::abs(d.F) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(d.difference <= 1e-10);
  }
  // theta > 0 sheet in the x-chart: block = -2 theta, Ibar empty
  const long m = bridge_index(st.phase, st.manifold, Vec::Constant(1, 1.0), {0});
  const double F = density_factor(st.phase, st.manifold, Vec::Constant(1, 1.0));
  CHECK(m == -(F < 0 ? 1 : 0) - 1);
  CHECK(bridge_block(st.phase, Vec::Constant(1, -1.0), Vec::Constant(1, 1.0), {0})(0, 0) == doctest::Approx(-2.0));
}

TEST_CASE("chart phase of the radial standard chart") {
  const StandardChart sc = radial_standard_chart(0.0, 0.5);
  const BridgeSetup ps = php_setup(sc, Vec{{0.3, 0.1, 0.1}});
  CHECK(derivative_mismatch(ps.phase, {{Vec{{0.1, 0.2, 0.3}}, Vec{{0.1, -0.2}}}}) <= 1e-5);
  // F equals the density of d mu in the canonical coordinates, for both extensions
  const Vec c{{0.3, 0.1, 0.2}};
  const DensityCheck d = density_factor_checked(ps.phase, ps.manifold, c);
  CHECK(d.F == doctest::Approx(ps.manifold.mu(c)).epsilon(1e-10));
  CHECK(d.F_skewed == doctest::Approx(d.F).epsilon(1e-8));
  CHECK(bridge_index(ps.phase, ps.manifold, c, {2}) == 0);
  // the lift of C_Phi reproduces the chart points
  const Vec alpha{{0.8, 0.4, 1.3}};
  const Vec cc = ps.to_c(alpha);
  const Vec xt = ps.manifold.embed(cc);
  CHECK((xt.head(3) - sc.chart.X(alpha)).norm() <= 1e-12);
  const LagrangianChart lc = lifted_chart(ps.phase, ps.manifold, "php");
  CHECK(lagrangian_defect(lc, cc) <= 1e-8);
}

TEST_CASE("oscillatory integral equals the canonical operator") {
  SUBCASE("chart phase of the radial chart: identity up to quadrature") {
    const BridgeSetup ps = php_setup(radial_standard_chart(0.0, 0.5), Vec{{0.1, 0.1, 0.3}});
    const auto phi = [](const Vec& c) { return cplx(bump(std::hypot(c[0], c[1]), 0.2, 0.45) * bump(c[2] - 0.5, 1, 2)); };
    const EquivalenceReport r = equivalence_residual(ps, phi, Vec{{0.1, 0.05, 0.5}}, {0.1, 0.05});
    for (const auto& row : r.rows) {
      CHECK(std::abs(row.lhs) > 0.1);
      CHECK(row.residual <= 1e-8);
    }
  }
  SUBCASE("Airy against its x-chart: residual decays like h") {
    const BridgeSetup st = airy_xchart_setup();
    const auto phi = [](const Vec& c) { return cplx(bump(c[0] - 1.0, 0.3, 0.6)); };
    const EquivalenceReport r = equivalence_residual(st, phi, Vec::Constant(1, -1.0), {0.1, 0.05, 0.025});
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[2].residual < r.rows[0].residual);
    CHECK(r.order >= 0.9);
  }
}

TEST_CASE("density factor rejects a vanishing measure") {
  CriticalManifold M = airy_critical_manifold();
  M.mu = [](const Vec&) { return 0.0; };
  CHECK_THROWS_AS(density_factor(airy_phase(), M, Vec::Constant(1, 1.0)), InconsistentMeasureError);
}
