#include "caustica/invariants.hpp"

#include <cmath>
#include <random>

#include "caustica/errors.hpp"
#include "caustica/examples.hpp"
#include "caustica/fourier_bridge.hpp"
#include "caustica/geometry.hpp"
#include "caustica/maslov.hpp"

namespace caustica {

namespace {

using Sampler = std::function<Vec(std::mt19937_64&)>;

double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Lagrangian and eikonal defects, |J| identity, and J^1 along random segments.
void chart_checks(std::vector<InvariantCheck>& out, const std::string& tag, const EikonalChart& eik,
                  const Sampler& sample, std::uint64_t seed) {
  const LagrangianChart& c = eik.base();
  std::mt19937_64 g(seed);
  double lag = 0.0, eikd = 0.0, jid = 0.0;
  for (int s = 0; s < 200; ++s) {
    const Vec a = sample(g);
    lag = std::max(lag, lagrangian_defect(c, a) / std::max(1.0, c.dX(a).norm() * c.dP(a).norm()));
    eikd = std::max(eikd, eikonal_defect(eik, a));
    const double direct = std::abs(det(c.dX(a)) / c.mu(a));
    const double viagram = jacobian_eikonal_abs(eik, a);
    jid = std::max(jid, std::abs(direct - viagram) / std::max(direct, 1e-300));
  }
  out.push_back({tag + ": lagrangian defect", lag, 1e-10});
  out.push_back({tag + ": eikonal relations", eikd, 1e-10});
  out.push_back({tag + ": |J| gram identity (rel)", jid, 1e-8});

  // min |J^1| along 50 segments, reported as 1/min so that small is good
  double jmin = std::numeric_limits<double>::infinity();
  for (int p = 0; p < 50; ++p) {
    const Vec a = sample(g), b = sample(g);
    for (int k = 0; k <= 64; ++k) {
      const Vec z = a + (b - a) * (k / 64.0);
      jmin = std::min(jmin, std::abs(jacobian_eps(c, z, 1.0)));
    }
  }
  out.push_back({tag + ": 1/min|J^1| over 50 paths", 1.0 / jmin, 1e8});
}

std::vector<InvariantCheck> radial_suite() {
  std::vector<InvariantCheck> out;
  const EikonalChart eik = radial_eikonal(6.0);
  chart_checks(out, "radial", eik,
               [](std::mt19937_64& g) {
                 double t = uniform(g, 0.2, 3.0);
                 if (uniform(g, 0.0, 1.0) < 0.5) t = -t;
                 return Vec{{t, uniform(g, 0.15, kPi - 0.15), uniform(g, 0.0, 2 * kPi)}};
               },
               11);
  double pdx = 0.0, pn = 0.0;
  std::mt19937_64 g(12);
  for (int s = 0; s < 100; ++s) {
    const Vec a{{uniform(g, -3, 3), uniform(g, 0.1, 3.0), uniform(g, 0, 6)}};
    pdx = std::max(pdx, (pdx_form(eik.base(), a) - Vec{{1.0, 0.0, 0.0}}).cwiseAbs().maxCoeff());
    pn = std::max(pn, std::abs(eik.base().P(a).norm() - 1.0));
  }
  out.push_back({"radial: P dX = d tau", pdx, 1e-12});
  out.push_back({"radial: |P| = 1", pn, 1e-14});
  double bes = 0.0;
  for (int s = 1; s <= 40; ++s) {
    const Vec x{{0.0, 0.0, 0.05 * s}};
    for (double h : {0.1, 0.05, 0.01}) {
      bes = std::max(bes, std::abs(radial_field(x, h) - radial_field_bessel(x, h)) / std::max(1.0, 2.0 / x.norm()));
    }
  }
  out.push_back({"radial: sin form vs J_1/2 form", bes, 1e-12});
  const IndexResult focus = path_index(eik.base(), ManifoldPath::straight(Vec{{-1.0, 0.7, 0.4}}, Vec{{1.0, 0.7, 0.4}}));
  out.push_back({"radial: |index through focus - 2|", std::abs(static_cast<double>(focus.value) - 2.0), 0.0});
  return out;
}

std::vector<InvariantCheck> beam_suite() {
  std::vector<InvariantCheck> out;
  const BeamParams bp;
  const EikonalChart eik = beam_eikonal(bp);
  chart_checks(out, "beam", eik,
               [bp](std::mt19937_64& g) {
                 double al = uniform(g, 0.2, 3.0);
                 if (uniform(g, 0.0, 1.0) < 0.5) al = -al;
                 return beam_eik_coords(bp, Vec{{al, uniform(g, 0.0, 2 * kPi), uniform(g, -2.0, 2.0)}});
               },
               21);
  const LagrangianChart lc = beam_manifold(bp);
  double lag = 0.0;
  std::mt19937_64 g(22);
  for (int s = 0; s < 200; ++s) {
    const Vec a{{uniform(g, -3, 3), uniform(g, 0, 2 * kPi), uniform(g, -3, 3)}};
    lag = std::max(lag, lagrangian_defect(lc, a));
  }
  out.push_back({"beam (alpha, psi, phi): lagrangian defect", lag, 1e-10});
  const ManifoldPath cyc{[](double t) { return Vec{{1.3, 2 * kPi * t, 0.4}}; }};
  const IndexResult ci = cycle_index(lc, cyc);
  out.push_back({"beam: |psi-cycle index|", std::abs(static_cast<double>(ci.value)), 0.0});
  double eps_dep = 0.0;
  for (const auto& [e, v] : ci.eps_sequence) eps_dep = std::max(eps_dep, std::abs(v - ci.raw));
  out.push_back({"beam: psi-cycle eps dependence", eps_dep, 1e-6});
  double q = 0.0;
  for (double h : {0.3, 0.1, 0.0371, 0.01}) {
    const auto r = check_quantization(lc, {cyc}, h);
    q = std::max(q, std::abs(r[0].residual));
  }
  out.push_back({"beam: quantization residual", q, 1e-6});
  return out;
}

std::vector<InvariantCheck> evolved_suite() {
  std::vector<InvariantCheck> out;
  const BeamParams bp;
  const double c = 1.0, t = 0.5;
  const EikonalChart eik = evolved_eikonal(bp, t, c);
  chart_checks(out, "evolved-beam t=0.5", eik,
               [bp](std::mt19937_64& g) {
                 return beam_eik_coords(bp, Vec{{uniform(g, 0.3, 2.5), uniform(g, 0.0, 2 * kPi), uniform(g, -1.5, 1.5)}});
               },
               31);
  std::mt19937_64 g(32);
  const NewSingularChart ch1 = evolved_new_chart(bp, 0.1, c), ch3 = evolved_new_chart(bp, 0.3, c),
                         ch6 = evolved_new_chart(bp, 0.6, c);
  double res = 0.0, a1 = 0.0, circ = 0.0, tau = 0.0, detm = 0.0, jac1 = 0.0;
  for (int s = 0; s < 60; ++s) {
    const double al = uniform(g, 0.3, 2.0), ph = uniform(g, -1.0, 1.0), ps = uniform(g, 0.0, 2 * kPi);
    const double tau0 = bp.profile.f(ph) * al + bp.k * ph;
    for (double tt : {0.1, 0.3, 0.6}) {
      const EvolvedBeamState st = evolve_point(bp, al, ph, ps, tt, c);
      const EvolvedSolution sol = evolved_solve(bp, st.Xcal, st.X3, tt, c);
      res = std::max(res, sol.residual);
      const double R = tt * tt * c * c - (st.X3 - sol.phi) * (st.X3 - sol.phi);
      a1 = std::max(a1, std::abs(sol.alpha - (st.Xcal - std::sqrt(std::max(0.0, R)))));
      circ = std::max(circ, std::abs(std::pow(st.Xcal - sol.alpha, 2) + std::pow(st.X3 - sol.phi, 2) - tt * tt * c * c));
      tau = std::max(tau, std::abs(sol.tau - tau0));
      // |det M| of the generic construction against |P| |P_psi| |X_phi|
      const NewSingularChart& ch = tt == 0.1 ? ch1 : tt == 0.3 ? ch3 : ch6;
      const Vec a{{sol.alpha, ps, sol.phi}};
      const double generic = std::abs(m_matrix(ch, beam_eik_coords(bp, a)).det);
      const double closed = evolved_det_m(bp, sol.alpha, sol.phi, tt, c);
      detm = std::max(detm, std::abs(generic - closed) / closed);
      const EikonalChart ek = evolved_eikonal(bp, tt, c);
      const Vec e = beam_eik_coords(bp, a);
      const double gr = det(gram(ek, e, {0, 1}));
      const double xphi = evolved_xphi_norm(bp, sol.alpha, sol.phi, tt, c);
      jac1 = std::max(jac1, std::abs(gr - st.Xcal * st.Xcal * xphi * xphi) / gr);
    }
  }
  out.push_back({"evolved: solve residual", res, 1e-12});
  out.push_back({"evolved: alpha = q - sqrt(R)", a1, 1e-10});
  out.push_back({"evolved: (q-alpha)^2 + (x3-phi)^2 = (ct)^2", circ, 1e-10});
  out.push_back({"evolved: tau constant on trajectories", tau, 1e-10});
  out.push_back({"evolved: |det M| generic vs |P| lambda |X_phi| (rel)", detm, 1e-8});
  out.push_back({"evolved: Gram factorization (rel)", jac1, 1e-8});
  double flow = 0.0;
  for (const Vec& x : {Vec{{0.7, 0.2, 0.3}}, Vec{{-0.4, 0.9, -0.2}}, Vec{{1.1, -0.3, 0.6}}})
    for (double tt : {0.2, 0.5}) flow = std::max(flow, flow_density_residual(bp, x, tt, c));
  out.push_back({"evolved: density transport residual", flow, 1e-6});
  double onset = std::numeric_limits<double>::infinity();
  BeamParams flat;
  flat.profile = constant_profile(1.5);
  for (double tt : {0.0, 1.0, 10.0, 100.0})
    for (double al : {-2.0, 0.0, 2.0}) onset = std::min(onset, caustic_onset(flat, 0.3, al, tt, c));
  out.push_back({"evolved: constant-lambda caustic_onset min (negated)", -onset, 0.0});
  return out;
}

std::vector<InvariantCheck> bridge_suite() {
  std::vector<InvariantCheck> out;
  const BridgeSetup airy = airy_xchart_setup();
  double ext = 0.0, act = 0.0, lag = 0.0;
  for (double th : {-1.5, -0.7, 0.3, 1.0, 1.8}) {
    const Vec c = Vec::Constant(1, th);
    const DensityCheck d = density_factor_checked(airy.phase, airy.manifold, c, 1.0);
    ext = std::max(ext, d.difference / std::max(1.0, std::abs(d.F)));
    act = std::max(act, action_lift_residual(airy.phase, airy.manifold, c));
  }
  const StandardChart sc = radial_standard_chart(0.0, 0.5, 6.0);
  const BridgeSetup php = php_setup(sc, Vec{{0.1, 0.1, 0.3}});
  const LagrangianChart lifted = lifted_chart(php.phase, php.manifold, "php-lift");
  std::mt19937_64 g(41);
  for (int s = 0; s < 30; ++s) {
    const double r = uniform(g, 0.0, 0.5), a = uniform(g, 0.0, 2 * kPi);
    const Vec c{{r * std::cos(a), r * std::sin(a), uniform(g, -1.0, 1.0)}};
    const DensityCheck d = density_factor_checked(php.phase, php.manifold, c, 1.0);
    ext = std::max(ext, d.difference / std::max(1.0, std::abs(d.F)));
    act = std::max(act, action_lift_residual(php.phase, php.manifold, c));
    lag = std::max(lag, lagrangian_defect(lifted, c));
  }
  out.push_back({"bridge: density factor extension independence", ext, 1e-8});
  out.push_back({"bridge: d tau = p dx on C_Phi", act, 1e-6});
  out.push_back({"bridge: lifted chart-phase lagrangian defect", lag, 1e-8});
  return out;
}

}  // namespace

std::vector<std::string> invariant_suite_names() { return {"radial", "beam", "evolved-beam", "bridge"}; }

std::vector<InvariantCheck> invariant_suite(const std::string& name) {
  if (name == "radial") return radial_suite();
  if (name == "beam") return beam_suite();
  if (name == "evolved-beam") return evolved_suite();
  if (name == "bridge") return bridge_suite();
  throw ConfigError("unknown invariant suite '" + name + "'");
}

}  // namespace caustica
