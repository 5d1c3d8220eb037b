#pragma once

#include <functional>
#include <string>
#include <vector>

#include "caustica/canonical.hpp"
#include "caustica/chart.hpp"

namespace caustica {

/// Beam profile lambda(phi) > 0 with its first three derivatives.
struct Profile {
  std::string name;
  std::function<double(double)> f, d1, d2, d3;
};

Profile constant_profile(double value);
/// lambda = a (1 + tanh phi) + b, with a, b > 0.
Profile tanh_profile(double a, double b);

/// Throws ProfileError unless lambda > 0 on a sample grid of [lo, hi].
void require_positive(const Profile& p, double lo, double hi);

// ---------------------------------------------------------------- radial

/// X = tau n(theta, psi), P = n, mu = sin(theta), coordinates (tau, theta, psi).
LagrangianChart radial_manifold(double tau_extent = 6.0);
EikonalChart radial_eikonal(double tau_extent = 6.0);

/// Index shift that puts the radial example in the normalization of its
/// closed-form field (applied to every representation of that example).
inline constexpr double kRadialIndexShift = -1.0;

struct RadialChartOptions {
  double theta_star = kPi / 2;
  double psi_star = 0.0;
  double tau_extent = 6.0;
  double index_shift = kRadialIndexShift;
  bool closed_form = true;
};

/// New singular chart centered at the point focus tau = 0 (k = 0), reached by a
/// straight path from the central point (1, theta*, psi*).
NewSingularChart radial_new_chart(const RadialChartOptions& opts = {});

/// -2 sin(|x|/h) / |x|; throws SingularOracleError at x = 0.
double radial_field(const Vec& x, double h);
/// The same field through J_{1/2}.
double radial_field_bessel(const Vec& x, double h);

/// Chart (x3, p1, p2) on the upper hemisphere theta < pi/2 with closed-form
/// inverse theta = asin|p|, psi = atan2(p2, p1), tau = x3 / cos(theta).
StandardChart radial_standard_chart(double m, double momentum_radius, double tau_extent = 6.0);

// ---------------------------------------------------------------- beam

struct BeamParams {
  Profile profile = tanh_profile(1.0, 1.0);
  double k = 1.0;
  double alpha_extent = 6.0;
  double phi_extent = 6.0;
  double tau_extent = 60.0;
};

/// Coordinates (alpha, psi, phi): X = (alpha n(psi), phi),
/// P = (lambda n(psi), alpha lambda' + k), mu = 1 / lambda.
LagrangianChart beam_manifold(const BeamParams& bp);
/// Eikonal coordinates (tau, psi, phi), tau = lambda alpha + k phi, mu = lambda^-2.
EikonalChart beam_eikonal(const BeamParams& bp);

/// (alpha, psi, phi) from eikonal coordinates and back.
Vec beam_alpha_coords(const BeamParams& bp, const Vec& eik);
Vec beam_eik_coords(const BeamParams& bp, const Vec& alpha);

/// Amplitude a(alpha, phi) lifted to eikonal coordinates of the beam.
Amplitude beam_amplitude(const BeamParams& bp, std::function<cplx(double, double)> a);

/// New singular chart on the beam: center alpha = 0 at (psi*, phi*), psi' = phi.
NewSingularChart beam_new_chart(const BeamParams& bp, double psi_star = 0.0, double phi_star = 0.0,
                                bool closed_form = true);

/// sqrt(2 pi i / h) a(|x_perp|, x3) e^{i k x3 / h} J0(lambda(x3) |x_perp| / h).
cplx beam_reference_field(const BeamParams& bp, const Vec& x, double h, const std::function<cplx(double, double)>& a);

// ---------------------------------------------------------------- evolved beam

struct EvolvedBeamState {
  double t = 0.0, c = 1.0;
  double alpha = 0.0, phi = 0.0, psi = 0.0;
  double Pcal = 0.0;   // lambda(phi)
  double P3 = 0.0;     // alpha lambda' + k
  double Pnorm = 0.0;  // |P|
  double Xcal = 0.0;   // alpha + t c Pcal / |P|
  double X3 = 0.0;     // phi + t c P3 / |P|
  double tau = 0.0;
  Vec x() const;
  Vec p() const;
};

EvolvedBeamState evolve_point(const BeamParams& bp, double alpha, double phi, double psi, double t, double c);

struct EvolvedSolution {
  double alpha = 0.0, phi = 0.0, tau = 0.0;
  double residual = 0.0;
  int steps = 0;
};

/// Solves alpha + t c lambda / |P| = q, phi + t c P3 / |P| = x3 by Newton with
/// continuation in t. Throws CausticOnsetError on failure or at a fold.
EvolvedSolution evolved_solve(const BeamParams& bp, double q, double x3, double t, double c);

/// (lambda^2 + (alpha lambda' + k)^2)^2 - 2 c t (lambda' k + alpha (lambda'^2 - lambda lambda'' / 2)).
double caustic_onset(const BeamParams& bp, double phi, double alpha, double t, double c);

/// Flowed chart in (alpha, psi, phi) and its eikonal chart (tau, psi, phi).
LagrangianChart evolved_manifold(const BeamParams& bp, double t, double c);
EikonalChart evolved_eikonal(const BeamParams& bp, double t, double c);

/// |X_phi| in eikonal coordinates, and |det M| = |P| |P_psi| |X_phi| with |P_psi| = lambda.
double evolved_xphi_norm(const BeamParams& bp, double alpha, double phi, double t, double c);
double evolved_det_m(const BeamParams& bp, double alpha, double phi, double t, double c);

/// New singular chart on the flowed manifold with its chart system solved by evolved_solve.
NewSingularChart evolved_new_chart(const BeamParams& bp, double t, double c);

/// Field of the evolved beam (new-chart formula, psi quadrature).
cplx evolved_field(const BeamParams& bp, const Vec& x, double t, double c, double h,
                   const std::function<cplx(double, double)>& a, const QuadratureSpec& quad = {});

/// Relative residual of the continuity equation d_t rho + div(rho v) = 0 for
/// the transported density rho = |mu| / |det dX| at x (branch with Xcal > 0).
double flow_density_residual(const BeamParams& bp, const Vec& x, double t, double c);

// ---------------------------------------------------------------- small models

/// Fold manifold x = -theta^2, p = theta with dmu = d theta (the Airy manifold).
LagrangianChart airy_manifold(double extent = 5.0);
/// Circle X = cos t, P = sin t.
LagrangianChart circle_manifold();

/// Names accepted by the CLI.
std::vector<std::string> example_names();

}  // namespace caustica
