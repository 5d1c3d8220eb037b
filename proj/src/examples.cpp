#include "caustica/examples.hpp"

#include <cmath>
#include <sstream>

#include "caustica/errors.hpp"

namespace caustica {

Profile constant_profile(double value) {
  Profile p;
  std::ostringstream os;
  os << "constant(" << value << ")";
  p.name = os.str();
  p.f = [value](double) { return value; };
  p.d1 = p.d2 = p.d3 = [](double) { return 0.0; };
  return p;
}

Profile tanh_profile(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw ProfileError("tanh profile needs a, b > 0");
  Profile p;
  std::ostringstream os;
  os << a << "*(1+tanh)+" << b;
  p.name = os.str();
  p.f = [a, b](double s) { return a * (1.0 + std::tanh(s)) + b; };
  p.d1 = [a](double s) {
    const double t = std::tanh(s);
    return a * (1.0 - t * t);
  };
  p.d2 = [a](double s) {
    const double t = std::tanh(s);
    return -2.0 * a * t * (1.0 - t * t);
  };
  p.d3 = [a](double s) {
    const double t = std::tanh(s);
    return -2.0 * a * (1.0 - t * t) * (1.0 - 3.0 * t * t);
  };
  return p;
}

void require_positive(const Profile& p, double lo, double hi) {
  for (int i = 0; i <= 200; ++i) {
    const double s = lo + (hi - lo) * i / 200.0;
    if (!(p.f(s) > 0.0)) {
      std::ostringstream os;
      os << "lambda(" << s << ") = " << p.f(s) << " is not positive";
      throw ProfileError(os.str());
    }
  }
}

// ---------------------------------------------------------------- radial

namespace {

Vec unit(double th, double ps) {
  return Vec{{std::sin(th) * std::cos(ps), std::sin(th) * std::sin(ps), std::cos(th)}};
}

}  // namespace

LagrangianChart radial_manifold(double tau_extent) {
  ChartMaps m;
  m.name = "radial";
  m.dim = 3;
  m.domain = Box::make({-tau_extent, 0.0, 0.0}, {tau_extent, kPi, 2 * kPi}, {false, false, true});
  m.X = [](const Vec& a) { return Vec(a[0] * unit(a[1], a[2])); };
  m.P = [](const Vec& a) { return unit(a[1], a[2]); };
  auto partials = [](const Vec& a, Vec& nt, Vec& np) {
    const double st = std::sin(a[1]), ct = std::cos(a[1]), sp = std::sin(a[2]), cp = std::cos(a[2]);
    nt = Vec{{ct * cp, ct * sp, -st}};
    np = Vec{{-st * sp, st * cp, 0.0}};
  };
  m.dX = [partials](const Vec& a) {
    Vec nt, np;
    partials(a, nt, np);
    Mat d(3, 3);
    d << unit(a[1], a[2]), a[0] * nt, a[0] * np;
    return d;
  };
  m.dP = [partials](const Vec& a) {
    Vec nt, np;
    partials(a, nt, np);
    Mat d(3, 3);
    d << Vec::Zero(3), nt, np;
    return d;
  };
  auto second = [](const Vec& a, double scale, bool with_tau) {
    const double st = std::sin(a[1]), ct = std::cos(a[1]), sp = std::sin(a[2]), cp = std::cos(a[2]);
    const Vec n = unit(a[1], a[2]);
    const Vec nt{{ct * cp, ct * sp, -st}}, np{{-st * sp, st * cp, 0.0}};
    const Vec ntp{{-ct * sp, ct * cp, 0.0}}, npp{{-st * cp, -st * sp, 0.0}};
    Tensor3 t(3, Mat::Zero(3, 3));
    for (int i = 0; i < 3; ++i) {
      if (with_tau) {
        t[i](0, 1) = t[i](1, 0) = nt[i];
        t[i](0, 2) = t[i](2, 0) = np[i];
      }
      t[i](1, 1) = -scale * n[i];
      t[i](1, 2) = t[i](2, 1) = scale * ntp[i];
      t[i](2, 2) = scale * npp[i];
    }
    return t;
  };
  m.d2X = [second](const Vec& a) { return second(a, a[0], true); };
  m.d2P = [second](const Vec& a) { return second(a, 1.0, false); };
  m.mu = [](const Vec& a) { return std::sin(a[1]); };
  m.action = [](const Vec& a) { return a[0]; };
  return LagrangianChart(std::move(m));
}

EikonalChart radial_eikonal(double tau_extent) { return EikonalChart(radial_manifold(tau_extent), 0.0); }

NewSingularChart radial_new_chart(const RadialChartOptions& o) {
  const Vec center{{0.0, o.theta_star, o.psi_star}};
  const Vec start{{1.0, o.theta_star, o.psi_star}};
  NewChartOptions opts;
  opts.index_shift = o.index_shift;
  if (o.closed_form) {
    opts.closed_form = [](const Vec& x, const Vec& w) -> std::optional<Vec> {
      return Vec::Constant(1, x.dot(unit(w[0], w[1])));
    };
  }
  opts.seed = [](const Vec& x, const Vec& w) { return Vec::Constant(1, x.dot(unit(w[0], w[1]))); };
  return NewSingularChart(radial_eikonal(o.tau_extent), center, ManifoldPath::straight(start, center), opts);
}

double radial_field(const Vec& x, double h) {
  const double r = x.norm();
  if (r == 0.0) throw SingularOracleError("radial field at x = 0 (limit -2/h)");
  return -2.0 * std::sin(r / h) / r;
}

double radial_field_bessel(const Vec& x, double h) {
  const double r = x.norm();
  if (r == 0.0) throw SingularOracleError("radial field at x = 0 (limit -2/h)");
  return -std::sqrt(2.0 * kPi / (h * r)) * std::cyl_bessel_j(0.5, r / h);
}

StandardChart radial_standard_chart(double m, double momentum_radius, double tau_extent) {
  if (!(momentum_radius > 0.0 && 1.2 * momentum_radius < 1.0))
    throw ConfigError("radial (x3, p1, p2) chart needs 1.2 * momentum radius < 1");
  StandardChart sc{radial_manifold(tau_extent), {2}, [](const Vec& a) { return a[0]; }, m, {}, {}, {}, 1.0};
  sc.inverse = [tau_extent](const Vec& y) -> std::optional<Vec> {
    const double r = std::hypot(y[0], y[1]);
    if (r >= 1.0) return std::nullopt;
    const double th = std::asin(r);
    double ps = std::atan2(y[1], y[0]);
    if (ps < 0.0) ps += 2 * kPi;
    const double tau = y[2] / std::cos(th);
    if (std::abs(tau) > tau_extent) return std::nullopt;
    return Vec{{tau, th, ps}};
  };
  sc.seed = Vec{{0.0, 0.5, 0.0}};
  sc.momentum_center = Vec::Zero(2);
  sc.momentum_radius = momentum_radius;
  return sc;
}

// ---------------------------------------------------------------- beam

LagrangianChart beam_manifold(const BeamParams& bp) {
  require_positive(bp.profile, -bp.phi_extent, bp.phi_extent);
  const Profile pr = bp.profile;
  const double k = bp.k;
  ChartMaps m;
  m.name = "beam";
  m.dim = 3;
  m.domain = Box::make({-bp.alpha_extent, 0.0, -bp.phi_extent}, {bp.alpha_extent, 2 * kPi, bp.phi_extent},
                       {false, true, false});
  m.X = [](const Vec& a) { return Vec{{a[0] * std::cos(a[1]), a[0] * std::sin(a[1]), a[2]}}; };
  m.P = [pr, k](const Vec& a) {
    const double l = pr.f(a[2]);
    return Vec{{l * std::cos(a[1]), l * std::sin(a[1]), a[0] * pr.d1(a[2]) + k}};
  };
  m.dX = [](const Vec& a) {
    const double c = std::cos(a[1]), s = std::sin(a[1]);
    Mat d(3, 3);
    d << c, -a[0] * s, 0, s, a[0] * c, 0, 0, 0, 1;
    return d;
  };
  m.dP = [pr](const Vec& a) {
    const double c = std::cos(a[1]), s = std::sin(a[1]);
    const double l = pr.f(a[2]), l1 = pr.d1(a[2]), l2 = pr.d2(a[2]);
    Mat d(3, 3);
    d << 0, -l * s, l1 * c, 0, l * c, l1 * s, l1, 0, a[0] * l2;
    return d;
  };
  m.d2X = [](const Vec& a) {
    const double c = std::cos(a[1]), s = std::sin(a[1]);
    Tensor3 t(3, Mat::Zero(3, 3));
    t[0](0, 1) = t[0](1, 0) = -s;
    t[0](1, 1) = -a[0] * c;
    t[1](0, 1) = t[1](1, 0) = c;
    t[1](1, 1) = -a[0] * s;
    return t;
  };
  m.d2P = [pr](const Vec& a) {
    const double c = std::cos(a[1]), s = std::sin(a[1]);
    const double l = pr.f(a[2]), l1 = pr.d1(a[2]), l2 = pr.d2(a[2]), l3 = pr.d3(a[2]);
    Tensor3 t(3, Mat::Zero(3, 3));
    t[0](1, 1) = -l * c;
    t[0](1, 2) = t[0](2, 1) = -l1 * s;
    t[0](2, 2) = l2 * c;
    t[1](1, 1) = -l * s;
    t[1](1, 2) = t[1](2, 1) = l1 * c;
    t[1](2, 2) = l2 * s;
    t[2](0, 2) = t[2](2, 0) = l2;
    t[2](2, 2) = a[0] * l3;
    return t;
  };
  m.mu = [pr](const Vec& a) { return 1.0 / pr.f(a[2]); };
  m.action = [pr, k](const Vec& a) { return pr.f(a[2]) * a[0] + k * a[2]; };
  return LagrangianChart(std::move(m));
}

namespace {

// (tau, psi, phi) -> (alpha, psi, phi) with alpha = (tau - k phi) / lambda(phi).
CoordinateMap eikonal_to_alpha(const BeamParams& bp) {
  const Profile pr = bp.profile;
  const double k = bp.k;
  CoordinateMap cm;
  cm.A = [pr, k](const Vec& e) { return Vec{{(e[0] - k * e[2]) / pr.f(e[2]), e[1], e[2]}}; };
  cm.dA = [pr, k](const Vec& e) {
    const double l = pr.f(e[2]), l1 = pr.d1(e[2]);
    const double al = (e[0] - k * e[2]) / l;
    Mat d = Mat::Identity(3, 3);
    d(0, 0) = 1.0 / l;
    d(0, 2) = -(k + al * l1) / l;
    return d;
  };
  cm.d2A = [pr, k](const Vec& e) {
    const double l = pr.f(e[2]), l1 = pr.d1(e[2]), l2 = pr.d2(e[2]);
    const double al = (e[0] - k * e[2]) / l;
    const double aphi = -(k + al * l1) / l;
    Tensor3 t(3, Mat::Zero(3, 3));
    t[0](0, 2) = t[0](2, 0) = -l1 / (l * l);
    t[0](2, 2) = -(2.0 * aphi * l1 + al * l2) / l;
    return t;
  };
  return cm;
}

Box eikonal_box(const BeamParams& bp) {
  return Box::make({-bp.tau_extent, 0.0, -bp.phi_extent}, {bp.tau_extent, 2 * kPi, bp.phi_extent},
                   {false, true, false});
}

}  // namespace

EikonalChart beam_eikonal(const BeamParams& bp) {
  return EikonalChart(compose(beam_manifold(bp), eikonal_to_alpha(bp), eikonal_box(bp), "beam-eikonal"), 0.0);
}

Vec beam_alpha_coords(const BeamParams& bp, const Vec& e) {
  return Vec{{(e[0] - bp.k * e[2]) / bp.profile.f(e[2]), e[1], e[2]}};
}

Vec beam_eik_coords(const BeamParams& bp, const Vec& a) {
  return Vec{{bp.profile.f(a[2]) * a[0] + bp.k * a[2], a[1], a[2]}};
}

Amplitude beam_amplitude(const BeamParams& bp, std::function<cplx(double, double)> a) {
  const Profile pr = bp.profile;
  const double k = bp.k;
  return [pr, k, a = std::move(a)](const Vec& e) { return a((e[0] - k * e[2]) / pr.f(e[2]), e[2]); };
}

NewSingularChart beam_new_chart(const BeamParams& bp, double psi_star, double phi_star, bool closed_form) {
  const double lam = bp.profile.f(phi_star);
  const Vec center{{bp.k * phi_star, psi_star, phi_star}};
  const Vec start{{lam + bp.k * phi_star, psi_star, phi_star}};
  NewChartOptions opts;
  const Profile pr = bp.profile;
  const double k = bp.k, phimax = bp.phi_extent;
  auto exact = [pr, k](const Vec& x, const Vec& w) {
    const double q = x[0] * std::cos(w[0]) + x[1] * std::sin(w[0]);
    return Vec{{pr.f(x[2]) * q + k * x[2], x[2]}};
  };
  if (closed_form) {
    opts.closed_form = [exact, phimax](const Vec& x, const Vec& w) -> std::optional<Vec> {
      if (std::abs(x[2]) > phimax) return std::nullopt;
      return exact(x, w);
    };
  }
  opts.seed = [k](const Vec& x, const Vec&) { return Vec{{k * x[2], x[2]}}; };
  return NewSingularChart(beam_eikonal(bp), center, ManifoldPath::straight(start, center), opts);
}

cplx beam_reference_field(const BeamParams& bp, const Vec& x, double h,
                          const std::function<cplx(double, double)>& a) {
  const double r = std::hypot(x[0], x[1]);
  const cplx pref = std::sqrt(2.0 * kPi / h) * std::exp(kI * (kPi / 4));
  return pref * a(r, x[2]) * std::exp(kI * (bp.k * x[2] / h)) * std::cyl_bessel_j(0.0, bp.profile.f(x[2]) * r / h);
}

// ---------------------------------------------------------------- evolved beam

namespace {

struct Flow {
  double l, l1, l2, P3, Pn, Pn_a, Pn_f, Xc, Xa, Xf, X3, X3a, X3f;
};

Flow flow_at(const BeamParams& bp, double alpha, double phi, double t, double c) {
  Flow f;
  f.l = bp.profile.f(phi);
  f.l1 = bp.profile.d1(phi);
  f.l2 = bp.profile.d2(phi);
  f.P3 = alpha * f.l1 + bp.k;
  f.Pn = std::hypot(f.l, f.P3);
  f.Pn_a = f.P3 * f.l1 / f.Pn;
  f.Pn_f = (f.l * f.l1 + f.P3 * alpha * f.l2) / f.Pn;
  const double ct = c * t, p2 = f.Pn * f.Pn;
  f.Xc = alpha + ct * f.l / f.Pn;
  f.Xa = 1.0 - ct * f.l * f.Pn_a / p2;
  f.Xf = ct * (f.l1 * f.Pn - f.l * f.Pn_f) / p2;
  f.X3 = phi + ct * f.P3 / f.Pn;
  f.X3a = ct * (f.l1 * f.Pn - f.P3 * f.Pn_a) / p2;
  f.X3f = 1.0 + ct * (alpha * f.l2 * f.Pn - f.P3 * f.Pn_f) / p2;
  return f;
}

}  // namespace

Vec EvolvedBeamState::x() const { return Vec{{Xcal * std::cos(psi), Xcal * std::sin(psi), X3}}; }
Vec EvolvedBeamState::p() const { return Vec{{Pcal * std::cos(psi), Pcal * std::sin(psi), P3}}; }

EvolvedBeamState evolve_point(const BeamParams& bp, double alpha, double phi, double psi, double t, double c) {
  const Flow f = flow_at(bp, alpha, phi, t, c);
  EvolvedBeamState s;
  s.t = t;
  s.c = c;
  s.alpha = alpha;
  s.phi = phi;
  s.psi = psi;
  s.Pcal = f.l;
  s.P3 = f.P3;
  s.Pnorm = f.Pn;
  s.Xcal = f.Xc;
  s.X3 = f.X3;
  s.tau = f.l * alpha + bp.k * phi;
  return s;
}

EvolvedSolution evolved_solve(const BeamParams& bp, double q, double x3, double t, double c) {
  if (t < 0.0) throw ConfigError("evolution time must be nonnegative");
  auto solve_at = [&](double tt, Vec guess, int& iters) -> std::optional<Vec> {
    Vec u = guess;
    for (iters = 0; iters < 10; ++iters) {
      const Flow f = flow_at(bp, u[0], u[1], tt, c);
      const Vec r{{f.Xc - q, f.X3 - x3}};
      const double res = r.cwiseAbs().maxCoeff();
      Mat J(2, 2);
      J << f.Xa, f.Xf, f.X3a, f.X3f;
      const double dj = J.determinant();
      if (!(std::abs(dj) > 1e-10)) return std::nullopt;
      if (res <= 1e-13 * std::max(1.0, std::abs(q) + std::abs(x3))) return u;
      u -= J.inverse() * r;
      if (!u.allFinite()) return std::nullopt;
    }
    const Flow f = flow_at(bp, u[0], u[1], tt, c);
    const double res = std::max(std::abs(f.Xc - q), std::abs(f.X3 - x3));
    if (res <= 1e-12 * std::max(1.0, std::abs(q) + std::abs(x3))) return u;
    return std::nullopt;
  };
  for (int steps = 1; steps <= 256; steps *= 2) {
    Vec u{{q, x3}};
    bool ok = true;
    int iters = 0;
    for (int s = 1; s <= steps && ok; ++s) {
      auto next = solve_at(t * s / steps, u, iters);
      if (!next) ok = false;
      else u = *next;
    }
    if (!ok) continue;
    EvolvedSolution sol;
    sol.alpha = u[0];
    sol.phi = u[1];
    sol.tau = bp.profile.f(u[1]) * u[0] + bp.k * u[1];
    const Flow f = flow_at(bp, u[0], u[1], t, c);
    sol.residual = std::max(std::abs(f.Xc - q), std::abs(f.X3 - x3));
    sol.steps = steps;
    return sol;
  }
  std::ostringstream os;
  os << "no solution of the flowed chart system at q = " << q << ", x3 = " << x3 << ", t = " << t;
  throw CausticOnsetError(os.str());
}

double caustic_onset(const BeamParams& bp, double phi, double alpha, double t, double c) {
  const double l = bp.profile.f(phi), l1 = bp.profile.d1(phi), l2 = bp.profile.d2(phi);
  const double p3 = alpha * l1 + bp.k;
  const double s = l * l + p3 * p3;
  return s * s - 2.0 * c * t * (l1 * bp.k + alpha * (l1 * l1 - 0.5 * l * l2));
}

LagrangianChart evolved_manifold(const BeamParams& bp, double t, double c) {
  const LagrangianChart base = beam_manifold(bp);
  ChartMaps m = base.maps();
  std::ostringstream os;
  os << "evolved-beam(t=" << t << ")";
  m.name = os.str();
  const BeamParams b = bp;
  m.X = [b, t, c](const Vec& a) {
    const Flow f = flow_at(b, a[0], a[2], t, c);
    return Vec{{f.Xc * std::cos(a[1]), f.Xc * std::sin(a[1]), f.X3}};
  };
  m.dX = [b, t, c](const Vec& a) {
    const Flow f = flow_at(b, a[0], a[2], t, c);
    const double cs = std::cos(a[1]), sn = std::sin(a[1]);
    Mat d(3, 3);
    d << f.Xa * cs, -f.Xc * sn, f.Xf * cs, f.Xa * sn, f.Xc * cs, f.Xf * sn, f.X3a, 0.0, f.X3f;
    return d;
  };
  m.d2X = nullptr;
  m.action = [b](const Vec& a) { return b.profile.f(a[2]) * a[0] + b.k * a[2]; };
  return LagrangianChart(std::move(m));
}

EikonalChart evolved_eikonal(const BeamParams& bp, double t, double c) {
  return EikonalChart(compose(evolved_manifold(bp, t, c), eikonal_to_alpha(bp), eikonal_box(bp), "evolved-eikonal"),
                      0.0);
}

double evolved_xphi_norm(const BeamParams& bp, double alpha, double phi, double t, double c) {
  const Flow f = flow_at(bp, alpha, phi, t, c);
  const double aphi = -(bp.k + alpha * f.l1) / f.l;
  return std::hypot(f.Xf + f.Xa * aphi, f.X3f + f.X3a * aphi);
}

double evolved_det_m(const BeamParams& bp, double alpha, double phi, double t, double c) {
  const Flow f = flow_at(bp, alpha, phi, t, c);
  return f.Pn * f.l * evolved_xphi_norm(bp, alpha, phi, t, c);
}

NewSingularChart evolved_new_chart(const BeamParams& bp, double t, double c) {
  // center: the axis point Xcal = 0 over psi = 0, phi = 0
  auto g = [&](const Vec& a) {
    const Flow f = flow_at(bp, a[0], 0.0, t, c);
    return Vec::Constant(1, f.Xc);
  };
  auto gj = [&](const Vec& a) {
    const Flow f = flow_at(bp, a[0], 0.0, t, c);
    return Mat::Constant(1, 1, f.Xa);
  };
  const NewtonResult r = newton_solve(g, gj, Vec::Zero(1));
  if (!r.converged) throw CausticOnsetError("axis point of the flowed manifold not found");
  const double ac = r.x[0];
  const double lam = bp.profile.f(0.0);
  const Vec center{{lam * ac, 0.0, 0.0}};
  const Vec start{{lam * (ac + 1.0), 0.0, 0.0}};
  NewChartOptions opts;
  const BeamParams b = bp;
  opts.closed_form = [b, t, c](const Vec& x, const Vec& w) -> std::optional<Vec> {
    const double q = x[0] * std::cos(w[0]) + x[1] * std::sin(w[0]);
    try {
      const EvolvedSolution s = evolved_solve(b, q, x[2], t, c);
      return Vec{{s.tau, s.phi}};
    } catch (const CausticOnsetError&) {
      return std::nullopt;
    }
  };
  return NewSingularChart(evolved_eikonal(bp, t, c), center, ManifoldPath::straight(start, center), opts);
}

cplx evolved_field(const BeamParams& bp, const Vec& x, double t, double c, double h,
                   const std::function<cplx(double, double)>& a, const QuadratureSpec& quad) {
  const NewSingularChart chart = evolved_new_chart(bp, t, c);
  return evaluate_new(chart, beam_amplitude(bp, a), x, h, quad);
}

double flow_density_residual(const BeamParams& bp, const Vec& x, double t, double c) {
  // rho and rho v at (y, s), on the branch with Xcal > 0
  auto state = [&](const Vec& y, double s, double& rho, Vec& flux) {
    const double q = std::hypot(y[0], y[1]);
    const double psi = std::atan2(y[1], y[0]);
    const EvolvedSolution sol = evolved_solve(bp, q, y[2], s, c);
    const LagrangianChart ch = evolved_manifold(bp, s, c);
    const Vec a{{sol.alpha, psi, sol.phi}};
    rho = std::abs(ch.mu(a)) / std::abs(det(ch.dX(a)));
    const Vec p = ch.P(a);
    flux = rho * c * p / p.norm();
  };
  const double d = 1e-3;
  const double w[4] = {1.0 / 12, -8.0 / 12, 8.0 / 12, -1.0 / 12};
  const double off[4] = {-2, -1, 1, 2};
  double dt = 0.0, div = 0.0, scale = 0.0;
  for (int j = 0; j < 4; ++j) {
    double rho;
    Vec flux;
    state(x, t + off[j] * d, rho, flux);
    dt += w[j] * rho / d;
  }
  scale += std::abs(dt);
  for (int i = 0; i < 3; ++i) {
    double di = 0.0;
    for (int j = 0; j < 4; ++j) {
      Vec y = x;
      y[i] += off[j] * d;
      double rho;
      Vec flux;
      state(y, t, rho, flux);
      di += w[j] * flux[i] / d;
    }
    div += di;
    scale += std::abs(di);
  }
  double rho0;
  Vec flux0;
  state(x, t, rho0, flux0);
  return std::abs(dt + div) / std::max(scale, rho0 * c);
}

// ---------------------------------------------------------------- small models

LagrangianChart airy_manifold(double extent) {
  ChartMaps m;
  m.name = "airy";
  m.dim = 1;
  m.domain = Box::make({-extent}, {extent});
  m.X = [](const Vec& a) { return Vec::Constant(1, -a[0] * a[0]); };
  m.P = [](const Vec& a) { return Vec::Constant(1, a[0]); };
  m.dX = [](const Vec& a) { return Mat::Constant(1, 1, -2.0 * a[0]); };
  m.dP = [](const Vec&) { return Mat::Constant(1, 1, 1.0); };
  m.d2X = [](const Vec&) { return Tensor3{Mat::Constant(1, 1, -2.0)}; };
  m.d2P = [](const Vec&) { return Tensor3{Mat::Zero(1, 1)}; };
  m.mu = [](const Vec&) { return 1.0; };
  m.action = [](const Vec& a) { return -2.0 * a[0] * a[0] * a[0] / 3.0; };
  return LagrangianChart(std::move(m));
}

LagrangianChart circle_manifold() {
  ChartMaps m;
  m.name = "circle";
  m.dim = 1;
  m.domain = Box::make({0.0}, {2 * kPi}, {true});
  m.X = [](const Vec& a) { return Vec::Constant(1, std::cos(a[0])); };
  m.P = [](const Vec& a) { return Vec::Constant(1, std::sin(a[0])); };
  m.dX = [](const Vec& a) { return Mat::Constant(1, 1, -std::sin(a[0])); };
  m.dP = [](const Vec& a) { return Mat::Constant(1, 1, std::cos(a[0])); };
  m.d2X = [](const Vec& a) { return Tensor3{Mat::Constant(1, 1, -std::cos(a[0]))}; };
  m.d2P = [](const Vec& a) { return Tensor3{Mat::Constant(1, 1, -std::sin(a[0]))}; };
  m.mu = [](const Vec&) { return 1.0; };
  return LagrangianChart(std::move(m));
}

std::vector<std::string> example_names() { return {"radial", "beam", "evolved-beam"}; }

}  // namespace caustica
