#include "caustica/config.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "caustica/canonical.hpp"
#include "caustica/cutoff.hpp"
#include "caustica/errors.hpp"
#include "caustica/examples.hpp"
#include "caustica/maslov.hpp"
#include "json.hpp"

namespace caustica {

using nlohmann::json;

double AmplitudeSpec::get(const std::string& key, double fallback) const {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

namespace {

template <class T>
T take(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("field '") + key + "': " + e.what());
  }
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

JobConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("top level must be an object");
  JobConfig c;
  c.example = take<std::string>(j, "example", "");
  if (c.example.empty()) throw ConfigError("missing 'example'");
  c.representation = take<std::string>(j, "representation", c.representation);
  c.compare = take<std::vector<std::string>>(j, "compare", {});
  if (j.contains("amplitude")) {
    const json& a = j["amplitude"];
    if (!a.is_object()) throw ConfigError("'amplitude' must be an object");
    for (auto it = a.begin(); it != a.end(); ++it) {
      if (it.key() == "kind") c.amplitude.kind = it.value().get<std::string>();
      else if (it.key() == "tau_coeffs") c.amplitude.tau_coeffs = it.value().get<std::vector<double>>();
      else if (it.value().is_number()) c.amplitude.params[it.key()] = it.value().get<double>();
      else throw ConfigError("amplitude field '" + it.key() + "' must be a number");
    }
  }
  if (j.contains("beam")) {
    const json& b = j["beam"];
    c.beam.profile = take<std::string>(b, "profile", c.beam.profile);
    c.beam.a = take<double>(b, "a", c.beam.a);
    c.beam.b = take<double>(b, "b", c.beam.b);
    c.beam.value = take<double>(b, "value", c.beam.value);
    c.beam.k = take<double>(b, "k", c.beam.k);
  }
  if (j.contains("evolution")) {
    c.t = take<double>(j["evolution"], "t", c.t);
    c.c = take<double>(j["evolution"], "c", c.c);
  }
  if (!j.contains("grid")) throw ConfigError("missing 'grid'");
  const json& g = j["grid"];
  c.grid.lo = take<std::vector<double>>(g, "lo", {});
  c.grid.hi = take<std::vector<double>>(g, "hi", {});
  c.grid.count = take<std::vector<int>>(g, "count", {});
  if (c.grid.hi.empty()) c.grid.hi = c.grid.lo;
  c.grid.validate();
  if (j.contains("h")) {
    if (j["h"].is_number()) c.h = {j["h"].get<double>()};
    else c.h = take<std::vector<double>>(j, "h", c.h);
  }
  if (c.h.empty()) throw ConfigError("'h' list is empty");
  for (double h : c.h)
    if (!(h > 0.0)) throw ConfigError("every h must be positive");
  if (j.contains("heatmap")) {
    HeatmapSpec hm;
    const auto axes = take<std::vector<int>>(j["heatmap"], "axes", {0, 1});
    if (axes.size() != 2) throw ConfigError("heatmap 'axes' needs two entries");
    hm.row_axis = axes[0];
    hm.col_axis = axes[1];
    hm.fixed = take<std::vector<int>>(j["heatmap"], "fixed", std::vector<int>(c.grid.dim(), 0));
    c.heatmap = hm;
  }
  if (j.contains("quadrature")) {
    c.quadrature.rel_tol = take<double>(j["quadrature"], "rel_tol", c.quadrature.rel_tol);
    c.quadrature.max_nodes = take<int>(j["quadrature"], "max_nodes", c.quadrature.max_nodes);
    if (!(c.quadrature.rel_tol > 0.0)) throw ConfigError("quadrature rel_tol must be positive");
  }
  if (j.contains("tolerance")) {
    c.order_min = take<double>(j["tolerance"], "order_min", c.order_min);
    c.order_max = take<double>(j["tolerance"], "order_max", c.order_max);
    c.max_diff = take<double>(j["tolerance"], "max_diff", c.max_diff);
  }
  if (j.contains("index")) {
    const json& ix = j["index"];
    if (ix.contains("from")) c.index.from = to_vec(take<std::vector<double>>(ix, "from", {}));
    if (ix.contains("to")) c.index.to = to_vec(take<std::vector<double>>(ix, "to", {}));
    if (ix.contains("I")) {
      c.index.I = take<std::vector<int>>(ix, "I", {});
      c.index.has_chart_set = true;
    }
  }
  return c;
}

JobConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

const FieldFn& Problem::get(const std::string& name) const {
  const auto it = representations.find(name);
  if (it == representations.end()) {
    std::string known;
    for (const auto& [k, v] : representations) known += (known.empty() ? "" : ", ") + k;
    throw ConfigError("representation '" + name + "' is not available for " + example + " (have: " + known + ")");
  }
  return it->second;
}

// ---------------------------------------------------------------- builders

namespace {

Problem build_radial(const JobConfig& cfg) {
  Problem p;
  p.example = "radial";
  const AmplitudeSpec& as = cfg.amplitude;
  Amplitude amp;
  double theta_support = kPi;
  if (as.kind == "unit") {
    amp = [](const Vec&) { return cplx(1.0); };
  } else if (as.kind == "zero") {
    amp = [](const Vec&) { return cplx(0.0); };
  } else if (as.kind == "cap") {
    const double tp = as.get("theta_plateau", 0.6), ts = as.get("theta_support", 0.9);
    const double up = as.get("tau_plateau", 2.0), us = as.get("tau_support", 4.0);
    if (!(0.0 <= tp && tp < ts)) throw ConfigError("cap needs 0 <= theta_plateau < theta_support");
    theta_support = ts;
    const std::vector<double> co = as.tau_coeffs;
    amp = [tp, ts, up, us, co](const Vec& a) {
      double poly = 0.0;
      for (auto it = co.rbegin(); it != co.rend(); ++it) poly = poly * a[0] + *it;
      return cplx(poly * bump(a[1], tp, ts) * bump(a[0], up, us));
    };
  } else {
    throw ConfigError("radial amplitude kind must be unit, zero or cap");
  }
  const QuadratureSpec q = cfg.quadrature;

  auto nc = std::make_shared<NewSingularChart>(radial_new_chart({}));
  p.representations["new"] = [nc, amp, q](const Vec& x, double h) { return evaluate_new(*nc, amp, x, h, q); };
  p.info["new chart m_U"] = num(nc->m_U());
  p.info["new chart m_U (formula, before shift)"] = num(nc->index().raw);

  // two regular sheets: tau > 0 carries index 0, tau < 0 the focal crossing
  const LagrangianChart lc = radial_manifold(6.0);
  const long cross = path_index(lc, ManifoldPath::straight(Vec{{1.0, 0.7, 0.4}}, Vec{{-1.0, 0.7, 0.4}})).value;
  auto eik = std::make_shared<EikonalChart>(radial_eikonal(6.0));
  NonsingularOptions nso;
  for (double tau : {-1.0, 1.0})
    for (double th : {0.5, 1.5, 2.6})
      for (double ps : {0.5, 2.5, 4.5}) nso.seeds.push_back(Vec{{tau, th, ps}});
  nso.branch_index = [cross](const Vec& a) { return kRadialIndexShift + (a[0] < 0.0 ? cross : 0); };
  p.representations["nonsingular"] = [eik, nso, amp](const Vec& x, double h) {
    return evaluate_nonsingular(*eik, amp, x, h, nso);
  };
  p.representations["auto"] = [eik, nso, amp, nc, q](const Vec& x, double h) {
    try {
      return evaluate_nonsingular(*eik, amp, x, h, nso);
    } catch (const NearCausticError&) {
      return evaluate_new(*nc, amp, x, h, q);
    }
  };
  // only e^{i pi m / 2} enters, so report representatives in (-2, 2]
  auto mod4 = [](double m) { return m - 4.0 * std::ceil((m - 2.0) / 4.0); };
  p.info["nonsingular branch indices (mod 4)"] =
      num(mod4(kRadialIndexShift)) + ", " + num(mod4(kRadialIndexShift + cross));

  if (theta_support < kPi / 2 && std::sin(theta_support) * 1.2 < 1.0) {
    const IndexResult si =
        chart_index(lc, ManifoldPath::straight(Vec{{1.0, 0.5, 0.0}}, Vec{{0.0, 0.5, 0.0}}), {2});
    auto sc = std::make_shared<StandardChart>(
        radial_standard_chart(static_cast<double>(si.value) + kRadialIndexShift, std::sin(theta_support), 6.0));
    p.representations["standard"] = [sc, amp, q](const Vec& x, double h) {
      return evaluate_standard(*sc, amp, x, h, q);
    };
    p.info["standard chart (x3, p1, p2) index"] = num(sc->m);
  }
  if (as.kind == "unit") {
    p.representations["exact"] = [](const Vec& x, double h) { return cplx(radial_field(x, h)); };
    p.oracle = "exact";
  }
  return p;
}

BeamParams beam_params(const JobConfig& cfg) {
  BeamParams bp;
  if (cfg.beam.profile == "tanh") bp.profile = tanh_profile(cfg.beam.a, cfg.beam.b);
  else if (cfg.beam.profile == "constant") bp.profile = constant_profile(cfg.beam.value);
  else throw ConfigError("beam profile must be tanh or constant");
  bp.k = cfg.beam.k;
  require_positive(bp.profile, -bp.phi_extent, bp.phi_extent);
  return bp;
}

std::function<cplx(double, double)> beam_amp(const AmplitudeSpec& as) {
  if (as.kind == "unit") return [](double, double) { return cplx(1.0); };
  if (as.kind == "zero") return [](double, double) { return cplx(0.0); };
  if (as.kind == "gaussian") {
    const double wa = as.get("alpha_width", 1.0), wp = as.get("phi_width", 1.0);
    if (!(wa > 0.0 && wp > 0.0)) throw ConfigError("gaussian widths must be positive");
    return [wa, wp](double al, double ph) {
      return cplx(std::exp(-0.5 * (al * al / (wa * wa) + ph * ph / (wp * wp))));
    };
  }
  throw ConfigError("beam amplitude kind must be unit, zero or gaussian");
}

Problem build_beam(const JobConfig& cfg) {
  Problem p;
  p.example = "beam";
  const BeamParams bp = beam_params(cfg);
  const auto a = beam_amp(cfg.amplitude);
  const Amplitude amp = beam_amplitude(bp, a);
  const QuadratureSpec q = cfg.quadrature;
  auto nc = std::make_shared<NewSingularChart>(beam_new_chart(bp, 0.0, 0.0, true));
  p.representations["new"] = [nc, amp, q](const Vec& x, double h) { return evaluate_new(*nc, amp, x, h, q); };
  p.representations["auto"] = p.representations["new"];
  p.representations["reference"] = [bp, a](const Vec& x, double h) { return beam_reference_field(bp, x, h, a); };
  p.oracle = "reference";
  p.info["new chart m_U"] = num(nc->m_U());
  p.info["profile"] = bp.profile.name;
  return p;
}

Problem build_evolved(const JobConfig& cfg) {
  Problem p;
  p.example = "evolved-beam";
  const BeamParams bp = beam_params(cfg);
  if (!(cfg.t >= 0.0)) throw ConfigError("evolution time must be nonnegative");
  if (!(cfg.c > 0.0)) throw ConfigError("wave speed must be positive");
  const auto a = beam_amp(cfg.amplitude);
  const Amplitude amp = beam_amplitude(bp, a);
  const QuadratureSpec q = cfg.quadrature;
  auto nc = std::make_shared<NewSingularChart>(evolved_new_chart(bp, cfg.t, cfg.c));
  p.representations["new"] = [nc, amp, q](const Vec& x, double h) { return evaluate_new(*nc, amp, x, h, q); };
  p.representations["auto"] = p.representations["new"];
  p.info["new chart m_U"] = num(nc->m_U());
  p.info["t"] = num(cfg.t);
  p.info["c"] = num(cfg.c);
  if (cfg.t == 0.0) {
    p.representations["reference"] = [bp, a](const Vec& x, double h) { return beam_reference_field(bp, x, h, a); };
    p.oracle = "reference";
  }
  return p;
}

}  // namespace

Problem build_problem(const JobConfig& cfg) {
  Problem p;
  if (cfg.example == "radial") p = build_radial(cfg);
  else if (cfg.example == "beam") p = build_beam(cfg);
  else if (cfg.example == "evolved-beam") p = build_evolved(cfg);
  else throw ConfigError("unknown example '" + cfg.example + "' (radial, beam, evolved-beam)");
  if (cfg.grid.dim() != p.dim) throw ConfigError("grid must have 3 axes for " + cfg.example);
  return p;
}

}  // namespace caustica
