// caustica command-line front end.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "caustica/canonical.hpp"
#include "caustica/config.hpp"
#include "caustica/errors.hpp"
#include "caustica/examples.hpp"
#include "caustica/field.hpp"
#include "caustica/invariants.hpp"
#include "caustica/maslov.hpp"
#include "caustica/oscillatory.hpp"

namespace fs = std::filesystem;
using namespace caustica;

namespace {

struct Cli {
  std::string command;
  std::string config;
  std::string out = ".";
  int threads = 0;
  std::vector<double> h;
};

std::string h_tag(double h) {
  std::ostringstream os;
  os << h;
  return os.str();
}

WaveField run_field(const Problem& p, const std::string& rep, const GridSpec& grid, double h) {
  const FieldFn& f = p.get(rep);
  const auto t0 = std::chrono::steady_clock::now();
  WaveField w = evaluate_grid(grid, h, [&](const Vec& x) { return f(x, h); });
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  w.provenance = p.info;
  w.provenance["example"] = p.example;
  w.provenance["representation"] = rep;
  w.provenance["seconds"] = std::to_string(secs);
  return w;
}

int cmd_eval(const JobConfig& cfg, const Cli& cli) {
  const Problem p = build_problem(cfg);
  for (double h : cfg.h) {
    const WaveField w = run_field(p, cfg.representation, cfg.grid, h);
    const std::string stem = (fs::path(cli.out) / (p.example + "_" + cfg.representation + "_h" + h_tag(h))).string();
    write_csv(w, stem + ".csv");
    write_provenance(w, stem + ".meta.txt");
    if (cfg.heatmap) write_pgm(w, cfg.heatmap->row_axis, cfg.heatmap->col_axis, cfg.heatmap->fixed, stem + ".pgm");
    double peak = 0.0;
    for (const cplx& v : w.values) peak = std::max(peak, std::abs(v));
    std::cout << "h=" << h << "  points=" << w.values.size() << "  max|u|=" << peak << "  -> " << stem << ".csv\n";
  }
  return 0;
}

int cmd_compare(const JobConfig& cfg, const Cli& cli) {
  const Problem p = build_problem(cfg);
  std::vector<std::string> reps = cfg.compare;
  if (reps.empty()) reps = {cfg.representation, p.oracle.empty() ? std::string("standard") : p.oracle};
  if (reps.size() != 2) throw ConfigError("'compare' needs exactly two representations");
  std::ofstream csv(fs::path(cli.out) / "compare.csv");
  csv << std::setprecision(17) << "h,max_diff,l2_diff,max_field,normalized_max\n";
  std::vector<double> hs, norm;
  std::cout << "compare " << reps[0] << " vs " << reps[1] << " on " << p.example << "\n";
  std::cout << std::setw(10) << "h" << std::setw(14) << "max diff" << std::setw(14) << "L2 diff" << std::setw(14)
            << "max |u|" << std::setw(14) << "normalized" << "\n";
  for (double h : cfg.h) {
    const FieldDifference d = difference(run_field(p, reps[0], cfg.grid, h), run_field(p, reps[1], cfg.grid, h));
    const double nm = d.max_field > 0.0 ? d.max_abs / d.max_field : 0.0;
    csv << h << "," << d.max_abs << "," << d.l2 << "," << d.max_field << "," << nm << "\n";
    std::cout << std::setw(10) << h << std::setw(14) << d.max_abs << std::setw(14) << d.l2 << std::setw(14)
              << d.max_field << std::setw(14) << nm << "\n";
    hs.push_back(h);
    norm.push_back(nm);
  }
  double worst = 0.0;
  for (double v : norm) worst = std::max(worst, v);
  bool pass = worst <= cfg.max_diff;
  if (pass) {
    std::cout << "max normalized difference " << worst << " (tolerance " << cfg.max_diff << ") PASS\n";
  } else if (hs.size() >= 2) {
    // disagreement beyond tolerance is acceptable only if it decays at the expected rate
    const double order = fitted_order(hs, norm);
    pass = order >= cfg.order_min && order <= cfg.order_max;
    std::cout << "fitted order " << order << " (band [" << cfg.order_min << ", " << cfg.order_max << "]) "
              << (pass ? "PASS" : "FAIL") << "\n";
  } else {
    std::cout << "max normalized difference " << worst << " (tolerance " << cfg.max_diff << ") FAIL\n";
  }
  return pass ? 0 : 1;
}

int cmd_sweep(const JobConfig& cfg, const Cli& cli) {
  const Problem p = build_problem(cfg);
  const bool has_oracle = !p.oracle.empty() && p.oracle != cfg.representation;
  std::ofstream csv(fs::path(cli.out) / "sweep.csv");
  csv << std::setprecision(17) << "h,max_field" << (has_oracle ? ",max_err,l2_err" : "") << "\n";
  std::vector<double> hs, errs;
  std::cout << "sweep " << cfg.representation << " on " << p.example
            << (has_oracle ? " against " + p.oracle : std::string()) << "\n";
  for (double h : cfg.h) {
    const WaveField w = run_field(p, cfg.representation, cfg.grid, h);
    double peak = 0.0;
    for (const cplx& v : w.values) peak = std::max(peak, std::abs(v));
    csv << h << "," << peak;
    std::cout << "  h=" << std::setw(10) << h << "  max|u|=" << std::setw(12) << peak;
    if (has_oracle) {
      const FieldDifference d = difference(w, run_field(p, p.oracle, cfg.grid, h));
      csv << "," << d.max_abs << "," << d.l2;
      std::cout << "  max err=" << std::setw(12) << d.max_abs << "  L2 err=" << d.l2;
      hs.push_back(h);
      errs.push_back(d.max_abs);
    }
    csv << "\n";
    std::cout << "\n";
  }
  // an order fitted to round-off is noise
  bool resolved = true;
  for (double e : errs) resolved = resolved && e > 1e-12;
  if (hs.size() >= 2 && resolved) std::cout << "fitted order of max err: " << fitted_order(hs, errs) << "\n";
  return 0;
}

int cmd_index(const JobConfig& cfg, const Cli& cli) {
  const Problem p = build_problem(cfg);
  std::ofstream rep(fs::path(cli.out) / "index.txt");
  auto line = [&](const std::string& k, const std::string& v) {
    std::cout << std::left << std::setw(44) << k << v << "\n";
    rep << k << " = " << v << "\n";
  };
  for (const auto& [k, v] : p.info) line(k, v);
  LagrangianChart lc = cfg.example == "radial" ? radial_manifold(6.0)
                       : cfg.example == "beam" ? beam_manifold(BeamParams{})
                                               : evolved_manifold(BeamParams{}, cfg.t, cfg.c);
  if (cfg.example != "radial") {
    BeamParams bp;
    if (cfg.beam.profile == "constant") bp.profile = constant_profile(cfg.beam.value);
    else bp.profile = tanh_profile(cfg.beam.a, cfg.beam.b);
    bp.k = cfg.beam.k;
    lc = cfg.example == "beam" ? beam_manifold(bp) : evolved_manifold(bp, cfg.t, cfg.c);
  }
  Vec from, to;
  if (cfg.index.from && cfg.index.to) {
    from = *cfg.index.from;
    to = *cfg.index.to;
  } else if (cfg.example == "radial") {
    from = Vec{{-1.0, 0.7, 0.4}};
    to = Vec{{1.0, 0.7, 0.4}};
  } else {
    from = to = Vec{{1.0, 0.0, 0.0}};
  }
  if (from.size() != 3 || to.size() != 3) throw ConfigError("index path endpoints need 3 coordinates");
  const ManifoldPath path = ManifoldPath::straight(from, to);
  const IndexResult r = path_index(lc, path);
  std::ostringstream ps;
  ps << "(" << from.transpose() << ") -> (" << to.transpose() << ")";
  line("path", ps.str());
  line("path index", std::to_string(r.value) + " (raw " + std::to_string(r.raw) + ")");
  if (cfg.index.has_chart_set) {
    const IndexResult ci = chart_index(lc, path, cfg.index.I);
    line("chart index at path end", std::to_string(ci.value) + " (raw " + std::to_string(ci.raw) + ")");
  }
  if (cfg.example != "radial") {
    const ManifoldPath cyc{[](double t) { return Vec{{1.3, 2 * kPi * t, 0.4}}; }};
    const IndexResult ci = cycle_index(lc, cyc);
    line("psi-cycle index", std::to_string(ci.value) + " (raw " + std::to_string(ci.raw) + ")");
  }
  return 0;
}

int cmd_check(const JobConfig& cfg, const Cli& cli) {
  std::vector<std::string> suites = {cfg.example};
  if (cfg.example != "bridge") suites.push_back("bridge");
  std::ofstream csv(fs::path(cli.out) / "check.csv");
  csv << std::setprecision(17) << "suite,check,value,threshold,pass\n";
  bool ok = true;
  for (const auto& s : suites) {
    for (const auto& c : invariant_suite(s)) {
      std::cout << (c.pass() ? "ok   " : "FAIL ") << std::left << std::setw(60) << c.name << std::right
                << std::setw(12) << std::setprecision(3) << c.value << "  (<= " << c.threshold << ")\n";
      csv << s << ",\"" << c.name << "\"," << c.value << "," << c.threshold << "," << (c.pass() ? 1 : 0) << "\n";
      ok = ok && c.pass();
    }
  }
  std::cout << (ok ? "all invariants hold\n" : "some invariants FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  CLI::App app{"caustica: semiclassical wave fields via the canonical operator"};
  app.set_help_flag("--help", "print this help");
  app.add_option("command", cli.command, "eval | compare | sweep | index | check")
      ->required()
      ->check(CLI::IsMember({"eval", "compare", "sweep", "index", "check"}));
  app.add_option("--config", cli.config, "JSON job description")->required();
  app.add_option("--out", cli.out, "output directory");
  app.add_option("--threads", cli.threads, "OpenMP threads (0 = default)");
  app.add_option("--h", cli.h, "override the h list")->delimiter(',');
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    JobConfig cfg = load_config(cli.config);
    if (!cli.h.empty()) {
      for (double h : cli.h)
        if (!(h > 0.0)) throw ConfigError("every h must be positive");
      cfg.h = cli.h;
    }
    if (cli.threads < 0) throw ConfigError("--threads must be nonnegative");
    if (cli.threads > 0) omp_set_num_threads(cli.threads);
    fs::create_directories(cli.out);
    if (cli.command == "eval") return cmd_eval(cfg, cli);
    if (cli.command == "compare") return cmd_compare(cfg, cli);
    if (cli.command == "sweep") return cmd_sweep(cfg, cli);
    if (cli.command == "index") return cmd_index(cfg, cli);
    return cmd_check(cfg, cli);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
