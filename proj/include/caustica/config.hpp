#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "caustica/field.hpp"
#include "caustica/quadrature.hpp"

namespace caustica {

struct AmplitudeSpec {
  std::string kind = "unit";  // unit | zero | cap (radial) | gaussian (beams)
  std::map<std::string, double> params;
  std::vector<double> tau_coeffs = {1.0};  // cap: polynomial factor in tau
  double get(const std::string& key, double fallback) const;
};

struct BeamSpec {
  std::string profile = "tanh";  // tanh: a (1 + tanh phi) + b; constant: value
  double a = 1.0;
  double b = 1.0;
  double value = 1.0;
  double k = 1.0;
};

struct HeatmapSpec {
  int row_axis = 0;
  int col_axis = 1;
  std::vector<int> fixed;  // one index per grid axis; the two map axes are ignored
};

struct IndexSpec {
  std::optional<Vec> from;
  std::optional<Vec> to;
  std::vector<int> I;
  bool has_chart_set = false;
};

/// Declarative job description (JSON on disk).
struct JobConfig {
  std::string example;
  std::string representation = "new";
  std::vector<std::string> compare;  // two representation names
  AmplitudeSpec amplitude;
  BeamSpec beam;
  double t = 0.0;
  double c = 1.0;
  GridSpec grid;
  std::vector<double> h = {0.1};
  std::optional<HeatmapSpec> heatmap;
  QuadratureSpec quadrature;
  double order_min = 0.9;
  double order_max = 1.5;
  double max_diff = 1e-6;  // single-h compare threshold (relative to max |u|)
  IndexSpec index;
};

/// Parses JSON text; throws ConfigError with a readable message.
JobConfig parse_config(const std::string& text);
JobConfig load_config(const std::string& path);

using FieldFn = std::function<cplx(const Vec& x, double h)>;

/// Evaluators for one example, keyed by representation name.
struct Problem {
  std::string example;
  int dim = 3;
  std::map<std::string, FieldFn> representations;
  std::string oracle;  // name of the closed-form representation, empty if none
  std::map<std::string, std::string> info;

  const FieldFn& get(const std::string& name) const;
};

Problem build_problem(const JobConfig& cfg);

}  // namespace caustica
