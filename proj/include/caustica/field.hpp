#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "caustica/linalg.hpp"
#include "caustica/quadrature.hpp"

namespace caustica {

/// Uniform tensor grid; row-major with the last axis fastest.
struct GridSpec {
  std::vector<double> lo;
  std::vector<double> hi;
  std::vector<int> count;

  int dim() const { return static_cast<int>(count.size()); }
  std::size_t size() const;
  double coord(int axis, int i) const;
  Vec point(std::size_t flat) const;
  /// Throws ConfigError unless the spec is well formed.
  void validate() const;
};

struct WaveField {
  GridSpec grid;
  double h = 0.0;
  std::vector<cplx> values;
  std::map<std::string, std::string> provenance;
};

using PointEvaluator = std::function<cplx(const Vec& x)>;

/// Evaluates every grid point. Parallel mode distributes points over threads;
/// each point's value does not depend on the schedule.
WaveField evaluate_grid(const GridSpec& grid, double h, const PointEvaluator& f, Exec exec = Exec::Parallel);

struct FieldDifference {
  double max_abs = 0.0;
  double l2 = 0.0;  // sqrt(mean |a - b|^2)
  double max_field = 0.0;  // max |u| over both fields
};
FieldDifference difference(const WaveField& a, const WaveField& b);

/// Columns x1..xn, re, im, abs with 17 significant digits.
void write_csv(const WaveField& field, const std::string& path);

struct CsvRow {
  Vec x;
  cplx value;
};
std::vector<CsvRow> read_csv(const std::string& path);

/// 8-bit PGM of |u| over two grid axes (others fixed at `fixed` indices),
/// linear in [0, max |u|]; the scale goes to path + ".txt".
void write_pgm(const WaveField& field, int axis_row, int axis_col, const std::vector<int>& fixed,
               const std::string& path);

/// key = value lines.
void write_provenance(const WaveField& field, const std::string& path);

}  // namespace caustica
