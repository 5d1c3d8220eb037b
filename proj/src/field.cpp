#include "caustica/field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "caustica/errors.hpp"

namespace caustica {

std::size_t GridSpec::size() const {
  std::size_t s = 1;
  for (int c : count) s *= static_cast<std::size_t>(c);
  return s;
}

double GridSpec::coord(int axis, int i) const {
  if (count[axis] == 1) return lo[axis];
  return lo[axis] + (hi[axis] - lo[axis]) * i / (count[axis] - 1);
}

Vec GridSpec::point(std::size_t flat) const {
  Vec p(dim());
  for (int k = dim() - 1; k >= 0; --k) {
    p[k] = coord(k, static_cast<int>(flat % count[k]));
    flat /= count[k];
  }
  return p;
}

void GridSpec::validate() const {
  if (count.empty()) throw ConfigError("grid needs at least one axis");
  if (lo.size() != count.size() || hi.size() != count.size())
    throw ConfigError("grid lo, hi and count must have the same length");
  for (std::size_t k = 0; k < count.size(); ++k) {
    if (count[k] < 1) throw ConfigError("grid counts must be at least 1");
    if (!std::isfinite(lo[k]) || !std::isfinite(hi[k])) throw ConfigError("grid bounds must be finite");
  }
}

WaveField evaluate_grid(const GridSpec& grid, double h, const PointEvaluator& f, Exec exec) {
  grid.validate();
  if (!(h > 0.0)) throw ConfigError("h must be positive");
  WaveField w;
  w.grid = grid;
  w.h = h;
  w.values.assign(grid.size(), 0.0);
  const long n = static_cast<long>(grid.size());
  const bool par = exec == Exec::Parallel;
  // exceptions cannot leave an OpenMP region; keep the first one and rethrow
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) if (par)
  for (long i = 0; i < n; ++i) {
    if (failure) continue;
    try {
      w.values[i] = f(grid.point(static_cast<std::size_t>(i)));
    } catch (...) {
#pragma omp critical(caustica_grid_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  for (const cplx& v : w.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw AccuracyError("non-finite field sample");
  return w;
}

FieldDifference difference(const WaveField& a, const WaveField& b) {
  if (a.values.size() != b.values.size()) throw ConfigError("fields live on different grids");
  FieldDifference d;
  double s = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const double e = std::abs(a.values[i] - b.values[i]);
    d.max_abs = std::max(d.max_abs, e);
    d.max_field = std::max({d.max_field, std::abs(a.values[i]), std::abs(b.values[i])});
    s += e * e;
  }
  d.l2 = a.values.empty() ? 0.0 : std::sqrt(s / a.values.size());
  return d;
}

void write_csv(const WaveField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << std::setprecision(17);
  for (int k = 0; k < field.grid.dim(); ++k) out << "x" << k + 1 << ",";
  out << "re,im,abs\n";
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    const Vec p = field.grid.point(i);
    for (int k = 0; k < p.size(); ++k) out << p[k] << ",";
    const cplx v = field.values[i];
    out << v.real() << "," << v.imag() << "," << std::abs(v) << "\n";
  }
}

std::vector<CsvRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("empty CSV file " + path);
  int cols = 1;
  for (char ch : line) cols += ch == ',';
  const int n = cols - 3;
  if (n < 1) throw ConfigError("CSV header has too few columns");
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> v;
    while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
    if (static_cast<int>(v.size()) != cols) throw ConfigError("malformed CSV row: " + line);
    CsvRow r;
    r.x = Eigen::Map<Vec>(v.data(), n);
    r.value = cplx(v[n], v[n + 1]);
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_pgm(const WaveField& field, int axis_row, int axis_col, const std::vector<int>& fixed,
               const std::string& path) {
  const GridSpec& g = field.grid;
  if (axis_row < 0 || axis_col < 0 || axis_row >= g.dim() || axis_col >= g.dim() || axis_row == axis_col)
    throw ConfigError("heatmap axes must be two distinct grid axes");
  if (static_cast<int>(fixed.size()) != g.dim()) throw ConfigError("heatmap needs one fixed index per axis");
  const int rows = g.count[axis_row], cols = g.count[axis_col];
  std::vector<double> mag(static_cast<std::size_t>(rows) * cols);
  std::vector<int> idx = fixed;
  double peak = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      idx[axis_row] = r;
      idx[axis_col] = c;
      std::size_t flat = 0;
      for (int k = 0; k < g.dim(); ++k) flat = flat * g.count[k] + idx[k];
      mag[static_cast<std::size_t>(r) * cols + c] = std::abs(field.values[flat]);
      peak = std::max(peak, mag[static_cast<std::size_t>(r) * cols + c]);
    }
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << "P5\n" << cols << " " << rows << "\n255\n";
  for (double m : mag) {
    const double s = peak > 0.0 ? m / peak : 0.0;
    out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * s))));
  }
  std::ofstream side(path + ".txt");
  side << std::setprecision(17) << "min_abs 0\nmax_abs " << peak << "\nrows_axis " << axis_row << "\ncols_axis "
       << axis_col << "\n";
}

void write_provenance(const WaveField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << std::setprecision(17) << "h = " << field.h << "\n";
  for (const auto& [k, v] : field.provenance) out << k << " = " << v << "\n";
}

}  // namespace caustica
