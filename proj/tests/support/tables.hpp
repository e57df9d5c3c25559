#pragma once

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Reading the CLI's CSV output back and locating extrema on scan grids.
namespace respond::testing {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("missing column " + name);
  }
};

inline Table read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Table t;
  std::string line;
  std::getline(in, line);
  std::istringstream h(line);
  for (std::string cell; std::getline(h, cell, ',');) t.header.push_back(cell);
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream r(line);
    for (std::string cell; std::getline(r, cell, ',');) {
      double v = 0.0;
      std::from_chars(cell.data(), cell.data() + cell.size(), v);
      row.push_back(v);
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

/// Row-major (t1 outer) view of one column of a third-order scan.
struct Grid {
  int n1, n3;
  std::vector<double> values;
  double operator()(int i, int k) const { return values[static_cast<std::size_t>(i * n3 + k)]; }
};

inline Grid grid_column(const Table& t, const std::string& name, int n1, int n3) {
  Grid g{n1, n3, {}};
  const std::size_t c = t.column(name);
  for (const auto& row : t.rows) g.values.push_back(row[c]);
  if (g.values.size() != static_cast<std::size_t>(n1) * static_cast<std::size_t>(n3)) {
    throw std::runtime_error("grid size mismatch for " + name);
  }
  return g;
}

/// Strict local extrema against the eight neighbours; sign = -1 finds minima.
/// Periodic grids wrap around, others skip the border.
inline std::vector<std::pair<int, int>> extrema(const Grid& g, double sign, bool periodic) {
  std::vector<std::pair<int, int>> out;
  const int lo = periodic ? 0 : 1;
  for (int i = lo; i < g.n1 - lo; ++i) {
    for (int k = lo; k < g.n3 - lo; ++k) {
      bool peak = true;
      for (int a = -1; a <= 1 && peak; ++a) {
        for (int b = -1; b <= 1 && peak; ++b) {
          if (a == 0 && b == 0) continue;
          peak = sign * g(i, k) > sign * g((i + a + g.n1) % g.n1, (k + b + g.n3) % g.n3);
        }
      }
      if (peak) out.emplace_back(i, k);
    }
  }
  return out;
}

/// Pearson correlation coefficient.
inline double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace respond::testing
