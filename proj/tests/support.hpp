#pragma once

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ppf/vec.hpp"

namespace test_support {

/// Additive recurrence with plastic-number increments, mapped to [-half, half]^d.
inline ppf::Vec quasi_random(std::size_t i, std::size_t d, double half) {
  static constexpr double alpha[] = {0.7548776662466927, 0.5698402909980532, 0.4301597090019468};
  ppf::Vec u(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double t = std::fmod(0.5 + static_cast<double>(i + 1) * alpha[j], 1.0);
    u[j] = (2.0 * t - 1.0) * half;
  }
  return u;
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double variance(const std::vector<double>& v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

inline double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

/// Fresh empty directory under the system temp path.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ppfilter_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Last column of every data row of a CSV (header and # lines skipped).
inline std::vector<double> last_column(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::vector<double> out;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    out.push_back(std::stod(line.substr(line.rfind(',') + 1)));
  }
  return out;
}

/// Rows of a pattern CSV as coordinate vectors.
inline std::vector<std::vector<double>> csv_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  std::vector<std::vector<double>> out;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    out.push_back(row);
  }
  return out;
}

/// Counts of 2-d points in an n x n quadrat grid over [x0, x1] x [y0, y1].
inline std::vector<double> quadrat_counts(const std::vector<std::vector<double>>& pts, std::size_t n, double x0,
                                          double y0, double x1, double y1) {
  std::vector<double> counts(n * n, 0.0);
  for (const auto& p : pts) {
    if (p[0] < x0 || p[0] > x1 || p[1] < y0 || p[1] > y1) continue;
    const auto ix = std::min(n - 1, static_cast<std::size_t>((p[0] - x0) / (x1 - x0) * double(n)));
    const auto iy = std::min(n - 1, static_cast<std::size_t>((p[1] - y0) / (y1 - y0) * double(n)));
    counts[ix + n * iy] += 1.0;
  }
  return counts;
}

}  // namespace test_support
