#include "ppf/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "ppf/errors.hpp"
#include "ppf/format.hpp"

namespace ppf::io {
namespace {

constexpr const char* kAxisNames[] = {"x", "y", "z"};

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

std::string coordinate_header(std::size_t d) {
  std::string h;
  for (std::size_t j = 0; j < d; ++j) {
    if (j) h += ',';
    h += kAxisNames[j];
  }
  return h;
}

}  // namespace

PointPattern read_pattern_csv(std::istream& in, const Window& window) {
  const std::size_t d = window.dimension();
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::vector<Vec> points;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (!have_header) {
      std::string header;
      for (char c : t)
        if (c != ' ' && c != '\t') header += c;
      if (header != coordinate_header(d))
        throw ParseError("pattern CSV: expected header '" + coordinate_header(d) + "', got '" + t + "'");
      have_header = true;
      continue;
    }
    std::vector<double> row;
    try {
      row = parse_number_list(t);
    } catch (const ParseError& e) {
      throw ParseError("pattern CSV line " + std::to_string(line_no) + ": " + e.what());
    }
    if (row.size() != d)
      throw ParseError("pattern CSV line " + std::to_string(line_no) + ": expected " + std::to_string(d) +
                       " columns, got " + std::to_string(row.size()));
    points.emplace_back(std::span<const double>(row));
  }
  if (in.bad()) throw IoError("pattern CSV: read failure");
  if (!have_header) throw ParseError("pattern CSV: missing header");
  return PointPattern(std::move(points), window);
}

PointPattern read_pattern_csv(const std::filesystem::path& path, const Window& window) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_pattern_csv(in, window);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const DomainError& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

void write_pattern_csv(std::ostream& out, const PointPattern& pattern) {
  out << coordinate_header(pattern.dimension()) << '\n';
  for (const Vec& p : pattern.points()) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (j) out << ',';
      out << format_number(p[j]);
    }
    out << '\n';
  }
}

void write_pattern_csv(const std::filesystem::path& path, const PointPattern& pattern) {
  auto out = open_out(path);
  write_pattern_csv(out, pattern);
  finish(out, path);
}

void write_spectrum_csv(std::ostream& out, const SpectralEstimate& estimate) {
  const std::size_t d = estimate.dimension();
  out << "# lambda_hat=" << format_number(estimate.intensity_hat) << '\n';
  static constexpr const char* names[] = {"kx", "ky", "kz"};
  for (std::size_t j = 0; j < d; ++j) out << names[j] << ',';
  out << "fhat\n";
  const std::size_t dc = estimate.lattice.dc_index();
  for (std::size_t i = 0; i < estimate.values.size(); ++i) {
    if (i == dc) continue;
    for (std::size_t j = 0; j < d; ++j) out << format_number(estimate.wavenumbers[i][j]) << ',';
    out << format_number(estimate.values[i]) << '\n';
  }
}

void write_spectrum_csv(const std::filesystem::path& path, const SpectralEstimate& estimate) {
  auto out = open_out(path);
  write_spectrum_csv(out, estimate);
  finish(out, path);
}

void write_radial_csv(std::ostream& out, const SpectralEstimate& estimate) {
  if (!estimate.radial_bins) throw EstimationError("write_radial_csv: estimate has no radial bins");
  out << "# lambda_hat=" << format_number(estimate.intensity_hat) << '\n';
  out << "k,fhat_iso,count\n";
  for (const RadialBin& b : *estimate.radial_bins)
    out << format_number(b.center) << ',' << format_number(b.value) << ',' << b.count << '\n';
}

void write_radial_csv(const std::filesystem::path& path, const SpectralEstimate& estimate) {
  auto out = open_out(path);
  write_radial_csv(out, estimate);
  finish(out, path);
}

void write_field_csv(std::ostream& out, const GridSpec& grid, const std::vector<double>& values) {
  if (values.size() != grid.size()) throw GridError("write_field_csv: value count does not match the grid");
  out << coordinate_header(grid.dimension()) << ",value\n";
  for (std::size_t g = 0; g < values.size(); ++g) {
    const Vec p = grid.node(g);
    for (std::size_t j = 0; j < p.size(); ++j) out << format_number(p[j]) << ',';
    out << format_number(values[g]) << '\n';
  }
}

void write_field_csv(const std::filesystem::path& path, const FilteredField& field) {
  auto out = open_out(path);
  write_field_csv(out, field.grid, field.values);
  finish(out, path);
}

void write_intensity_csv(const std::filesystem::path& path, const IntensityGrid& grid) {
  auto out = open_out(path);
  write_field_csv(out, grid.grid, grid.values);
  finish(out, path);
}

unsigned char shade(double value, double low, double high) {
  if (!(high > low)) return 128;
  const double t = std::clamp((value - low) / (high - low), 0.0, 1.0);
  return static_cast<unsigned char>(255 - static_cast<int>(std::lround(255.0 * t)));
}

void write_pgm(std::ostream& out, const GridSpec& grid, const std::vector<double>& values, double low,
               double high) {
  if (grid.dimension() != 2) throw DimensionError("write_pgm: images require a 2-d grid");
  if (values.size() != grid.size()) throw GridError("write_pgm: value count does not match the grid");
  const std::size_t nx = grid.counts[0], ny = grid.counts[1];
  out << "P5\n" << nx << ' ' << ny << "\n255\n";
  std::string row(nx, '\0');
  for (std::size_t r = 0; r < ny; ++r) {
    const std::size_t iy = ny - 1 - r;
    for (std::size_t ix = 0; ix < nx; ++ix) row[ix] = static_cast<char>(shade(values[iy * nx + ix], low, high));
    out.write(row.data(), static_cast<std::streamsize>(nx));
  }
}

void write_pgm(const std::filesystem::path& path, const GridSpec& grid, const std::vector<double>& values,
               double low, double high) {
  auto out = open_out(path);
  write_pgm(out, grid, values, low, high);
  finish(out, path);
}

}  // namespace ppf::io
