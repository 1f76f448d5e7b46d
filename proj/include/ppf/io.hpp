#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "ppf/core.hpp"
#include "ppf/filter.hpp"
#include "ppf/simulate.hpp"
#include "ppf/spectral.hpp"

namespace ppf::io {

/// Pattern CSV: header `x`, `x,y` or `x,y,z`, one point per row. The window is
/// supplied by the caller; points outside it raise DomainError.
PointPattern read_pattern_csv(std::istream& in, const Window& window);
PointPattern read_pattern_csv(const std::filesystem::path& path, const Window& window);
void write_pattern_csv(std::ostream& out, const PointPattern& pattern);
void write_pattern_csv(const std::filesystem::path& path, const PointPattern& pattern);

/// `# lambda_hat=<v>` then `kx,ky[,kz],fhat`; the DC node is omitted.
void write_spectrum_csv(std::ostream& out, const SpectralEstimate& estimate);
void write_spectrum_csv(const std::filesystem::path& path, const SpectralEstimate& estimate);

/// `# lambda_hat=<v>` then `k,fhat_iso,count` with k the bin centre.
/// Throws EstimationError when the estimate has no radial bins.
void write_radial_csv(std::ostream& out, const SpectralEstimate& estimate);
void write_radial_csv(const std::filesystem::path& path, const SpectralEstimate& estimate);

/// `x,y[,z],value`, one row per grid node, axis 0 fastest.
void write_field_csv(std::ostream& out, const GridSpec& grid, const std::vector<double>& values);
void write_field_csv(const std::filesystem::path& path, const FilteredField& field);
void write_intensity_csv(const std::filesystem::path& path, const IntensityGrid& grid);

/// Binary 8-bit graymap of a 2-d grid, top row at the largest y. Values are
/// mapped linearly from [low, high] to shades 255..0, so darker is larger;
/// values outside the range saturate. Throws DimensionError unless d = 2.
void write_pgm(std::ostream& out, const GridSpec& grid, const std::vector<double>& values, double low, double high);
void write_pgm(const std::filesystem::path& path, const GridSpec& grid, const std::vector<double>& values,
               double low, double high);

/// Shade that write_pgm assigns to a value.
unsigned char shade(double value, double low, double high);

}  // namespace ppf::io
