#include "ppf/filter.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "ppf/diagnostics.hpp"
#include "ppf/errors.hpp"
#include "ppf/format.hpp"
#include "ppf/parallel.hpp"

namespace ppf {
namespace {

constexpr double kPi = std::numbers::pi;

struct IndexRange {
  std::size_t lo = 0;
  std::size_t hi = 0;  // inclusive
};

}  // namespace

FilteredField apply_filter(const PointPattern& pattern, const WavenumberRegion& region, const GridSpec& grid,
                           bool remove_mean, double edge_mass_fraction) {
  const std::size_t d = pattern.dimension();
  if (region.dimension() != d || grid.dimension() != d)
    throw DimensionError("apply_filter: pattern, region and grid dimensions differ");
  const Window& w = pattern.window();
  for (std::size_t j = 0; j < d; ++j) {
    if (grid.counts[j] == 0 || !(grid.spacing[j] > 0.0)) throw GridError("apply_filter: degenerate grid");
    const double first = grid.origin[j];
    const double last = grid.origin[j] + static_cast<double>(grid.counts[j] - 1) * grid.spacing[j];
    if (first < w.lower()[j] || last > w.upper()[j])
      throw GridError("apply_filter: grid nodes on axis " + std::to_string(j) + " leave the pattern window");
  }

  FilteredField field{grid, std::vector<double>(grid.size(), 0.0), region, false, 0.0, 0.0, false};
  field.edge_margin = edge_margin_for(region, edge_mass_fraction);
  const IntensityEstimate intensity = estimate_intensity(pattern);
  field.intensity_hat = intensity.value;
  if (pattern.empty()) {
    field.empty_pattern = true;
    warn("apply_filter: pattern is empty; the field is identically zero");
    return field;
  }

  const auto& points = pattern.points();
  detail::parallel_for(grid.size(), [&](std::size_t g) {
    const Vec u = grid.node(g);
    double sum = 0.0;
    for (const Vec& x : points) sum += impulse_response(region, u - x);
    field.values[g] = sum;
  });

  if (remove_mean && transfer_indicator(region, Vec(d)) == 1) {
    for (double& v : field.values) v -= intensity.value;
    field.mean_removed = true;
  }
  return field;
}

double edge_margin_for(const WavenumberRegion& region, double mass_fraction) {
  if (!(mass_fraction > 0.0 && mass_fraction < 1.0))
    throw DomainError("edge_margin_for: mass_fraction must lie in (0, 1)");
  const std::size_t d = region.dimension();
  const double k_low = smallest_scale(region);
  const double r_max = 4.0 / k_low;
  const double step_limit = 1.0 / (40.0 * outer_scale(region));
  const std::size_t n = std::max<std::size_t>(4000, static_cast<std::size_t>(std::ceil(r_max / step_limit)));
  const double step = r_max / static_cast<double>(n);

  std::vector<double> cumulative(n + 1, 0.0);
  Vec u(d);
  auto integrand = [&](double rho) {
    u[0] = rho;
    return std::abs(impulse_response(region, u)) * std::pow(rho, static_cast<double>(d - 1));
  };
  double prev = integrand(0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    const double cur = integrand(step * static_cast<double>(i));
    cumulative[i] = cumulative[i - 1] + 0.5 * step * (prev + cur);
    prev = cur;
  }
  const double total = cumulative[n];
  if (!(total > 0.0)) return 0.0;
  for (std::size_t i = 0; i <= n; ++i)
    if (total - cumulative[i] < mass_fraction * total) return step * static_cast<double>(i);
  return r_max;
}

std::vector<std::size_t> interior_nodes(const GridSpec& grid, const Window& window, double margin) {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const Vec p = grid.node(g);
    bool inside = true;
    for (std::size_t j = 0; j < grid.dimension() && inside; ++j)
      inside = p[j] >= window.lower()[j] + margin && p[j] <= window.upper()[j] - margin;
    if (inside) out.push_back(g);
  }
  return out;
}

std::vector<LeakageSample> field_spectrum_check(const FilteredField& field, const PointPattern& pattern,
                                                const WavenumberRegion& region, std::span<const Vec> k_list,
                                                double interior_margin) {
  const GridSpec& grid = field.grid;
  const std::size_t d = grid.dimension();
  if (region.dimension() != d || pattern.dimension() != d)
    throw DimensionError("field_spectrum_check: dimension mismatch");
  if (!(interior_margin >= 0.0)) throw DomainError("field_spectrum_check: interior_margin must be >= 0");
  const Window& w = pattern.window();

  IndexRange range[kMaxDim];
  Vec extent(d);
  for (std::size_t j = 0; j < d; ++j) {
    const double lo = w.lower()[j] + interior_margin;
    const double hi = w.upper()[j] - interior_margin;
    const double a = std::ceil((lo - grid.origin[j]) / grid.spacing[j] - 1e-9);
    const double b = std::floor((hi - grid.origin[j]) / grid.spacing[j] + 1e-9);
    const double top = static_cast<double>(grid.counts[j] - 1);
    const double a_c = std::max(0.0, a), b_c = std::min(top, b);
    if (!(b_c > a_c)) throw GridError("field_spectrum_check: interior holds fewer than two nodes per axis");
    range[j] = {static_cast<std::size_t>(a_c), static_cast<std::size_t>(b_c)};
    extent[j] = (b_c - a_c) * grid.spacing[j];
  }

  for (const Vec& k : k_list) {
    if (k.size() != d) throw DimensionError("field_spectrum_check: wavenumber dimension mismatch");
    const int inside = transfer_indicator(region, k);
    for (std::size_t j = 0; j < d; ++j) {
      for (double sign : {-1.0, 1.0}) {
        Vec probe = k;
        probe[j] += sign / extent[j];
        if (transfer_indicator(region, probe) != inside)
          throw DomainError("field_spectrum_check: wavenumber lies within one grid spacing of the band boundary");
      }
    }
  }

  auto integral = [&](const Vec& k) {
    std::vector<std::complex<double>> phase[kMaxDim];
    std::vector<double> weight[kMaxDim];
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t i = range[j].lo; i <= range[j].hi; ++i) {
        const double x = grid.origin[j] + static_cast<double>(i) * grid.spacing[j];
        phase[j].push_back(std::polar(1.0, -2.0 * kPi * k[j] * x));
        const bool end = i == range[j].lo || i == range[j].hi;
        weight[j].push_back((end ? 0.5 : 1.0) * grid.spacing[j]);
      }
    }
    std::complex<double> sum = 0.0;
    std::size_t idx[kMaxDim] = {0, 0, 0};
    std::size_t count = 1;
    for (std::size_t j = 0; j < d; ++j) count *= range[j].hi - range[j].lo + 1;
    for (std::size_t c = 0; c < count; ++c) {
      std::size_t rest = c, flat = 0, stride = 1;
      std::complex<double> p = 1.0;
      for (std::size_t j = 0; j < d; ++j) {
        const std::size_t n = range[j].hi - range[j].lo + 1;
        idx[j] = rest % n;
        rest /= n;
        flat += (range[j].lo + idx[j]) * stride;
        stride *= grid.counts[j];
        p *= phase[j][idx[j]] * weight[j][idx[j]];
      }
      sum += field.values[flat] * p;
    }
    return std::abs(sum);
  };

  const double reference = integral(representative_point(region));
  if (!(reference > 0.0)) throw EstimationError("field_spectrum_check: pass-band response is zero");
  std::vector<LeakageSample> out;
  out.reserve(k_list.size());
  for (const Vec& k : k_list) out.push_back({k, integral(k) / reference});
  return out;
}

}  // namespace ppf
