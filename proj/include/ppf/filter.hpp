#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ppf/core.hpp"
#include "ppf/grid.hpp"
#include "ppf/regions.hpp"
#include "ppf/vec.hpp"

namespace ppf {

struct FilteredField {
  GridSpec grid;
  std::vector<double> values;  // one per grid node, axis 0 fastest
  WavenumberRegion region;
  bool mean_removed = false;
  double edge_margin = 0.0;    // position units
  double intensity_hat = 0.0;
  bool empty_pattern = false;  // the input had no points; values are all zero
};

/// Y_B(g) = Σ_{x ∈ X} h_K(g - x) at every grid node g, by direct summation.
///
/// With remove_mean set and 0 ∈ K, the constant λ̂ is subtracted from every
/// node (∫ h_K = 1_K(0)). edge_margin is edge_margin_for(region,
/// edge_mass_fraction). Throws GridError if a node lies outside the pattern's
/// window and DimensionError on a dimension mismatch. An empty pattern gives
/// an all-zero field and a warning.
FilteredField apply_filter(const PointPattern& pattern, const WavenumberRegion& region, const GridSpec& grid,
                           bool remove_mean, double edge_mass_fraction = 0.01);

/// Smallest radius R such that ∫_R^{R_max} |h_K(ρ e_1)| ρ^{d-1} dρ is below
/// mass_fraction of the same integral from 0, with R_max = 4 / k_low and k_low
/// = smallest_scale(region). Throws DomainError unless 0 < mass_fraction < 1.
double edge_margin_for(const WavenumberRegion& region, double mass_fraction);

struct LeakageSample {
  Vec k;
  double leakage = 0.0;
};

/// Trapezoid-rule Fourier integral |∫ Y(u) e^{-2πi k·u} du| over the grid
/// nodes at least `interior_margin` inside the window, divided by the same
/// quantity at representative_point(region).
///
/// Throws DomainError when some k lies within one grid wavenumber spacing
/// (1 / interior extent, per axis) of the boundary of K.
std::vector<LeakageSample> field_spectrum_check(const FilteredField& field, const PointPattern& pattern,
                                                const WavenumberRegion& region, std::span<const Vec> k_list,
                                                double interior_margin = 0.0);

/// Grid nodes at least `margin` inside the window on every axis.
std::vector<std::size_t> interior_nodes(const GridSpec& grid, const Window& window, double margin);

}  // namespace ppf
