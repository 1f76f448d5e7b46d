#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ppf/core.hpp"
#include "ppf/regions.hpp"
#include "ppf/vec.hpp"

namespace ppf {

/// Centered Fourier lattice of a window: k_j = m_j / side_j with
/// |m_j| <= half_extent[j]. Nodes are stored with axis 0 varying fastest.
struct FourierLattice {
  std::size_t dim = 0;
  std::array<std::size_t, kMaxDim> half_extent{};
  Vec spacing;

  std::size_t axis_nodes(std::size_t axis) const noexcept { return 2 * half_extent[axis] + 1; }
  std::size_t size() const noexcept;
  std::size_t dc_index() const noexcept;
  Vec node(std::size_t index) const;
};

struct RadialBin {
  double inner = 0.0;
  double outer = 0.0;
  double center = 0.0;
  double value = 0.0;     // mean of the periodogram over the bin's nodes
  std::size_t count = 0;  // 0 for an empty bin, which is skipped downstream
};

struct SpectralEstimate {
  FourierLattice lattice;
  std::vector<Vec> wavenumbers;  // one per lattice node
  std::vector<double> values;    // periodogram values, >= 0
  double intensity_hat = 0.0;
  double k_max = 0.0;
  /// Filled by isotropic_reduce: uniform bins of width k_max / n partitioning [0, k_max].
  std::optional<std::vector<RadialBin>> radial_bins;

  std::size_t dimension() const noexcept { return lattice.dim; }
};

struct PeriodogramOptions {
  /// Replace each node by the mean over its 3^d lattice neighbourhood
  /// (excluding the DC node and nodes outside the lattice).
  bool smooth = false;
};

/// Mean-corrected Bartlett periodogram on the window's Fourier lattice,
///   f̂(k) = |B|^{-1} |Σ_x exp(-2πi k·x) - λ̂ ∫_B exp(-2πi k·u) du|^2,
/// for |k_j| <= k_max. The DC node is present in the lattice but is never used
/// downstream.
///
/// Throws EstimationError for an empty pattern and GridError when k_max gives
/// fewer than 8 nodes on some axis.
SpectralEstimate periodogram(const PointPattern& pattern, double k_max, PeriodogramOptions options = {});

/// 3^d box-kernel smoothing of the lattice values; the DC node is excluded.
SpectralEstimate smooth_lattice(const SpectralEstimate& estimate);

/// Radial averaging over n_bins uniform bins on [0, k_max]. Requires d >= 2.
/// Throws BinError when n_bins exceeds the number of distinct nonzero lattice
/// radii within k_max.
SpectralEstimate isotropic_reduce(const SpectralEstimate& estimate, std::size_t n_bins);

/// Pools radially reduced estimates of several patterns on a common bin
/// layout: each bin value becomes λ̄ · mean_i(f̂_i / λ̂_i) with λ̄ the mean of
/// the λ̂_i, so select_band sees the average relative deviation. The lattice
/// and counts are those of the first estimate. Throws BinError when the bin
/// layouts differ and EstimationError when an estimate lacks bins or λ̂ <= 0.
SpectralEstimate pool_radial(std::span<const SpectralEstimate> estimates);

/// Low-pass or band selection against the Poisson baseline f = λ̂.
///
/// Scans the nonempty radial bins outward for the first contiguous run with
/// |f̂_iso / λ̂ - 1| > threshold. A run beginning at the first nonempty bin
/// yields Ball(k*), otherwise Annulus(run inner edge, k*), where k* is the
/// outer edge of the run's last bin. Returns std::nullopt ("no band") when no
/// bin qualifies. Throws EstimationError if radial bins are missing or λ̂ <= 0.
std::optional<WavenumberRegion> select_band(const SpectralEstimate& estimate, double threshold);

}  // namespace ppf
