#pragma once

#include <cstddef>
#include <vector>

#include "ppf/core.hpp"
#include "ppf/grid.hpp"
#include "ppf/rng.hpp"

namespace ppf {

/// Largest expected point count a simulator will attempt.
inline constexpr double kMaxExpectedPoints = 1e8;

/// Homogeneous Poisson process on the window (uniform on the half-open box).
/// Throws SizeError when intensity * volume >= 1e8.
PointPattern simulate_poisson(double intensity, const Window& window, RandomSeed seed);

/// Thomas cluster process: Poisson(parent_intensity) parents on the window
/// grown by `padding`, Poisson(mean_offspring) children per parent displaced
/// by N(0, sigma^2 I). Children outside the window are discarded. Warns when
/// padding < 4 sigma.
PointPattern simulate_thomas(double parent_intensity, double mean_offspring, double sigma, const Window& window,
                             double padding, RandomSeed seed);

enum class CovarianceModel { Exponential, Gaussian };

struct CovarianceSpec {
  CovarianceModel model = CovarianceModel::Gaussian;
  double variance = 1.0;
  double range = 0.08;  // position units

  /// C(r) = variance * exp(-r / range) or variance * exp(-(r / range)^2).
  double operator()(double distance) const;
};

struct GaussianFieldSpec {
  std::size_t grid_resolution = 128;  // nodes per axis, a power of two
  double mean = 0.0;
  CovarianceSpec covariance;
};

/// How the second pattern of a pair uses the Gaussian field G.
enum class FieldCoupling {
  Shared,    // both patterns driven by exp(mean + G)
  Opposite,  // second pattern driven by exp(mean - G)
};

/// Intensity surface on a cell-centred grid over the padded window.
struct IntensityGrid {
  GridSpec grid;
  std::vector<double> values;
  double maximum = 0.0;
  /// Sum of |negative circulant eigenvalues| set to zero, relative to the sum
  /// of all positive ones.
  double clipped_eigenvalue_fraction = 0.0;

  /// Value at the node nearest to p (clamped to the grid).
  double nearest(const Vec& p) const;
};

struct LgcpPair {
  PointPattern first;
  PointPattern second;
  IntensityGrid intensity;         // drives `first`
  IntensityGrid second_intensity;  // equals `intensity` under FieldCoupling::Shared
};

/// Stationary Gaussian field with the given covariance sampled on a
/// cell-centred grid over `domain` by circulant embedding on a torus of twice
/// the grid size. Throws CovarianceError when the embedding has an
/// eigenvalue below -1e-9 times the largest one.
IntensityGrid sample_gaussian_field(const GaussianFieldSpec& spec, const Window& domain, RandomSeed seed);

/// Pair of Cox processes on `window` driven by Λ = exp(mean ± G), G sampled on
/// the window grown by `padding`. Points are drawn by thinning a homogeneous
/// Poisson process at max Λ, evaluating Λ at the nearest grid node. The two
/// patterns are conditionally independent given G.
///
/// Throws DomainError unless grid_resolution is a power of two (>= 2) and the
/// covariance parameters are positive.
LgcpPair simulate_lgcp_pair(const GaussianFieldSpec& spec, const Window& window, double padding, RandomSeed seed,
                            FieldCoupling coupling = FieldCoupling::Shared);

/// Multiset union of two patterns on the same window.
/// Throws WindowMismatchError when the windows differ.
PointPattern superpose(const PointPattern& a, const PointPattern& b);

}  // namespace ppf
