#pragma once

// Brute-force references for the test suites. Nothing here is used by the
// library itself, and the only library routine these call is
// transfer_indicator (membership of a wavenumber in a region).

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ppf/errors.hpp"
#include "ppf/regions.hpp"
#include "ppf/vec.hpp"

namespace ppf::oracle {

class CoverageError : public Error {
 public:
  using Error::Error;
};

class RangeError : public Error {
 public:
  using Error::Error;
};

struct QuadratureSpec {
  /// Midpoint nodes per axis over the bounding box; at least 64.
  std::size_t nodes_per_axis = 512;
  /// Half-extent per axis of the origin-centered box [-H, H] that must contain K.
  Vec box_halfwidths;
  /// Cells straddling the boundary of K are resampled on a
  /// boundary_subdivision^d sub-lattice. 1 gives the plain midpoint rule and
  /// 0 picks 32 for d <= 2 and 6 for d = 3.
  std::size_t boundary_subdivision = 0;
};

/// Midpoint nodes and weights of K for a fixed spec; membership is resolved
/// once, so evaluating many u is cheap.
class QuadratureRule {
 public:
  /// Throws CoverageError if K reaches outside the bounding box (checked by
  /// sampling the box faces), DomainError for a bad spec.
  QuadratureRule(const WavenumberRegion& region, const QuadratureSpec& spec);

  /// Midpoint-rule value of ∫_K cos(2 pi k·u) dk. Throws Error if the
  /// imaginary part of the sum, which vanishes for symmetric K on the
  /// symmetric lattice, exceeds 1e-8.
  double evaluate(const Vec& u) const;

  std::size_t dimension() const noexcept { return dim_; }

 private:
  std::size_t dim_;
  std::size_t n_;
  std::size_t m_;
  Vec half_;
  double cell_ = 1.0;
  std::vector<std::array<std::uint32_t, 3>> whole_;  // interior cells, coarse indices
  std::vector<std::array<std::uint32_t, 3>> parts_;  // boundary sub-points, fine indices
};

/// QuadratureRule(region, spec).evaluate(u).
double quadrature_impulse(const WavenumberRegion& region, const Vec& u, const QuadratureSpec& spec);

/// Truncated ascending series for J_nu(x), nu in {1/2, 1, 3/2}, evaluated in
/// 50-digit arithmetic. Requires 0 <= x <= 30 and terms >= 40.
double bessel_series(double order, double x, int terms = 60);

/// Bartlett spectrum of a planar Thomas process,
/// f(k) = lambda (1 + mu exp(-4 pi^2 sigma^2 |k|^2)), lambda = kappa mu.
///
/// Neyman-Scott: f(k) = lambda + kappa E[N(N-1)] |phi(k)|^2 with Poisson(mu)
/// offspring counts (E[N(N-1)] = mu^2) and the Gaussian displacement
/// characteristic function phi(k) = exp(-2 pi^2 sigma^2 |k|^2).
double thomas_spectrum(double parent_intensity, double mean_offspring, double sigma, double k_norm);

}  // namespace ppf::oracle
