#pragma once

#include <cstddef>
#include <vector>

#include "ppf/vec.hpp"

namespace ppf {

/// Closed axis-aligned box with lower[j] <= upper[j]; may have zero volume.
/// Used for counting queries.
class Box {
 public:
  Box(Vec lower, Vec upper);

  std::size_t dimension() const noexcept { return lower_.size(); }
  const Vec& lower() const noexcept { return lower_; }
  const Vec& upper() const noexcept { return upper_; }
  double volume() const noexcept;
  bool contains(const Vec& p) const;

 private:
  Vec lower_;
  Vec upper_;
};

/// Axis-aligned hyperrectangle [lower, upper] in position space.
class Window {
 public:
  /// Throws DomainError unless lower[j] < upper[j] on every axis, and
  /// DimensionError when the corners disagree or d is outside {1, 2, 3}.
  Window(Vec lower, Vec upper);

  /// Unit hypercube [0, 1]^d.
  static Window unit(std::size_t dim);

  std::size_t dimension() const noexcept { return lower_.size(); }
  const Vec& lower() const noexcept { return lower_; }
  const Vec& upper() const noexcept { return upper_; }
  double side(std::size_t axis) const noexcept { return upper_[axis] - lower_[axis]; }
  double volume() const noexcept;
  Vec center() const;

  /// Closed containment on every face.
  bool contains(const Vec& p) const;

  /// Window grown by `margin` on every side.
  Window padded(double margin) const;

  Box box() const { return Box(lower_, upper_); }
  operator Box() const { return box(); }

  friend bool operator==(const Window& a, const Window& b) noexcept {
    return a.lower_ == b.lower_ && a.upper_ == b.upper_;
  }

 private:
  Vec lower_;
  Vec upper_;
};

/// Finite set of locations observed in a window.
class PointPattern {
 public:
  /// Throws DomainError if any point lies outside the window and
  /// DimensionError if a point's dimension differs from the window's.
  PointPattern(std::vector<Vec> points, Window window);

  /// Empty pattern on a window.
  explicit PointPattern(Window window);

  std::size_t dimension() const noexcept { return window_.dimension(); }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const std::vector<Vec>& points() const noexcept { return points_; }
  const Window& window() const noexcept { return window_; }

  /// Points falling inside `sub` (closed), as a pattern observed on `sub`.
  PointPattern restricted_to(const Window& sub) const;

 private:
  std::vector<Vec> points_;
  Window window_;
};

/// |X ∩ region| with closed containment. The region need not lie inside the
/// pattern's window.
std::size_t count_in(const PointPattern& pattern, const Box& region);

struct IntensityEstimate {
  double value = 0.0;
  /// Set when the pattern has no points; the estimate is then 0 and must not
  /// be used as a spectral baseline.
  bool empty_pattern = false;
};

/// n / volume(window).
IntensityEstimate estimate_intensity(const PointPattern& pattern);

/// N(region) - intensity * volume(region).
double mean_corrected_count(const PointPattern& pattern, const Box& region, double intensity);

}  // namespace ppf
