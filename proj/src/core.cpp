#include "ppf/core.hpp"

#include <string>

#include "ppf/errors.hpp"

namespace ppf {
namespace {

void require_dimension(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(expected) +
                         ", got " + std::to_string(actual));
  }
}

bool inside_closed(const Vec& lower, const Vec& upper, const Vec& p) {
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (p[j] < lower[j] || p[j] > upper[j]) return false;
  return true;
}

}  // namespace

Box::Box(Vec lower, Vec upper) : lower_(lower), upper_(upper) {
  require_dimension(lower_.size(), upper_.size(), "Box");
  for (std::size_t j = 0; j < lower_.size(); ++j)
    if (!(lower_[j] <= upper_[j])) throw DomainError("Box: lower corner exceeds upper corner");
}

double Box::volume() const noexcept {
  double v = 1.0;
  for (std::size_t j = 0; j < lower_.size(); ++j) v *= upper_[j] - lower_[j];
  return v;
}

bool Box::contains(const Vec& p) const {
  require_dimension(dimension(), p.size(), "Box::contains");
  return inside_closed(lower_, upper_, p);
}

Window::Window(Vec lower, Vec upper) : lower_(lower), upper_(upper) {
  require_dimension(lower_.size(), upper_.size(), "Window");
  if (lower_.size() < 1 || lower_.size() > kMaxDim)
    throw DimensionError("Window: dimension must be 1, 2 or 3");
  for (std::size_t j = 0; j < lower_.size(); ++j)
    if (!(lower_[j] < upper_[j])) throw DomainError("Window: lower[j] must be < upper[j]");
}

Window Window::unit(std::size_t dim) { return Window(Vec::filled(dim, 0.0), Vec::filled(dim, 1.0)); }

double Window::volume() const noexcept {
  double v = 1.0;
  for (std::size_t j = 0; j < lower_.size(); ++j) v *= upper_[j] - lower_[j];
  return v;
}

Vec Window::center() const { return 0.5 * (lower_ + upper_); }

bool Window::contains(const Vec& p) const {
  require_dimension(dimension(), p.size(), "Window::contains");
  return inside_closed(lower_, upper_, p);
}

Window Window::padded(double margin) const {
  if (margin < 0.0) throw DomainError("Window::padded: negative margin");
  return Window(lower_ - Vec::filled(dimension(), margin), upper_ + Vec::filled(dimension(), margin));
}

PointPattern::PointPattern(std::vector<Vec> points, Window window)
    : points_(std::move(points)), window_(std::move(window)) {
  for (const auto& p : points_) {
    require_dimension(window_.dimension(), p.size(), "PointPattern");
    if (!window_.contains(p)) throw DomainError("PointPattern: point lies outside the window");
  }
}

PointPattern::PointPattern(Window window) : window_(std::move(window)) {}

PointPattern PointPattern::restricted_to(const Window& sub) const {
  require_dimension(dimension(), sub.dimension(), "PointPattern::restricted_to");
  std::vector<Vec> kept;
  for (const auto& p : points_)
    if (sub.contains(p)) kept.push_back(p);
  return PointPattern(std::move(kept), sub);
}

std::size_t count_in(const PointPattern& pattern, const Box& region) {
  require_dimension(pattern.dimension(), region.dimension(), "count_in");
  std::size_t n = 0;
  for (const auto& p : pattern.points())
    if (inside_closed(region.lower(), region.upper(), p)) ++n;
  return n;
}

IntensityEstimate estimate_intensity(const PointPattern& pattern) {
  if (pattern.empty()) return {0.0, true};
  return {static_cast<double>(pattern.size()) / pattern.window().volume(), false};
}

double mean_corrected_count(const PointPattern& pattern, const Box& region, double intensity) {
  if (!(intensity > 0.0)) throw DomainError("mean_corrected_count: intensity must be positive");
  return static_cast<double>(count_in(pattern, region)) - intensity * region.volume();
}

}  // namespace ppf
