#include "ppf/grid.hpp"

#include "ppf/errors.hpp"

namespace ppf {

std::size_t GridSpec::size() const noexcept {
  std::size_t n = 1;
  for (std::size_t j = 0; j < dimension(); ++j) n *= counts[j];
  return n;
}

std::array<std::size_t, kMaxDim> GridSpec::index_of(std::size_t flat) const noexcept {
  std::array<std::size_t, kMaxDim> idx{};
  for (std::size_t j = 0; j < dimension(); ++j) {
    idx[j] = flat % counts[j];
    flat /= counts[j];
  }
  return idx;
}

Vec GridSpec::node(std::size_t index) const {
  const auto idx = index_of(index);
  Vec p(dimension());
  for (std::size_t j = 0; j < dimension(); ++j) p[j] = origin[j] + static_cast<double>(idx[j]) * spacing[j];
  return p;
}

GridSpec GridSpec::covering(const Window& window, std::size_t nodes_per_axis) {
  if (nodes_per_axis == 0) throw GridError("GridSpec: nodes_per_axis must be positive");
  const std::size_t d = window.dimension();
  GridSpec g;
  g.origin = Vec(d);
  g.spacing = Vec(d);
  for (std::size_t j = 0; j < d; ++j) {
    g.spacing[j] = window.side(j) / static_cast<double>(nodes_per_axis);
    g.origin[j] = window.lower()[j] + 0.5 * g.spacing[j];
    g.counts[j] = nodes_per_axis;
  }
  return g;
}

}  // namespace ppf
