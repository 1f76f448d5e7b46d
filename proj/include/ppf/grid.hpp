#pragma once

#include <array>
#include <cstddef>

#include "ppf/core.hpp"
#include "ppf/vec.hpp"

namespace ppf {

/// Regular rectangular lattice of evaluation nodes, axis 0 varying fastest.
struct GridSpec {
  Vec origin;   // first node
  Vec spacing;  // per axis, positive
  std::array<std::size_t, kMaxDim> counts{};

  std::size_t dimension() const noexcept { return origin.size(); }
  std::size_t size() const noexcept;
  Vec node(std::size_t index) const;
  /// Multi-index of a flat node index.
  std::array<std::size_t, kMaxDim> index_of(std::size_t flat) const noexcept;

  /// Cell-centred grid with `nodes_per_axis` nodes on every axis of `window`:
  /// spacing side / n, first node half a cell inside the lower corner.
  static GridSpec covering(const Window& window, std::size_t nodes_per_axis);
};

}  // namespace ppf
