#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppf/vec.hpp"

namespace ppf {

/// Set of wavenumbers K (cycles per unit length), built as an immutable tree
/// over centered hyperboxes and balls with symmetric-shift, union and
/// difference nodes. Every constructible region is symmetric under k -> -k,
/// so its impulse response is real.
///
/// Copies share the underlying tree.
class WavenumberRegion {
 public:
  enum class Kind { Hyperbox, Ball, SymmetricShift, Union, Difference };

  /// Centered box prod_j [-l_j, l_j]; every half-width must be positive.
  static WavenumberRegion hyperbox(Vec halfwidths);
  /// Centered closed ball of the given radius in dimension `dim`.
  static WavenumberRegion ball(double radius, std::size_t dim);
  /// (K + s) ∪ (K - s). Throws DomainError unless the two copies are disjoint.
  static WavenumberRegion symmetric_shift(const WavenumberRegion& inner, Vec shift);
  static WavenumberRegion union_of(const WavenumberRegion& a, const WavenumberRegion& b);
  static WavenumberRegion difference(const WavenumberRegion& a, const WavenumberRegion& b);

  /// Ball(r_out) \ Ball(r_in), requires 0 < r_in < r_out.
  static WavenumberRegion annulus(double r_in, double r_out, std::size_t dim);
  /// Box(outer) \ Box(inner), requires inner_j < outer_j on every axis.
  static WavenumberRegion cutout_box(Vec outer, Vec inner);

  Kind kind() const noexcept;
  std::size_t dimension() const noexcept;

  /// Lebesgue measure, computed once at construction.
  double measure() const noexcept;

  // Node accessors; calling one that does not match kind() throws std::logic_error.
  const Vec& halfwidths() const;
  double radius() const;
  const Vec& shift() const;
  const WavenumberRegion& inner() const;
  const WavenumberRegion& first() const;
  const WavenumberRegion& second() const;

  struct Node;

 private:
  explicit WavenumberRegion(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;

  friend struct RegionAccess;
};

/// Lebesgue measure of K. Exact for boxes, balls and the algebra over
/// representable intersections; unions or differences whose intersection has
/// no closed form fall back to a midpoint estimate.
double measure(const WavenumberRegion& region);

/// h_K(u) = ∫_K exp(2 pi i k·u) dk in closed form.
///
/// Returns measure(K) for |u| < 1e-10. Throws DimensionError on a dimension
/// mismatch and UnsupportedRegionError for a union or difference whose
/// children intersect in a set with no closed form.
double impulse_response(const WavenumberRegion& region, const Vec& u);

/// Membership of k in K (1 or 0). Boundaries count as inside; a difference
/// is membership(a) and not membership(b).
int transfer_indicator(const WavenumberRegion& region, const Vec& k);

/// Result of intersecting two regions symbolically.
struct Intersection {
  enum class Status { Empty, Region, Unsupported };
  Status status = Status::Empty;
  std::optional<WavenumberRegion> region;
};

/// K1 ∩ K2 when it is expressible in the region algebra.
Intersection intersect(const WavenumberRegion& a, const WavenumberRegion& b);

/// Half-extent per axis of an origin-centered box containing K.
Vec bounding_halfwidths(const WavenumberRegion& region);

/// Smallest positive wavenumber scale appearing in the tree (radii,
/// half-widths and shift lengths).
double smallest_scale(const WavenumberRegion& region);

/// Largest wavenumber magnitude reached by K.
double outer_scale(const WavenumberRegion& region);

/// A point well inside K (centre of boxes and balls, midpoint of the first
/// inside run along the first axis for differences).
Vec representative_point(const WavenumberRegion& region);

/// Parse the region grammar:
///   box:l1[,l2[,l3]]   ball:r   annulus:rin,rout
///   shiftbox:l1,l2@s1,s2   shiftball:r@s1,s2   cutoutbox:L1,L2/l1,l2
/// Throws ParseError on malformed input and DimensionError when the listed
/// components do not match `dim`.
WavenumberRegion parse_region(std::string_view text, std::size_t dim);

/// Inverse of parse_region for the shapes it produces (round-trip exact);
/// other trees get a descriptive nested form that parse_region rejects.
std::string to_string(const WavenumberRegion& region);

}  // namespace ppf
