#include "ppf/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <variant>

#include "ppf/errors.hpp"
#include "ppf/format.hpp"
#include "ppf/special.hpp"

namespace ppf {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOriginTolerance = 1e-10;

struct BoxNode {
  Vec halfwidths;
};
struct BallNode {
  double radius;
};
struct ShiftNode {
  WavenumberRegion inner;
  Vec shift;
};
struct PairNode {
  WavenumberRegion a;
  WavenumberRegion b;
  Intersection overlap;  // a ∩ b, resolved at construction
};
struct UnionNode : PairNode {};
struct DifferenceNode : PairNode {};

}  // namespace

struct WavenumberRegion::Node {
  std::size_t dim;
  double measure;
  std::variant<BoxNode, BallNode, ShiftNode, UnionNode, DifferenceNode> body;
};

struct RegionAccess {
  static const WavenumberRegion::Node& node(const WavenumberRegion& r) noexcept { return *r.node_; }
  static WavenumberRegion make(WavenumberRegion::Node node) {
    return WavenumberRegion(std::make_shared<const WavenumberRegion::Node>(std::move(node)));
  }
};

namespace {

const WavenumberRegion::Node& node_of(const WavenumberRegion& r) { return RegionAccess::node(r); }

// Primitive pieces whose union contains a region; used for conservative
// disjointness and containment tests.
struct Piece {
  bool is_ball;
  Vec center;
  Vec halfwidths;  // boxes
  double radius;   // balls
};

void collect_cover(const WavenumberRegion& r, const Vec& offset, std::vector<Piece>& out) {
  const auto& n = node_of(r);
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, BoxNode>) {
          out.push_back({false, offset, body.halfwidths, 0.0});
        } else if constexpr (std::is_same_v<T, BallNode>) {
          out.push_back({true, offset, Vec(n.dim), body.radius});
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          collect_cover(body.inner, offset + body.shift, out);
          collect_cover(body.inner, offset - body.shift, out);
        } else if constexpr (std::is_same_v<T, UnionNode>) {
          collect_cover(body.a, offset, out);
          collect_cover(body.b, offset, out);
        } else {
          collect_cover(body.a, offset, out);
        }
      },
      n.body);
}

std::vector<Piece> cover(const WavenumberRegion& r, const Vec& offset) {
  std::vector<Piece> out;
  collect_cover(r, offset, out);
  return out;
}

std::vector<Piece> cover(const WavenumberRegion& r) { return cover(r, Vec(r.dimension())); }

double box_distance_squared(const Piece& box, const Vec& p) {
  double d2 = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double excess = std::abs(p[j] - box.center[j]) - box.halfwidths[j];
    if (excess > 0.0) d2 += excess * excess;
  }
  return d2;
}

// True when the interiors of two pieces intersect.
bool interiors_overlap(const Piece& x, const Piece& y) {
  if (!x.is_ball && !y.is_ball) {
    for (std::size_t j = 0; j < x.center.size(); ++j)
      if (std::abs(x.center[j] - y.center[j]) >= x.halfwidths[j] + y.halfwidths[j]) return false;
    return true;
  }
  if (x.is_ball && y.is_ball) {
    const double reach = x.radius + y.radius;
    return norm_squared(x.center - y.center) < reach * reach;
  }
  const Piece& box = x.is_ball ? y : x;
  const Piece& ball = x.is_ball ? x : y;
  return box_distance_squared(box, ball.center) < ball.radius * ball.radius;
}

bool covers_disjoint(const std::vector<Piece>& xs, const std::vector<Piece>& ys) {
  for (const auto& x : xs)
    for (const auto& y : ys)
      if (interiors_overlap(x, y)) return false;
  return true;
}

bool disjoint(const WavenumberRegion& a, const WavenumberRegion& b) {
  return covers_disjoint(cover(a), cover(b));
}

// Provable containment of a piece in a region.
bool piece_inside(const Piece& p, const WavenumberRegion& r, const Vec& offset) {
  const auto& n = node_of(r);
  const std::size_t d = n.dim;
  return std::visit(
      [&](const auto& body) -> bool {
        using T = std::decay_t<decltype(body)>;
        const Vec c = p.center - offset;
        if constexpr (std::is_same_v<T, BoxNode>) {
          for (std::size_t j = 0; j < d; ++j) {
            const double extent = p.is_ball ? p.radius : p.halfwidths[j];
            if (std::abs(c[j]) + extent > body.halfwidths[j]) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, BallNode>) {
          double far;
          if (p.is_ball) {
            far = norm(c) + p.radius;
          } else {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
              const double e = std::abs(c[j]) + p.halfwidths[j];
              s += e * e;
            }
            far = std::sqrt(s);
          }
          return far <= body.radius;
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          return piece_inside(p, body.inner, offset + body.shift) ||
                 piece_inside(p, body.inner, offset - body.shift);
        } else if constexpr (std::is_same_v<T, UnionNode>) {
          return piece_inside(p, body.a, offset) || piece_inside(p, body.b, offset);
        } else {
          return piece_inside(p, body.a, offset) && covers_disjoint({p}, cover(body.b, offset));
        }
      },
      n.body);
}

bool provably_subset(const WavenumberRegion& a, const WavenumberRegion& b) {
  const Vec origin(b.dimension());
  for (const auto& p : cover(a))
    if (!piece_inside(p, b, origin)) return false;
  return true;
}

double ball_volume(double r, std::size_t d) {
  switch (d) {
    case 1: return 2.0 * r;
    case 2: return kPi * r * r;
    default: return 4.0 / 3.0 * kPi * r * r * r;
  }
}

bool contains_point(const WavenumberRegion& r, const Vec& k) {
  const auto& n = node_of(r);
  return std::visit(
      [&](const auto& body) -> bool {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, BoxNode>) {
          for (std::size_t j = 0; j < n.dim; ++j)
            if (std::abs(k[j]) > body.halfwidths[j]) return false;
          return true;
        } else if constexpr (std::is_same_v<T, BallNode>) {
          return norm_squared(k) <= body.radius * body.radius;
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          return contains_point(body.inner, k - body.shift) || contains_point(body.inner, k + body.shift);
        } else if constexpr (std::is_same_v<T, UnionNode>) {
          return contains_point(body.a, k) || contains_point(body.b, k);
        } else {
          return contains_point(body.a, k) && !contains_point(body.b, k);
        }
      },
      n.body);
}

Vec hull_halfwidths(const std::vector<Piece>& pieces, std::size_t d) {
  Vec h(d);
  for (const auto& p : pieces)
    for (std::size_t j = 0; j < d; ++j)
      h[j] = std::max(h[j], std::abs(p.center[j]) + (p.is_ball ? p.radius : p.halfwidths[j]));
  return h;
}

// Midpoint estimate of ℓ(a ∩ b) for pairs without a closed-form intersection.
double overlap_measure_estimate(const WavenumberRegion& a, const WavenumberRegion& b) {
  const std::size_t d = a.dimension();
  const Vec ha = hull_halfwidths(cover(a), d);
  const Vec hb = hull_halfwidths(cover(b), d);
  const std::size_t nodes = d == 1 ? 200000 : d == 2 ? 1024 : 128;
  Vec step(d);
  double cell = 1.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double h = std::min(ha[j], hb[j]);
    step[j] = 2.0 * h / static_cast<double>(nodes);
    cell *= step[j];
  }
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) total *= nodes;
  std::size_t hits = 0;
  Vec k(d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t j = 0; j < d; ++j) {
      const std::size_t i = rest % nodes;
      rest /= nodes;
      k[j] = -0.5 * step[j] * nodes + (static_cast<double>(i) + 0.5) * step[j];
    }
    if (contains_point(a, k) && contains_point(b, k)) ++hits;
  }
  return static_cast<double>(hits) * cell;
}

double overlap_measure(const PairNode& p) {
  switch (p.overlap.status) {
    case Intersection::Status::Empty: return 0.0;
    case Intersection::Status::Region: return p.overlap.region->measure();
    case Intersection::Status::Unsupported: break;
  }
  return overlap_measure_estimate(p.a, p.b);
}

void require_same_dim(const WavenumberRegion& a, const WavenumberRegion& b, const char* what) {
  if (a.dimension() != b.dimension())
    throw DimensionError(std::string(what) + ": operands have different dimensions");
}

Intersection empty_intersection() { return {Intersection::Status::Empty, std::nullopt}; }
Intersection region_intersection(WavenumberRegion r) { return {Intersection::Status::Region, std::move(r)}; }
Intersection unsupported_intersection() { return {Intersection::Status::Unsupported, std::nullopt}; }

const char* kind_name(WavenumberRegion::Kind k) {
  switch (k) {
    case WavenumberRegion::Kind::Hyperbox: return "hyperbox";
    case WavenumberRegion::Kind::Ball: return "ball";
    case WavenumberRegion::Kind::SymmetricShift: return "symmetric shift";
    case WavenumberRegion::Kind::Union: return "union";
    case WavenumberRegion::Kind::Difference: return "difference";
  }
  return "?";
}

template <class T>
const T& body_as(const WavenumberRegion& r, WavenumberRegion::Kind expected) {
  if (const auto* p = std::get_if<T>(&node_of(r).body)) return *p;
  throw std::logic_error(std::string("WavenumberRegion: node is not a ") + kind_name(expected));
}

}  // namespace

WavenumberRegion WavenumberRegion::hyperbox(Vec halfwidths) {
  const std::size_t d = halfwidths.size();
  if (d < 1 || d > kMaxDim) throw DimensionError("hyperbox: dimension must be 1, 2 or 3");
  double m = 1.0;
  for (double l : halfwidths) {
    if (!(l > 0.0) || !std::isfinite(l)) throw DomainError("hyperbox: half-widths must be positive");
    m *= 2.0 * l;
  }
  return RegionAccess::make({d, m, BoxNode{halfwidths}});
}

WavenumberRegion WavenumberRegion::ball(double radius, std::size_t dim) {
  if (dim < 1 || dim > kMaxDim) throw DimensionError("ball: dimension must be 1, 2 or 3");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("ball: radius must be positive");
  return RegionAccess::make({dim, ball_volume(radius, dim), BallNode{radius}});
}

WavenumberRegion WavenumberRegion::symmetric_shift(const WavenumberRegion& inner, Vec shift) {
  if (shift.size() != inner.dimension()) throw DimensionError("symmetric_shift: shift dimension mismatch");
  if (!covers_disjoint(cover(inner, shift), cover(inner, -shift)))
    throw DomainError("symmetric_shift: (K + s) and (K - s) must be disjoint");
  return RegionAccess::make({inner.dimension(), 2.0 * inner.measure(), ShiftNode{inner, shift}});
}

WavenumberRegion WavenumberRegion::union_of(const WavenumberRegion& a, const WavenumberRegion& b) {
  require_same_dim(a, b, "union_of");
  UnionNode body{{a, b, intersect(a, b)}};
  const double m = a.measure() + b.measure() - overlap_measure(body);
  return RegionAccess::make({a.dimension(), std::max(0.0, m), std::move(body)});
}

WavenumberRegion WavenumberRegion::difference(const WavenumberRegion& a, const WavenumberRegion& b) {
  require_same_dim(a, b, "difference");
  DifferenceNode body{{a, b, intersect(a, b)}};
  const double m = a.measure() - overlap_measure(body);
  return RegionAccess::make({a.dimension(), std::max(0.0, m), std::move(body)});
}

WavenumberRegion WavenumberRegion::annulus(double r_in, double r_out, std::size_t dim) {
  if (!(r_in > 0.0) || !(r_in < r_out)) throw DomainError("annulus: requires 0 < r_in < r_out");
  return difference(ball(r_out, dim), ball(r_in, dim));
}

WavenumberRegion WavenumberRegion::cutout_box(Vec outer, Vec inner) {
  if (outer.size() != inner.size()) throw DimensionError("cutout_box: dimension mismatch");
  for (std::size_t j = 0; j < outer.size(); ++j)
    if (!(inner[j] < outer[j])) throw DomainError("cutout_box: inner half-widths must be smaller");
  return difference(hyperbox(outer), hyperbox(inner));
}

WavenumberRegion::Kind WavenumberRegion::kind() const noexcept {
  return static_cast<Kind>(node_->body.index());
}

std::size_t WavenumberRegion::dimension() const noexcept { return node_->dim; }
double WavenumberRegion::measure() const noexcept { return node_->measure; }

const Vec& WavenumberRegion::halfwidths() const { return body_as<BoxNode>(*this, Kind::Hyperbox).halfwidths; }
double WavenumberRegion::radius() const { return body_as<BallNode>(*this, Kind::Ball).radius; }
const Vec& WavenumberRegion::shift() const { return body_as<ShiftNode>(*this, Kind::SymmetricShift).shift; }
const WavenumberRegion& WavenumberRegion::inner() const {
  return body_as<ShiftNode>(*this, Kind::SymmetricShift).inner;
}
const WavenumberRegion& WavenumberRegion::first() const {
  if (const auto* u = std::get_if<UnionNode>(&node_->body)) return u->a;
  return body_as<DifferenceNode>(*this, Kind::Difference).a;
}
const WavenumberRegion& WavenumberRegion::second() const {
  if (const auto* u = std::get_if<UnionNode>(&node_->body)) return u->b;
  return body_as<DifferenceNode>(*this, Kind::Difference).b;
}

double measure(const WavenumberRegion& region) { return region.measure(); }

Intersection intersect(const WavenumberRegion& a, const WavenumberRegion& b) {
  require_same_dim(a, b, "intersect");
  using K = WavenumberRegion::Kind;
  if (disjoint(a, b)) return empty_intersection();
  if (provably_subset(a, b)) return region_intersection(a);
  if (provably_subset(b, a)) return region_intersection(b);

  if (a.kind() == K::Hyperbox && b.kind() == K::Hyperbox) {
    Vec l(a.dimension());
    for (std::size_t j = 0; j < l.size(); ++j) l[j] = std::min(a.halfwidths()[j], b.halfwidths()[j]);
    return region_intersection(WavenumberRegion::hyperbox(l));
  }
  if (a.kind() == K::SymmetricShift && b.kind() == K::SymmetricShift && a.shift() == b.shift()) {
    auto core = intersect(a.inner(), b.inner());
    if (core.status != Intersection::Status::Region) return core;
    return region_intersection(WavenumberRegion::symmetric_shift(*core.region, a.shift()));
  }
  // (x \ y) ∩ c = (x ∩ c) \ y
  auto distribute_difference = [](const WavenumberRegion& diff, const WavenumberRegion& c) {
    auto head = intersect(diff.first(), c);
    if (head.status != Intersection::Status::Region) return head;
    return region_intersection(WavenumberRegion::difference(*head.region, diff.second()));
  };
  if (a.kind() == K::Difference) return distribute_difference(a, b);
  if (b.kind() == K::Difference) return distribute_difference(b, a);
  // (x ∪ y) ∩ c = (x ∩ c) ∪ (y ∩ c)
  auto distribute_union = [](const WavenumberRegion& uni, const WavenumberRegion& c) {
    auto left = intersect(uni.first(), c);
    auto right = intersect(uni.second(), c);
    if (left.status == Intersection::Status::Unsupported || right.status == Intersection::Status::Unsupported)
      return unsupported_intersection();
    if (left.status == Intersection::Status::Empty) return right;
    if (right.status == Intersection::Status::Empty) return left;
    return region_intersection(WavenumberRegion::union_of(*left.region, *right.region));
  };
  if (a.kind() == K::Union) return distribute_union(a, b);
  if (b.kind() == K::Union) return distribute_union(b, a);
  return unsupported_intersection();
}

namespace {

double overlap_response(const PairNode& p, const Vec& u) {
  switch (p.overlap.status) {
    case Intersection::Status::Empty: return 0.0;
    case Intersection::Status::Region: return impulse_response(*p.overlap.region, u);
    case Intersection::Status::Unsupported: break;
  }
  throw UnsupportedRegionError(
      "impulse_response: operands intersect in a set without a closed-form impulse response");
}

double ball_response(double r, std::size_t d, double rho) {
  const double x = 2.0 * kPi * r * rho;
  switch (d) {
    case 1: return std::sqrt(r / rho) * special::bessel_j_half(x);
    case 2: return r / rho * special::bessel_j1(x);
    default: {
      const double q = r / rho;
      return q * std::sqrt(q) * special::bessel_j_three_halves(x);
    }
  }
}

double response(const WavenumberRegion& region, const Vec& u) {
  const auto& n = node_of(region);
  const double rho2 = norm_squared(u);
  if (rho2 < kOriginTolerance * kOriginTolerance) return n.measure;
  return std::visit(
      [&](const auto& body) -> double {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, BoxNode>) {
          double h = 1.0;
          for (std::size_t j = 0; j < n.dim; ++j) {
            const double l = body.halfwidths[j];
            h *= 2.0 * l * special::sinc(2.0 * l * u[j]);
          }
          return h;
        } else if constexpr (std::is_same_v<T, BallNode>) {
          return ball_response(body.radius, n.dim, std::sqrt(rho2));
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          return 2.0 * std::cos(2.0 * kPi * dot(body.shift, u)) * response(body.inner, u);
        } else if constexpr (std::is_same_v<T, UnionNode>) {
          return response(body.a, u) + response(body.b, u) - overlap_response(body, u);
        } else {
          return response(body.a, u) - overlap_response(body, u);
        }
      },
      n.body);
}

}  // namespace

double impulse_response(const WavenumberRegion& region, const Vec& u) {
  if (u.size() != region.dimension()) throw DimensionError("impulse_response: dimension mismatch");
  return response(region, u);
}

int transfer_indicator(const WavenumberRegion& region, const Vec& k) {
  if (k.size() != region.dimension()) throw DimensionError("transfer_indicator: dimension mismatch");
  return contains_point(region, k) ? 1 : 0;
}

Vec bounding_halfwidths(const WavenumberRegion& region) {
  return hull_halfwidths(cover(region), region.dimension());
}

double smallest_scale(const WavenumberRegion& region) {
  const auto& n = node_of(region);
  return std::visit(
      [&](const auto& body) -> double {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, BoxNode>) {
          return *std::min_element(body.halfwidths.begin(), body.halfwidths.end());
        } else if constexpr (std::is_same_v<T, BallNode>) {
          return body.radius;
        } else if constexpr (std::is_same_v<T, ShiftNode>) {
          const double s = norm(body.shift);
          const double inner = smallest_scale(body.inner);
          return s > 0.0 ? std::min(s, inner) : inner;
        } else {
          return std::min(smallest_scale(body.a), smallest_scale(body.b));
        }
      },
      n.body);
}

double outer_scale(const WavenumberRegion& region) {
  double reach = 0.0;
  for (const auto& p : cover(region)) {
    double far;
    if (p.is_ball) {
      far = norm(p.center) + p.radius;
    } else {
      double s = 0.0;
      for (std::size_t j = 0; j < p.center.size(); ++j) {
        const double e = std::abs(p.center[j]) + p.halfwidths[j];
        s += e * e;
      }
      far = std::sqrt(s);
    }
    reach = std::max(reach, far);
  }
  return reach;
}

Vec representative_point(const WavenumberRegion& region) {
  using K = WavenumberRegion::Kind;
  const std::size_t d = region.dimension();
  switch (region.kind()) {
    case K::Hyperbox:
    case K::Ball: return Vec(d);
    case K::SymmetricShift: return region.shift() + representative_point(region.inner());
    case K::Union: return representative_point(region.first());
    case K::Difference: break;
  }
  Vec start = representative_point(region.first());
  if (contains_point(region, start)) return start;
  // Scan outward along each axis for the first run of members.
  const double reach = 2.0 * outer_scale(region);
  const int steps = 40000;
  const double dt = reach / steps;
  for (std::size_t axis = 0; axis < d; ++axis) {
    double run_start = -1.0;
    for (int i = 1; i <= steps; ++i) {
      Vec k = start;
      k[axis] += i * dt;
      const bool in = contains_point(region, k);
      if (in && run_start < 0.0) run_start = i * dt;
      if (!in && run_start >= 0.0) {
        k = start;
        k[axis] += 0.5 * (run_start + (i - 1) * dt);
        return k;
      }
    }
  }
  return start;
}

namespace {

std::string join_numbers(const Vec& v) {
  std::string out;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) out += ',';
    out += format_number(v[j]);
  }
  return out;
}

Vec vec_from(const std::vector<double>& xs, std::size_t dim, std::string_view what) {
  if (xs.size() != dim)
    throw DimensionError(std::string(what) + ": expected " + std::to_string(dim) + " components, got " +
                         std::to_string(xs.size()));
  return Vec(std::span<const double>(xs));
}

double single_number(std::string_view text, std::string_view what) {
  const auto xs = parse_number_list(text);
  if (xs.size() != 1) throw ParseError(std::string(what) + ": expected a single number");
  return xs[0];
}

}  // namespace

WavenumberRegion parse_region(std::string_view text, std::size_t dim) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("region: missing ':' in '" + std::string(text) + "'");
  const std::string_view shape = text.substr(0, colon);
  const std::string_view args = text.substr(colon + 1);
  auto split_at = [&](char sep) {
    const auto pos = args.find(sep);
    if (pos == std::string_view::npos)
      throw ParseError("region: '" + std::string(shape) + "' needs '" + std::string(1, sep) + "'");
    return std::pair{args.substr(0, pos), args.substr(pos + 1)};
  };
  try {
    if (shape == "box") return WavenumberRegion::hyperbox(vec_from(parse_number_list(args), dim, "box"));
    if (shape == "ball") return WavenumberRegion::ball(single_number(args, "ball"), dim);
    if (shape == "annulus") {
      const auto r = parse_number_list(args);
      if (r.size() != 2) throw ParseError("annulus: expected rin,rout");
      return WavenumberRegion::annulus(r[0], r[1], dim);
    }
    if (shape == "shiftbox") {
      auto [l, s] = split_at('@');
      return WavenumberRegion::symmetric_shift(
          WavenumberRegion::hyperbox(vec_from(parse_number_list(l), dim, "shiftbox")),
          vec_from(parse_number_list(s), dim, "shiftbox shift"));
    }
    if (shape == "shiftball") {
      auto [r, s] = split_at('@');
      return WavenumberRegion::symmetric_shift(WavenumberRegion::ball(single_number(r, "shiftball"), dim),
                                               vec_from(parse_number_list(s), dim, "shiftball shift"));
    }
    if (shape == "cutoutbox") {
      auto [outer, inner] = split_at('/');
      return WavenumberRegion::cutout_box(vec_from(parse_number_list(outer), dim, "cutoutbox"),
                                          vec_from(parse_number_list(inner), dim, "cutoutbox inner"));
    }
  } catch (const DomainError& e) {
    throw ParseError(std::string("region '") + std::string(text) + "': " + e.what());
  }
  throw ParseError("region: unknown shape '" + std::string(shape) + "'");
}

std::string to_string(const WavenumberRegion& region) {
  using K = WavenumberRegion::Kind;
  switch (region.kind()) {
    case K::Hyperbox: return "box:" + join_numbers(region.halfwidths());
    case K::Ball: return "ball:" + format_number(region.radius());
    case K::SymmetricShift: {
      const auto& in = region.inner();
      if (in.kind() == K::Hyperbox) return "shiftbox:" + join_numbers(in.halfwidths()) + "@" + join_numbers(region.shift());
      if (in.kind() == K::Ball)
        return "shiftball:" + format_number(in.radius()) + "@" + join_numbers(region.shift());
      return "shift(" + to_string(in) + "@" + join_numbers(region.shift()) + ")";
    }
    case K::Union: return "union(" + to_string(region.first()) + ";" + to_string(region.second()) + ")";
    case K::Difference: {
      const auto& a = region.first();
      const auto& b = region.second();
      if (a.kind() == K::Ball && b.kind() == K::Ball && b.radius() < a.radius())
        return "annulus:" + format_number(b.radius()) + "," + format_number(a.radius());
      if (a.kind() == K::Hyperbox && b.kind() == K::Hyperbox) {
        bool nested = true;
        for (std::size_t j = 0; j < a.dimension(); ++j) nested = nested && b.halfwidths()[j] < a.halfwidths()[j];
        if (nested) return "cutoutbox:" + join_numbers(a.halfwidths()) + "/" + join_numbers(b.halfwidths());
      }
      return "difference(" + to_string(a) + ";" + to_string(b) + ")";
    }
  }
  return "?";
}

}  // namespace ppf
