#pragma once

// Points, boxes and finite products of ordinal subspaces.
//
// A plain ordinal subspace is the one-factor product, so every basis in the
// library is stated over a ProductSpace and every point is a tuple.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "gospace/ordinal.hpp"
#include "gospace/ordinal_space.hpp"
#include "gospace/piecewise_set.hpp"

namespace gospace {

struct Point {
  std::vector<Ordinal> coords;

  Point() = default;
  explicit Point(std::vector<Ordinal> c) : coords(std::move(c)) {}
  Point(std::initializer_list<Ordinal> c) : coords(c) {}
  static Point of(const Ordinal& x) { return Point({x}); }

  std::size_t dimension() const noexcept { return coords.size(); }
  const Ordinal& operator[](std::size_t i) const { return coords[i]; }

  friend std::strong_ordering operator<=>(const Point& a, const Point& b) noexcept {
    const std::size_t n = std::min(a.coords.size(), b.coords.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (auto c = a.coords[i] <=> b.coords[i]; c != 0) return c;
    }
    return a.coords.size() <=> b.coords.size();
  }
  friend bool operator==(const Point& a, const Point& b) noexcept { return a.coords == b.coords; }
};

/// "w" for one coordinate, "(0, w)" for tuples.
std::string format_point(const Point& p);
/// Accepts a bare ordinal or a parenthesized comma-separated tuple.
Point parse_point(std::string_view text);
std::ostream& operator<<(std::ostream& os, const Point& p);

/// A product of one PiecewiseSet per coordinate.
struct Box {
  std::vector<PiecewiseSet> sides;

  Box() = default;
  explicit Box(std::vector<PiecewiseSet> s) : sides(std::move(s)) {}

  std::size_t dimension() const noexcept { return sides.size(); }
  bool empty() const noexcept;
  bool contains(const Point& p) const noexcept;
  /// Membership in the closure: every coordinate lies in the closure of its side.
  bool closure_contains(const Point& p) const noexcept;
  Box intersect(const Box& other) const;
  bool is_subset_of(const Box& other) const;

  friend bool operator==(const Box&, const Box&) = default;
};

/// Sides joined with " x ".
std::string format_box(const Box& b);

class ProductSpace {
 public:
  ProductSpace() = default;
  explicit ProductSpace(std::vector<OrdinalSubspace> factors);
  /// The one-factor product.
  ProductSpace(const OrdinalSubspace& x) : factors_{x} {}  // NOLINT(google-explicit-constructor)

  const std::vector<OrdinalSubspace>& factors() const noexcept { return factors_; }
  std::size_t dimension() const noexcept { return factors_.size(); }
  bool contains(const Point& p) const noexcept;
  bool empty() const noexcept;
  Box whole() const;
  /// Product of the carriers' cardinalities, when every carrier is finite.
  std::optional<std::uint64_t> finite_size() const;
  /// All points in lexicographic order; throws Errc::TooLarge above `limit`.
  std::vector<Point> points(std::uint64_t limit = 4096) const;

  friend bool operator==(const ProductSpace&, const ProductSpace&) = default;

 private:
  std::vector<OrdinalSubspace> factors_;
};

std::string format_product_space(const ProductSpace& s);

/// Sample of a product: the grid of per-factor samples, shuffled with the
/// seed when it exceeds the budget, then sorted. A one-factor space samples
/// exactly like `sample`.
std::vector<Point> sample_points(const ProductSpace& s, std::size_t budget, std::size_t depth, std::uint64_t seed = 0);

}  // namespace gospace
