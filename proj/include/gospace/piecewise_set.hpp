#pragma once

// Finite unions of ordinal intervals (lo, hi], adjusted by finitely many
// added and removed points.
//
// Normalized form (established by every constructor and operation):
//   - intervals sorted, pairwise disjoint and non-touching
//     (next.lo > prev.hi, since (a,b] u (b,c] = (a,c]);
//   - plus_points are limit ordinals outside every interval;
//   - minus_points are limit ordinals inside some interval.
// Zero/successor points never appear as plus/minus points: {p} for a
// successor p is the interval (p-1, p], and removing a successor splits an
// interval. Limits cannot be expressed that way, which is why the point
// lists exist at all.

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "gospace/ordinal.hpp"

namespace gospace {

/// Exclusive lower end; nullopt is "Bottom" (the interval includes 0).
using LowerEnd = std::optional<Ordinal>;

/// Bottom < every ordinal.
std::strong_ordering compare_lower(const LowerEnd& a, const LowerEnd& b) noexcept;

struct OrdinalInterval {
  LowerEnd lo;
  Ordinal hi;

  bool contains(const Ordinal& x) const noexcept { return (!lo || *lo < x) && x <= hi; }
  bool empty() const noexcept { return lo && !(*lo < hi); }
  /// Least member (0 or lo + 1).
  Ordinal least() const { return lo ? lo->successor() : Ordinal::zero(); }

  friend bool operator==(const OrdinalInterval&, const OrdinalInterval&) = default;
};

class PiecewiseSet {
 public:
  PiecewiseSet() = default;
  /// Accepts any raw description; the result is normalized.
  PiecewiseSet(std::vector<OrdinalInterval> intervals, std::vector<Ordinal> plus_points,
               std::vector<Ordinal> minus_points);

  static PiecewiseSet interval(LowerEnd lo, const Ordinal& hi);
  /// [0, hi]
  static PiecewiseSet segment(const Ordinal& hi);
  static PiecewiseSet points(const std::vector<Ordinal>& pts);
  static PiecewiseSet point(const Ordinal& p) { return points({p}); }

  const std::vector<OrdinalInterval>& intervals() const noexcept { return intervals_; }
  const std::vector<Ordinal>& plus_points() const noexcept { return plus_; }
  const std::vector<Ordinal>& minus_points() const noexcept { return minus_; }

  bool contains(const Ordinal& x) const noexcept;
  bool empty() const noexcept { return intervals_.empty() && plus_.empty(); }
  bool is_finite() const noexcept;
  /// Cardinality when finite.
  std::optional<std::uint64_t> finite_size() const;
  /// Members in increasing order; throws Errc::TooLarge when infinite or above `limit`.
  std::vector<Ordinal> elements(std::uint64_t limit = 1u << 20) const;

  std::optional<Ordinal> min() const;
  std::optional<Ordinal> max() const;
  /// Least upper bound of the members (attained or not); nullopt when empty.
  std::optional<Ordinal> sup() const;
  /// Least member >= x.
  std::optional<Ordinal> first_at_or_above(const Ordinal& x) const;
  /// Least limit-ordinal member.
  std::optional<Ordinal> first_limit() const;

  /// x is a limit ordinal and the set meets (g, x) for every g < x.
  bool accumulates_at(const Ordinal& x) const noexcept;
  /// Closure in the ordinal topology: members plus accumulation points.
  bool closure_contains(const Ordinal& x) const noexcept { return contains(x) || accumulates_at(x); }

  PiecewiseSet unite(const PiecewiseSet& other) const;
  PiecewiseSet subtract(const PiecewiseSet& other) const;
  PiecewiseSet intersect(const PiecewiseSet& other) const;
  /// this n (lo, hi]
  PiecewiseSet clip(const LowerEnd& lo, const Ordinal& hi) const;
  bool is_subset_of(const PiecewiseSet& other) const { return subtract(other).empty(); }

  /// Some member of `this` is an accumulation point of `other`; returns the least such.
  std::optional<Ordinal> first_member_accumulated_by(const PiecewiseSet& other) const;

  friend bool operator==(const PiecewiseSet&, const PiecewiseSet&) = default;

 private:
  void normalize();

  std::vector<OrdinalInterval> intervals_;
  std::vector<Ordinal> plus_;
  std::vector<Ordinal> minus_;
};

/// x in S.
inline bool member(const PiecewiseSet& s, const Ordinal& x) { return s.contains(x); }

/// Set DSL:
///   set  := atom (("|" | "\") atom)*      evaluated left to right
///   atom := "(" ord "," ord "]" | "[0," ord "]" | "{" ord ("," ord)* "}" | "{}"
PiecewiseSet parse_set(std::string_view text);
PiecewiseSet parse_set_prefix(std::string_view text, std::size_t& pos);
/// Canonical text that re-parses to the same set.
std::string format_set(const PiecewiseSet& s);

std::ostream& operator<<(std::ostream& os, const PiecewiseSet& s);

}  // namespace gospace
