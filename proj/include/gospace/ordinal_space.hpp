#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gospace/ordinal.hpp"
#include "gospace/piecewise_set.hpp"

namespace gospace {

/// A subspace X of the ordinal segment [0, bound], with the order topology.
class OrdinalSubspace {
 public:
  OrdinalSubspace() = default;
  /// Bound defaults to sup(carrier). Throws Errc::InvalidArgument if the
  /// carrier leaves [0, bound].
  explicit OrdinalSubspace(PiecewiseSet carrier);
  OrdinalSubspace(Ordinal bound, PiecewiseSet carrier);

  const Ordinal& bound() const noexcept { return bound_; }
  const PiecewiseSet& carrier() const noexcept { return carrier_; }
  bool empty() const noexcept { return carrier_.empty(); }
  bool contains(const Ordinal& x) const noexcept { return carrier_.contains(x); }

  friend bool operator==(const OrdinalSubspace&, const OrdinalSubspace&) = default;

 private:
  Ordinal bound_;
  PiecewiseSet carrier_;
};

/// Parses the set DSL into a subspace bounded by its supremum.
OrdinalSubspace parse_space(std::string_view text);
std::string format_space(const OrdinalSubspace& x);

/// x in S, with isolation decided inside S itself. Throws Errc::NotAMember.
bool is_isolated_in(const PiecewiseSet& s, const Ordinal& x);

bool is_isolated(const OrdinalSubspace& x_space, const Ordinal& x);
/// Finite(1) at isolated points, AlephNought elsewhere (countable ambient).
CardinalValue character_at(const OrdinalSubspace& x_space, const Ordinal& x);
bool is_discrete(const OrdinalSubspace& x_space);
/// |X| for discrete X (AlephNought when infinite), otherwise the least
/// character at a non-isolated point. Throws Errc::EmptySpace.
CardinalValue p_number(const OrdinalSubspace& x_space);

/// X n (lo, hi].
PiecewiseSet trace_interval(const OrdinalSubspace& x_space, const LowerEnd& lo, const Ordinal& hi);

/// B is open and closed relative to X (B must be a subset of X).
bool is_clopen_in(const PiecewiseSet& block, const PiecewiseSet& space);

/// Deterministic test points of X, at most `budget` of them, increasing.
///
/// Points are gathered in a fixed priority order until the budget is spent:
///   1. endpoints: every attained interval top and limit extra point, then
///      the least member of every interval;
///   2. descents: for each limit member (and each limit the set approaches
///      without containing), the first member at or above its fundamental
///      sequence terms 1..3, breadth first, `depth` levels deep;
///   3. offsets: successive rounds adding p + k for already gathered p, where
///      k is the round number (seed 0) or a seeded draw from [1, 4 * round].
/// Throws Errc::EmptySpace.
std::vector<Ordinal> sample(const OrdinalSubspace& x_space, std::size_t budget, std::size_t depth,
                            std::uint64_t seed = 0);

}  // namespace gospace
