#include "gospace/ordinal_space.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "gospace/error.hpp"

namespace gospace {

OrdinalSubspace::OrdinalSubspace(PiecewiseSet carrier)
    : bound_(carrier.sup().value_or(Ordinal::zero())), carrier_(std::move(carrier)) {}

OrdinalSubspace::OrdinalSubspace(Ordinal bound, PiecewiseSet carrier)
    : bound_(std::move(bound)), carrier_(std::move(carrier)) {
  if (auto s = carrier_.sup(); s && bound_ < *s) {
    throw Error(Errc::InvalidArgument, "carrier " + format_set(carrier_) + " exceeds bound " + format_ordinal(bound_));
  }
}

OrdinalSubspace parse_space(std::string_view text) { return OrdinalSubspace(parse_set(text)); }

std::string format_space(const OrdinalSubspace& x) { return format_set(x.carrier()); }

bool is_isolated_in(const PiecewiseSet& s, const Ordinal& x) {
  if (!s.contains(x)) throw Error(Errc::NotAMember, format_ordinal(x) + " is not in " + format_set(s));
  return !s.accumulates_at(x);
}

bool is_isolated(const OrdinalSubspace& x_space, const Ordinal& x) { return is_isolated_in(x_space.carrier(), x); }

CardinalValue character_at(const OrdinalSubspace& x_space, const Ordinal& x) {
  return is_isolated(x_space, x) ? CardinalValue::finite(1) : CardinalValue::aleph_nought();
}

bool is_discrete(const OrdinalSubspace& x_space) {
  // a member is non-isolated exactly when it is a limit lying inside an interval
  const auto& c = x_space.carrier();
  return !PiecewiseSet(c.intervals(), {}, c.minus_points()).first_limit();
}

CardinalValue p_number(const OrdinalSubspace& x_space) {
  if (x_space.empty()) throw Error(Errc::EmptySpace, "P-number of the empty space");
  if (is_discrete(x_space)) {
    const auto n = x_space.carrier().finite_size();
    return n ? CardinalValue::finite(*n) : CardinalValue::aleph_nought();
  }
  return CardinalValue::aleph_nought();
}

PiecewiseSet trace_interval(const OrdinalSubspace& x_space, const LowerEnd& lo, const Ordinal& hi) {
  if (lo && !(*lo < hi)) throw Error(Errc::InvalidArgument, "trace_interval needs lo < hi");
  return x_space.carrier().clip(lo, hi);
}

bool is_clopen_in(const PiecewiseSet& block, const PiecewiseSet& space) {
  const PiecewiseSet rest = space.subtract(block);
  // open: no member of the block is approached by the rest; closed: vice versa
  return !block.first_member_accumulated_by(rest) && !rest.first_member_accumulated_by(block);
}

namespace {

constexpr std::uint64_t kDescentFanout = 3;
constexpr std::size_t kOffsetRounds = 64;

class Gatherer {
 public:
  Gatherer(const PiecewiseSet& s, std::size_t budget) : s_(s), budget_(budget) {}

  bool full() const { return order_.size() >= budget_; }

  /// Adds x when it is a new member; reports whether it was added.
  bool add(const Ordinal& x) {
    if (full() || !s_.contains(x) || seen_.count(x)) return false;
    seen_.insert(x);
    order_.push_back(x);
    return true;
  }

  const std::vector<Ordinal>& order() const { return order_; }

 private:
  const PiecewiseSet& s_;
  std::size_t budget_;
  std::set<Ordinal> seen_;
  std::vector<Ordinal> order_;
};

}  // namespace

std::vector<Ordinal> sample(const OrdinalSubspace& x_space, std::size_t budget, std::size_t depth, std::uint64_t seed) {
  const PiecewiseSet& s = x_space.carrier();
  if (s.empty()) throw Error(Errc::EmptySpace, "cannot sample the empty space");
  Gatherer g(s, budget);

  // 1. endpoints: upper ends and plus points, then lower ends
  std::vector<Ordinal> endpoints(s.plus_points());
  for (const auto& iv : s.intervals()) endpoints.push_back(iv.hi);
  std::sort(endpoints.begin(), endpoints.end());
  std::vector<Ordinal> lower;
  for (const auto& iv : s.intervals()) lower.push_back(iv.least());
  endpoints.insert(endpoints.end(), lower.begin(), lower.end());
  for (const auto& e : endpoints) g.add(e);

  // 2. descents from limits approached by the set
  std::vector<Ordinal> frontier;
  {
    std::set<Ordinal> sources;
    for (const auto& p : g.order()) {
      if (p.is_limit()) sources.insert(p);
    }
    for (const auto& m : s.minus_points()) sources.insert(m);
    for (const auto& iv : s.intervals()) {
      if (iv.hi.is_limit()) sources.insert(iv.hi);
    }
    frontier.assign(sources.begin(), sources.end());
  }
  for (std::size_t level = 0; level < depth && !frontier.empty() && !g.full(); ++level) {
    std::vector<Ordinal> next;
    for (const auto& lim : frontier) {
      for (std::uint64_t n = 1; n <= kDescentFanout; ++n) {
        const auto q = s.first_at_or_above(fundamental_sequence(lim, n));
        if (!q || !(*q < lim)) continue;
        if (g.add(*q) && q->is_limit()) next.push_back(*q);
      }
    }
    frontier = std::move(next);
  }

  // 3. offsets
  std::mt19937_64 rng(seed);
  for (std::size_t round = 1; round <= kOffsetRounds && !g.full(); ++round) {
    const std::vector<Ordinal> base = g.order();
    for (const auto& p : base) {
      const std::uint64_t k = seed == 0 ? round : 1 + rng() % (4 * round);
      g.add(p + Ordinal::natural(k));
      if (g.full()) break;
    }
  }

  std::vector<Ordinal> out = g.order();
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gospace
