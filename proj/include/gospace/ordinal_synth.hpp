#pragma once

// Basis synthesis for subspaces of ordinals.
//
// Every block is split by one of five rules, chosen from its shape:
//   Leaf      a single point, never split;
//   Finite    two or more points, split into singletons (ascending);
//   FreeSum   no maximum: cut at s[n], n >= n1, where s is the supremum and
//             n1 the least index whose term is a member of the topmost
//             interval; the children are the traces of (0, s[n1]] and
//             (s[n-1], s[n]], infinitely many;
//   TopPoint  isolated maximum m: children B \ {m} and {m};
//   TailPeel  non-isolated maximum m: cut at g = m[n], n >= 1 least with
//             m[n] >= min B; children B n [0, g] and B n (g, m].
// The stage-d cover is the set of nodes at depth d, with leaves above depth d
// carried down unchanged. A node's index at stage d is its path from the root
// (leaves padded with zeros), so the block order is the order of the least
// elements and the induced order is the ordinal order.
//
// All pieces are traces of intervals of the ambient ordinal, hence clopen.
// Tails at a non-isolated maximum are peeled one cut per stage rather than
// cut all at once.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gospace/strata.hpp"

namespace gospace {

enum class NodeKind { Leaf, Finite, FreeSum, TopPoint, TailPeel };

std::string_view node_kind_name(NodeKind k);

struct DecompositionNode {
  PiecewiseSet block;
  NodeKind kind = NodeKind::Leaf;
  /// FreeSum: the supremum; TopPoint and TailPeel: the maximum.
  std::optional<Ordinal> top;
  /// TailPeel: the cut g; FreeSum: the first cut s[n1].
  std::optional<Ordinal> cut;
  /// FreeSum: n1.
  std::uint64_t first_index = 0;
  /// Finite: member count.
  std::uint64_t size = 1;

  /// nullopt for FreeSum (infinitely many children); 0 for leaves.
  std::optional<std::uint64_t> child_count() const;
  /// The k-th child block. Throws Errc::InvalidArgument out of range.
  PiecewiseSet child(std::uint64_t k) const;
  /// Index of the child containing p. Throws Errc::NotAMember.
  std::uint64_t child_of(const Ordinal& p) const;
  /// FreeSum: the cut after child k.
  Ordinal cut_after(std::uint64_t k) const;
};

/// Classifies a nonempty block. Throws Errc::EmptySpace.
DecompositionNode analyze(const PiecewiseSet& block);

struct ConditionReport {
  bool stationary_free = true;
  std::string justification;
  bool char_homogeneous = true;
  std::optional<std::pair<Ordinal, Ordinal>> witness;  // two non-isolated points of different character
};

/// Character homogeneity of `points` under `character`; the witness is the
/// first pair found with different values.
ConditionReport character_homogeneity(const std::vector<Ordinal>& points,
                                      const std::function<CardinalValue(const Ordinal&)>& character);

/// Throws Errc::EmptySpace.
ConditionReport check_conditions(const OrdinalSubspace& x);

/// Lazily generated basis, chain-refining, stage 0 = {X}. Throws Errc::EmptySpace.
StratifiedBasis synthesize_basis(const OrdinalSubspace& x);

/// Indented rendering of the decomposition tree, `depth` levels (>= 1).
/// Each line is `<indent>[#k ]<Kind> <block>[ <details>]`. At most three
/// children of a FreeSum or Finite node are listed, then a `...` line.
std::string decomposition_dump(const OrdinalSubspace& x, std::size_t depth);

}  // namespace gospace
