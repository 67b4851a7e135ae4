#include "gospace/ordinal_synth.hpp"

#include <algorithm>
#include <sstream>

#include "gospace/error.hpp"

namespace gospace {

std::string_view node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Leaf: return "Leaf";
    case NodeKind::Finite: return "Finite";
    case NodeKind::FreeSum: return "FreeSum";
    case NodeKind::TopPoint: return "TopPoint";
    case NodeKind::TailPeel: return "TailPeel";
  }
  return "?";
}

namespace {

/// A finite set as ascending runs start, start + 1, ..., start + (count - 1).
struct Run {
  Ordinal start;
  std::uint64_t count;
};

std::vector<Run> runs_of(const PiecewiseSet& b) {
  std::vector<Run> runs;
  for (const auto& iv : b.intervals()) {
    const Ordinal first = iv.least();
    runs.push_back({first, iv.hi.finite_part() - first.finite_part() + 1});
  }
  for (const auto& p : b.plus_points()) runs.push_back({p, 1});
  std::sort(runs.begin(), runs.end(), [](const Run& a, const Run& b) { return a.start < b.start; });
  return runs;
}

/// Members of the finite set b below p.
std::uint64_t count_below(const PiecewiseSet& b, const Ordinal& p) {
  std::uint64_t n = 0;
  for (const auto& r : runs_of(b)) {
    if (!(r.start < p)) break;
    if (r.start.without_finite_part() == p.without_finite_part()) {
      n += std::min(r.count, p.finite_part() - r.start.finite_part());
    } else {
      n += r.count;
    }
  }
  return n;
}

Ordinal nth_member(const PiecewiseSet& b, std::uint64_t k) {
  for (const auto& r : runs_of(b)) {
    if (k < r.count) return r.start + Ordinal::natural(k);
    k -= r.count;
  }
  throw Error(Errc::InvalidArgument, "member index out of range");
}

}  // namespace

std::optional<std::uint64_t> DecompositionNode::child_count() const {
  switch (kind) {
    case NodeKind::Leaf: return 0;
    case NodeKind::Finite: return size;
    case NodeKind::FreeSum: return std::nullopt;
    case NodeKind::TopPoint:
    case NodeKind::TailPeel: return 2;
  }
  return 0;
}

Ordinal DecompositionNode::cut_after(std::uint64_t k) const {
  if (kind != NodeKind::FreeSum) throw Error(Errc::InvalidArgument, "cut_after needs a FreeSum node");
  return fundamental_sequence(*top, first_index + k);
}

PiecewiseSet DecompositionNode::child(std::uint64_t k) const {
  if (auto n = child_count(); n && k >= *n) {
    throw Error(Errc::InvalidArgument, "child " + std::to_string(k) + " of a " +
                                           std::string(node_kind_name(kind)) + " node");
  }
  switch (kind) {
    case NodeKind::Leaf: break;
    case NodeKind::Finite: return PiecewiseSet::point(nth_member(block, k));
    case NodeKind::FreeSum:
      if (k == 0) return block.clip(std::nullopt, cut_after(0));
      return block.clip(cut_after(k - 1), cut_after(k));
    case NodeKind::TopPoint: return k == 0 ? block.subtract(PiecewiseSet::point(*top)) : PiecewiseSet::point(*top);
    case NodeKind::TailPeel: return k == 0 ? block.clip(std::nullopt, *cut) : block.clip(*cut, *top);
  }
  throw Error(Errc::InvalidArgument, "a leaf has no children");
}

std::uint64_t DecompositionNode::child_of(const Ordinal& p) const {
  if (!block.contains(p)) throw Error(Errc::NotAMember, format_ordinal(p) + " is not in " + format_set(block));
  switch (kind) {
    case NodeKind::Leaf: break;
    case NodeKind::Finite: return count_below(block, p);
    case NodeKind::FreeSum: {
      const std::uint64_t n = fundamental_index_at_least(*top, p);
      return n <= first_index ? 0 : n - first_index;
    }
    case NodeKind::TopPoint: return p == *top ? 1 : 0;
    case NodeKind::TailPeel: return p <= *cut ? 0 : 1;
  }
  throw Error(Errc::InvalidArgument, "a leaf has no children");
}

DecompositionNode analyze(const PiecewiseSet& block) {
  if (block.empty()) throw Error(Errc::EmptySpace, "cannot decompose the empty set");
  DecompositionNode n;
  n.block = block;
  if (block.is_finite()) {
    n.size = *block.finite_size();
    n.kind = n.size == 1 ? NodeKind::Leaf : NodeKind::Finite;
    return n;
  }
  const auto mx = block.max();
  if (!mx) {
    // the topmost interval runs up to the missing supremum
    n.kind = NodeKind::FreeSum;
    n.top = *block.sup();
    const LowerEnd& lo = block.intervals().back().lo;
    n.first_index = lo ? fundamental_index_at_least(*n.top, lo->successor()) : 1;
    n.cut = fundamental_sequence(*n.top, n.first_index);
    return n;
  }
  n.top = *mx;
  if (block.accumulates_at(*mx)) {
    n.kind = NodeKind::TailPeel;
    n.cut = fundamental_sequence(*mx, fundamental_index_at_least(*mx, *block.min()));
  } else {
    n.kind = NodeKind::TopPoint;
  }
  return n;
}

// ---------------------------------------------------------------------------
// Conditions

ConditionReport character_homogeneity(const std::vector<Ordinal>& points,
                                      const std::function<CardinalValue(const Ordinal&)>& character) {
  ConditionReport r;
  r.justification = "ambient ordinal countable";
  if (points.empty()) return r;
  const CardinalValue first = character(points.front());
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (!(character(points[i]) == first)) {
      r.char_homogeneous = false;
      r.witness = std::make_pair(points.front(), points[i]);
      break;
    }
  }
  return r;
}

ConditionReport check_conditions(const OrdinalSubspace& x) {
  if (x.empty()) throw Error(Errc::EmptySpace, "conditions on the empty space");
  std::vector<Ordinal> non_isolated;
  const auto& c = x.carrier();
  if (auto l = PiecewiseSet(c.intervals(), {}, c.minus_points()).first_limit()) non_isolated.push_back(*l);
  for (const auto& p : sample(x, 64, 3)) {
    if (!is_isolated(x, p) && std::find(non_isolated.begin(), non_isolated.end(), p) == non_isolated.end()) {
      non_isolated.push_back(p);
    }
  }
  return character_homogeneity(non_isolated, [&x](const Ordinal& p) { return character_at(x, p); });
}

// ---------------------------------------------------------------------------
// Lazy covers

namespace {

class SynthesizedCovers final : public CoverSource {
 public:
  explicit SynthesizedCovers(PiecewiseSet root) : root_(std::move(root)) {}

  std::size_t dimension() const override { return 1; }
  std::optional<std::size_t> stage_count() const override { return std::nullopt; }
  bool monotone() const override { return true; }

  Located locate(std::size_t stage, const Point& p) const override {
    const Ordinal& x = coordinate(p);
    Located out{{stage, BlockIndex::single(0)}, Box({root_})};
    if (stage == 0) return out;
    out.id.index.path.clear();
    PiecewiseSet block = root_;
    DecompositionNode node = analyze(block);
    for (std::size_t level = 1; level <= stage; ++level) {
      if (node.kind == NodeKind::Leaf) {
        out.id.index.path.resize(stage, 0);
        break;
      }
      const std::uint64_t k = node.child_of(x);
      out.id.index.path.push_back(k);
      block = node.child(k);
      if (level < stage) node = analyze(block);
    }
    out.block = Box({std::move(block)});
    return out;
  }

  EnumeratedCover enumerate(std::size_t stage, std::size_t limit) const override {
    EnumeratedCover out;
    out.stage = stage;
    if (stage == 0) {
      out.blocks.push_back({{0, BlockIndex::single(0)}, Box({root_})});
      return out;
    }
    std::vector<std::uint64_t> path;
    expand(root_, path, stage, stage, limit, out);
    return out;
  }

  std::optional<std::size_t> first_separation(const Point& x, const Point& y, std::size_t cap) const override {
    const Ordinal& a = coordinate(x);
    const Ordinal& b = coordinate(y);
    if (a == b) return std::nullopt;
    DecompositionNode node = analyze(root_);
    for (std::size_t level = 1; level <= cap; ++level) {
      if (node.kind == NodeKind::Leaf) return std::nullopt;
      const std::uint64_t ka = node.child_of(a);
      if (ka != node.child_of(b)) return level;
      node = analyze(node.child(ka));
    }
    return std::nullopt;
  }

  RefinementTag refinement_tag(std::size_t alpha, const Point& p) const override {
    RefinementTag tag;
    if (alpha > 0) tag.parts.push_back(locate(alpha - 1, p).id.index);
    return tag;
  }

  Box refinement_block(std::size_t alpha, const Point& p) const override {
    if (alpha == 0) return Box({root_});
    return locate(alpha - 1, p).block;
  }

 private:
  const Ordinal& coordinate(const Point& p) const {
    if (p.dimension() != 1 || !root_.contains(p[0])) {
      throw Error(Errc::NotCovered, format_point(p) + " is not in " + format_set(root_));
    }
    return p[0];
  }

  void expand(const PiecewiseSet& block, std::vector<std::uint64_t>& path, std::size_t left, std::size_t stage,
              std::size_t limit, EnumeratedCover& out) const {
    if (out.blocks.size() >= limit) {
      out.complete = false;
      return;
    }
    const DecompositionNode node = left == 0 ? DecompositionNode{} : analyze(block);
    if (left == 0 || node.kind == NodeKind::Leaf) {
      BlockIndex idx(path);
      idx.path.resize(stage, 0);
      out.blocks.push_back({{stage, std::move(idx)}, Box({block})});
      return;
    }
    const auto count = node.child_count();
    for (std::uint64_t k = 0; !count || k < *count; ++k) {
      if (out.blocks.size() >= limit) {
        out.complete = false;
        return;
      }
      path.push_back(k);
      expand(node.child(k), path, left - 1, stage, limit, out);
      path.pop_back();
    }
  }

  PiecewiseSet root_;
};

}  // namespace

StratifiedBasis synthesize_basis(const OrdinalSubspace& x) {
  if (x.empty()) throw Error(Errc::EmptySpace, "cannot synthesize a basis for the empty space");
  return StratifiedBasis(ProductSpace(x), std::make_shared<SynthesizedCovers>(x.carrier()), BasisMode::Lazy);
}

// ---------------------------------------------------------------------------
// Dump

namespace {

constexpr std::uint64_t kDumpChildren = 3;

void dump_node(const PiecewiseSet& block, std::size_t level, std::optional<std::uint64_t> index, std::size_t depth,
               std::ostringstream& os) {
  const DecompositionNode n = analyze(block);
  const std::string indent(2 * level, ' ');
  os << indent;
  if (index) os << "#" << *index << " ";
  os << node_kind_name(n.kind) << " " << format_set(n.block);
  switch (n.kind) {
    case NodeKind::Leaf: break;
    case NodeKind::Finite: os << " size " << n.size; break;
    case NodeKind::FreeSum:
      os << " sup " << format_ordinal(*n.top) << " cuts ";
      for (std::uint64_t k = 0; k < kDumpChildren; ++k) os << format_ordinal(n.cut_after(k)) << ", ";
      os << "...";
      break;
    case NodeKind::TopPoint: os << " max " << format_ordinal(*n.top); break;
    case NodeKind::TailPeel: os << " max " << format_ordinal(*n.top) << " cut " << format_ordinal(*n.cut); break;
  }
  os << "\n";
  if (level + 1 >= depth || n.kind == NodeKind::Leaf) return;
  const auto count = n.child_count();
  const std::uint64_t shown = count ? std::min(*count, kDumpChildren) : kDumpChildren;
  for (std::uint64_t k = 0; k < shown; ++k) dump_node(n.child(k), level + 1, k, depth, os);
  if (!count || *count > shown) {
    os << indent << "  ...";
    if (count) os << " (" << *count - shown << " more)";
    os << "\n";
  }
}

}  // namespace

std::string decomposition_dump(const OrdinalSubspace& x, std::size_t depth) {
  if (x.empty()) throw Error(Errc::EmptySpace, "cannot decompose the empty space");
  if (depth == 0) throw Error(Errc::InvalidArgument, "dump depth must be at least 1");
  std::ostringstream os;
  dump_node(x.carrier(), 0, std::nullopt, depth, os);
  return os.str();
}

}  // namespace gospace
