#include "gospace/strata.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "gospace/error.hpp"

namespace gospace {

std::string format_index(const BlockIndex& i) {
  std::string out;
  for (std::size_t k = 0; k < i.path.size(); ++k) {
    if (k) out += '.';
    out += std::to_string(i.path[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CoverSource defaults

std::optional<std::size_t> CoverSource::first_separation(const Point& x, const Point& y, std::size_t cap) const {
  std::size_t last = cap;
  if (auto n = stage_count()) {
    if (*n == 0) return std::nullopt;
    last = std::min(last, *n - 1);
  }
  for (std::size_t s = 1; s <= last; ++s) {
    if (locate(s, x).id.index != locate(s, y).id.index) return s;
  }
  return std::nullopt;
}

RefinementTag CoverSource::refinement_tag(std::size_t alpha, const Point& p) const {
  RefinementTag tag;
  for (std::size_t s = 0; s < alpha; ++s) tag.parts.push_back(locate(s, p).id.index);
  return tag;
}

Box CoverSource::refinement_block(std::size_t alpha, const Point& p) const {
  Box b = locate(0, p).block;
  for (std::size_t s = 1; s < alpha; ++s) b = b.intersect(locate(s, p).block);
  return b;
}

// ---------------------------------------------------------------------------
// ExplicitCovers

ExplicitCovers::ExplicitCovers(std::vector<std::vector<Box>> stages) : stages_(std::move(stages)) {
  if (stages_.empty() || stages_.front().size() != 1) {
    throw Error(Errc::InvalidBasis, "stage 0 must be the single block {X}");
  }
  const std::size_t n = stages_.front().front().dimension();
  for (const auto& st : stages_) {
    for (const auto& b : st) {
      if (b.dimension() != n) throw Error(Errc::InvalidBasis, "block dimension differs from the space");
    }
  }
}

Located ExplicitCovers::locate(std::size_t stage, const Point& p) const {
  if (stage >= stages_.size()) {
    throw Error(Errc::StageUnavailable, "stage " + std::to_string(stage) + " is not available");
  }
  const auto& st = stages_[stage];
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (st[i].contains(p)) return {{stage, BlockIndex::single(i)}, st[i]};
  }
  throw Error(Errc::NotCovered, format_point(p) + " lies in no block of stage " + std::to_string(stage));
}

EnumeratedCover ExplicitCovers::enumerate(std::size_t stage, std::size_t limit) const {
  if (stage >= stages_.size()) {
    throw Error(Errc::StageUnavailable, "stage " + std::to_string(stage) + " is not available");
  }
  EnumeratedCover out;
  out.stage = stage;
  const auto& st = stages_[stage];
  for (std::size_t i = 0; i < st.size(); ++i) {
    if (out.blocks.size() >= limit) {
      out.complete = false;
      break;
    }
    out.blocks.push_back({{stage, BlockIndex::single(i)}, st[i]});
  }
  return out;
}

// ---------------------------------------------------------------------------
// StratifiedBasis

StratifiedBasis::StratifiedBasis(ProductSpace space, std::shared_ptr<const CoverSource> source, BasisMode mode)
    : space_(std::move(space)), source_(std::move(source)), mode_(mode) {
  if (!source_) throw Error(Errc::InvalidBasis, "missing cover source");
  if (source_->dimension() != space_.dimension()) {
    throw Error(Errc::InvalidBasis, "cover dimension differs from the space");
  }
}

StratifiedBasis StratifiedBasis::explicit_basis(const ProductSpace& space, const std::vector<std::vector<Box>>& stages,
                                                CoverMode mode) {
  const Box whole = space.whole();
  std::vector<std::vector<Box>> all{{whole}};
  for (const auto& st : stages) {
    std::vector<Box> blocks;
    for (const auto& b : st) blocks.push_back(b.intersect(whole));
    if (mode == CoverMode::Permissive && space.dimension() == 1) {
      PiecewiseSet rest = whole.sides[0];
      for (const auto& b : blocks) rest = rest.subtract(b.sides[0]);
      if (!rest.empty()) blocks.push_back(Box({rest}));
    }
    all.push_back(std::move(blocks));
  }
  return StratifiedBasis(space, std::make_shared<ExplicitCovers>(std::move(all)), BasisMode::Explicit);
}

StratifiedBasis StratifiedBasis::explicit_basis(const OrdinalSubspace& space,
                                                const std::vector<std::vector<PiecewiseSet>>& stages,
                                                CoverMode mode) {
  std::vector<std::vector<Box>> boxes;
  for (const auto& st : stages) {
    std::vector<Box> row;
    for (const auto& s : st) row.push_back(Box({s}));
    boxes.push_back(std::move(row));
  }
  return explicit_basis(ProductSpace(space), boxes, mode);
}

std::size_t StratifiedBasis::default_cap() const {
  if (mode_ == BasisMode::Explicit) {
    if (auto n = stage_count()) return *n == 0 ? 0 : *n - 1;
  }
  return kLazyStageCap;
}

void StratifiedBasis::require_member(const Point& p) const {
  if (!space_.contains(p)) {
    throw Error(Errc::NotAMember, format_point(p) + " is not a point of " + format_product_space(space_));
  }
}

Located StratifiedBasis::locate(std::size_t stage, const Point& p) const {
  require_member(p);
  return source_->locate(stage, p);
}

std::optional<std::size_t> StratifiedBasis::first_separation(const Point& x, const Point& y, std::size_t cap) const {
  require_member(x);
  require_member(y);
  return source_->first_separation(x, y, cap);
}

RefinementTag StratifiedBasis::refinement_tag(std::size_t alpha, const Point& p) const {
  require_member(p);
  return source_->refinement_tag(alpha, p);
}

Box StratifiedBasis::refinement_block(std::size_t alpha, const Point& p) const {
  require_member(p);
  if (alpha == 0) return space_.whole();
  return source_->refinement_block(alpha, p);
}

EnumeratedCover StratifiedBasis::enumerate(std::size_t stage, std::size_t limit) const {
  return source_->enumerate(stage, limit);
}

// ---------------------------------------------------------------------------
// Validation

std::string_view violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::Overlap: return "Overlap";
    case ViolationKind::Uncovered: return "Uncovered";
    case ViolationKind::NotClopen: return "NotClopen";
    case ViolationKind::NotDiscrete: return "NotDiscrete";
    case ViolationKind::Inconsistent: return "Inconsistent";
    case ViolationKind::BadStageZero: return "BadStageZero";
  }
  return "?";
}

std::size_t ValidationReport::count(ViolationKind k) const {
  return static_cast<std::size_t>(
      std::count_if(violations.begin(), violations.end(), [k](const Violation& v) { return v.kind == k; }));
}

namespace {

constexpr std::size_t kEnumerationLimit = 512;
constexpr std::size_t kSampleDepth = 3;

Point least_point(const Box& b) {
  Point p;
  for (const auto& s : b.sides) p.coords.push_back(*s.min());
  return p;
}

/// Nonempty box clopen in the product: every side clopen in its factor.
bool box_clopen(const Box& b, const ProductSpace& space) {
  if (b.empty()) return true;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    if (!is_clopen_in(b.sides[i], space.factors()[i].carrier())) return false;
  }
  return true;
}

class Collector {
 public:
  explicit Collector(ValidationReport& r) : r_(r) {}

  void add(ViolationKind kind, std::size_t stage, Point witness, std::vector<BlockIndex> blocks, std::string detail) {
    if (!seen_.insert({static_cast<int>(kind), stage, blocks}).second) return;
    r_.violations.push_back({kind, stage, std::move(witness), std::move(blocks), std::move(detail)});
  }

 private:
  ValidationReport& r_;
  std::set<std::tuple<int, std::size_t, std::vector<BlockIndex>>> seen_;
};

void exact_checks(const EnumeratedCover& cover, const ProductSpace& space, Collector& out) {
  const auto& bl = cover.blocks;
  for (std::size_t i = 0; i < bl.size(); ++i) {
    for (std::size_t j = i + 1; j < bl.size(); ++j) {
      const Box both = bl[i].block.intersect(bl[j].block);
      if (!both.empty()) {
        out.add(ViolationKind::Overlap, cover.stage, least_point(both), {bl[i].id.index, bl[j].id.index},
                "blocks share " + format_box(both));
      }
    }
  }
  for (const auto& b : bl) {
    if (!box_clopen(b.block, space)) {
      out.add(ViolationKind::NotClopen, cover.stage, b.block.empty() ? Point() : least_point(b.block), {b.id.index},
              "block " + format_box(b.block) + " is not clopen");
    }
  }
  if (space.dimension() == 1) {
    PiecewiseSet rest = space.factors()[0].carrier();
    for (const auto& b : bl) rest = rest.subtract(b.block.sides[0]);
    if (!rest.empty()) {
      out.add(ViolationKind::Uncovered, cover.stage, Point::of(*rest.min()), {}, "uncovered " + format_set(rest));
    }
  }
}

void sampled_checks(const StratifiedBasis& basis, std::size_t stage, const EnumeratedCover& cover,
                    const std::vector<Point>& pts, Collector& out) {
  const ProductSpace& space = basis.space();
  std::map<BlockIndex, Box> located;
  for (const auto& p : pts) {
    std::size_t containing = 0;
    std::size_t near = 0;
    std::vector<BlockIndex> hits;
    for (const auto& b : cover.blocks) {
      if (b.block.contains(p)) {
        ++containing;
        hits.push_back(b.id.index);
      }
      if (b.block.closure_contains(p)) ++near;
    }
    if (containing > 1) out.add(ViolationKind::Overlap, stage, p, hits, "point in several blocks");
    if (near > 1) out.add(ViolationKind::NotDiscrete, stage, p, {}, "point in the closure of several blocks");
    if (containing == 0 && cover.complete) out.add(ViolationKind::Uncovered, stage, p, {}, "point in no block");

    try {
      const Located l = basis.locate(stage, p);
      if (!l.block.contains(p)) {
        out.add(ViolationKind::Inconsistent, stage, p, {l.id.index}, "located block misses the point");
        continue;
      }
      if (containing >= 1 && std::find(hits.begin(), hits.end(), l.id.index) == hits.end()) {
        out.add(ViolationKind::Inconsistent, stage, p, {l.id.index}, "located index differs from enumeration");
      }
      if (stage > 0 && basis.monotone()) {
        const Located parent = basis.locate(stage - 1, p);
        if (!l.block.is_subset_of(parent.block)) {
          out.add(ViolationKind::Inconsistent, stage, p, {l.id.index}, "block leaves its stage parent");
        }
      }
      auto [it, fresh] = located.emplace(l.id.index, l.block);
      if (!fresh && !(it->second == l.block)) {
        out.add(ViolationKind::Inconsistent, stage, p, {l.id.index}, "one index names two blocks");
      }
    } catch (const Error& e) {
      if (e.code() != Errc::NotCovered) throw;
      if (!cover.complete) out.add(ViolationKind::Uncovered, stage, p, {}, "point in no block");
    }
  }
  if (cover.complete) return;
  // truncated enumeration: check the blocks actually reached by the sample
  for (auto a = located.begin(); a != located.end(); ++a) {
    if (!box_clopen(a->second, space)) {
      out.add(ViolationKind::NotClopen, stage, least_point(a->second), {a->first},
              "block " + format_box(a->second) + " is not clopen");
    }
    for (auto b = std::next(a); b != located.end(); ++b) {
      const Box both = a->second.intersect(b->second);
      if (!both.empty()) {
        out.add(ViolationKind::Overlap, stage, least_point(both), {a->first, b->first},
                "blocks share " + format_box(both));
      }
    }
  }
}

}  // namespace

ValidationReport validate(const StratifiedBasis& basis, std::size_t sample_budget, std::size_t max_stage,
                          std::uint64_t seed) {
  ValidationReport report;
  Collector out(report);
  const ProductSpace& space = basis.space();
  if (space.empty()) return report;

  std::size_t last = max_stage;
  if (basis.mode() == BasisMode::Explicit) {
    last = basis.default_cap();
  } else if (auto n = basis.stage_count()) {
    last = std::min(last, *n == 0 ? 0 : *n - 1);
  }

  const std::vector<Point> pts = sample_points(space, std::max<std::size_t>(sample_budget, 1), kSampleDepth, seed);
  report.points_checked = pts.size();

  const EnumeratedCover zero = basis.enumerate(0, 2);
  if (zero.blocks.size() != 1 || !zero.complete || !(zero.blocks[0].block == space.whole())) {
    out.add(ViolationKind::BadStageZero, 0, Point(), {}, "stage 0 is not {X}");
  }

  for (std::size_t s = 0; s <= last; ++s) {
    const EnumeratedCover cover = basis.enumerate(s, kEnumerationLimit);
    if (cover.complete) exact_checks(cover, space, out);
    sampled_checks(basis, s, cover, pts, out);
    ++report.stages_checked;
  }
  return report;
}

std::string format_validation(const ValidationReport& r, bool line_format) {
  std::ostringstream os;
  auto blocks_text = [](const std::vector<BlockIndex>& b) {
    std::string t;
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) t += ',';
      t += format_index(b[i]);
    }
    return t.empty() ? std::string("-") : t;
  };
  if (line_format) {
    os << "stages\t" << r.stages_checked << "\n";
    os << "points\t" << r.points_checked << "\n";
    os << "violations\t" << r.violations.size() << "\n";
    for (const auto& v : r.violations) {
      os << "violation\t" << violation_name(v.kind) << "\t" << v.stage << "\t" << blocks_text(v.blocks) << "\t"
         << (v.witness.dimension() ? format_point(v.witness) : std::string("-")) << "\n";
    }
    return os.str();
  }
  os << "stages checked: " << r.stages_checked << "\n";
  os << "points checked: " << r.points_checked << "\n";
  os << "violations: " << r.violations.size() << "\n";
  for (const auto& v : r.violations) {
    os << "  " << violation_name(v.kind) << " stage " << v.stage << " blocks " << blocks_text(v.blocks);
    if (v.witness.dimension()) os << " at " << format_point(v.witness);
    os << ": " << v.detail << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Refinement and separation

PartitionTrace refine(const StratifiedBasis& basis, std::size_t alpha, std::size_t limit) {
  if (auto n = basis.stage_count(); n && alpha > *n) {
    throw Error(Errc::StageUnavailable, "refinement at " + std::to_string(alpha) + " needs stages beyond " +
                                            std::to_string(*n - 1));
  }
  PartitionTrace trace;
  trace.stage = alpha;
  trace.blocks.push_back({basis.space().whole(), {}});
  for (std::size_t s = 0; s < alpha; ++s) {
    const EnumeratedCover cover = basis.enumerate(s, limit);
    if (!cover.complete) trace.complete = false;
    std::vector<TraceBlock> next;
    for (const auto& t : trace.blocks) {
      for (const auto& b : cover.blocks) {
        Box both = t.set.intersect(b.block);
        if (both.empty()) continue;
        if (next.size() >= limit) {
          trace.complete = false;
          break;
        }
        TraceBlock nb{std::move(both), t.inherited};
        nb.inherited.push_back(b.id);
        next.push_back(std::move(nb));
      }
    }
    trace.blocks = std::move(next);
  }
  return trace;
}

std::optional<std::size_t> separation_stage(const StratifiedBasis& basis, const Point& x, const Point& y,
                                            std::optional<std::size_t> cap) {
  if (!basis.space().contains(x)) throw Error(Errc::NotAMember, format_point(x) + " is not a point of the space");
  if (!basis.space().contains(y)) throw Error(Errc::NotAMember, format_point(y) + " is not a point of the space");
  if (x == y) throw Error(Errc::IdenticalPoints, "separation of a point from itself");
  return basis.first_separation(x, y, cap.value_or(basis.default_cap()));
}

BlockId block_index(const DiscreteCover& cover, const Point& x) {
  for (std::size_t i = 0; i < cover.blocks.size(); ++i) {
    if (cover.blocks[i].contains(x)) return {cover.stage, BlockIndex::single(i)};
  }
  throw Error(Errc::NotCovered, format_point(x) + " lies in no block of stage " + std::to_string(cover.stage));
}

// ---------------------------------------------------------------------------
// Explicit basis text format

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

PiecewiseSet parse_at(std::string_view text, std::size_t line, std::size_t offset) {
  try {
    return parse_set(text);
  } catch (const ParseError& e) {
    throw ParseError(offset + e.position(), "line " + std::to_string(line) + ": " + e.what());
  }
}

}  // namespace

namespace {

StratifiedBasis parse_basis_text(std::string_view text, CoverMode mode, const OrdinalSubspace* given) {
  std::optional<PiecewiseSet> declared;
  std::vector<std::vector<PiecewiseSet>> stages;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view raw = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    const std::size_t line_start = start;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const std::size_t offset = line_start + static_cast<std::size_t>(line.data() - raw.data());
    if (line.substr(0, 5) == "space" && (line.size() == 5 || line[5] == ' ' || line[5] == '\t')) {
      if (declared || !stages.empty()) {
        throw Error(Errc::InvalidBasis, "line " + std::to_string(line_no) + ": 'space' must come first, once");
      }
      declared = parse_at(trim(line.substr(5)), line_no, offset + 5);
      continue;
    }
    std::vector<PiecewiseSet> row;
    std::size_t from = 0;
    while (from <= line.size()) {
      const auto semi = line.find(';', from);
      const std::string_view part = line.substr(from, semi == std::string_view::npos ? std::string_view::npos
                                                                                    : semi - from);
      const std::string_view t = trim(part);
      if (t.empty()) throw ParseError(offset + from, "line " + std::to_string(line_no) + ": empty block");
      row.push_back(parse_at(t, line_no, offset + from));
      from = semi == std::string_view::npos ? line.size() + 1 : semi + 1;
    }
    stages.push_back(std::move(row));
  }
  PiecewiseSet space_set;
  if (given) {
    space_set = given->carrier();
  } else if (declared) {
    space_set = *declared;
  } else {
    for (const auto& row : stages) {
      for (const auto& b : row) space_set = space_set.unite(b);
    }
  }
  if (space_set.empty()) throw Error(Errc::EmptySpace, "explicit basis describes the empty space");
  return StratifiedBasis::explicit_basis(OrdinalSubspace(space_set), stages, mode);
}

}  // namespace

StratifiedBasis parse_explicit_basis(std::string_view text, CoverMode mode) {
  return parse_basis_text(text, mode, nullptr);
}

StratifiedBasis parse_explicit_basis(std::string_view text, CoverMode mode, const OrdinalSubspace& space) {
  return parse_basis_text(text, mode, &space);
}

}  // namespace gospace
