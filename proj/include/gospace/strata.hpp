#pragma once

// Stratified clopen bases: a sequence of stages, each a disjoint clopen
// cover of the space, with stage 0 the single block {X}.
//
// Blocks are identified by (stage, index). Indices are lexicographically
// ordered integer paths; within one stage every index has the same length,
// and that order is the block order used by the comparator. Explicit covers
// use one-element indices in input order. Generated (lazy) covers use tree
// paths, which order blocks by their least element.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gospace/point.hpp"

namespace gospace {

struct BlockIndex {
  std::vector<std::uint64_t> path;

  BlockIndex() = default;
  explicit BlockIndex(std::vector<std::uint64_t> p) : path(std::move(p)) {}
  static BlockIndex single(std::uint64_t i) { return BlockIndex({i}); }

  friend std::strong_ordering operator<=>(const BlockIndex&, const BlockIndex&) = default;
  friend bool operator==(const BlockIndex&, const BlockIndex&) = default;
};

/// "3" or "0.1.2".
std::string format_index(const BlockIndex& i);

struct BlockId {
  std::size_t stage = 0;
  BlockIndex index;

  friend bool operator==(const BlockId&, const BlockId&) = default;
};

struct Located {
  BlockId id;
  Box block;
};

/// Identifies the block of the common refinement of stages < alpha that
/// contains a point. Only comparable between tags of the same basis.
struct RefinementTag {
  std::vector<BlockIndex> parts;

  friend auto operator<=>(const RefinementTag&, const RefinementTag&) = default;
  friend bool operator==(const RefinementTag&, const RefinementTag&) = default;
};

struct EnumeratedCover {
  std::size_t stage = 0;
  std::vector<Located> blocks;  // index order
  bool complete = true;         // false when truncated at the limit
};

/// Source of the stage covers.
class CoverSource {
 public:
  virtual ~CoverSource() = default;

  virtual std::size_t dimension() const = 0;
  /// Available stages; nullopt when stages are generated without end.
  virtual std::optional<std::size_t> stage_count() const = 0;
  /// Points separated at some stage stay separated at every later stage.
  virtual bool monotone() const { return false; }
  /// The block containing p. Throws Errc::NotCovered or Errc::StageUnavailable.
  virtual Located locate(std::size_t stage, const Point& p) const = 0;
  virtual EnumeratedCover enumerate(std::size_t stage, std::size_t limit) const = 0;

  /// Least stage in [1, cap] whose blocks of x and y differ.
  virtual std::optional<std::size_t> first_separation(const Point& x, const Point& y, std::size_t cap) const;
  virtual RefinementTag refinement_tag(std::size_t alpha, const Point& p) const;
  virtual Box refinement_block(std::size_t alpha, const Point& p) const;
};

/// Finitely many stages of finitely many boxes, stage 0 included.
class ExplicitCovers final : public CoverSource {
 public:
  explicit ExplicitCovers(std::vector<std::vector<Box>> stages);

  std::size_t dimension() const override { return stages_.front().front().dimension(); }
  std::optional<std::size_t> stage_count() const override { return stages_.size(); }
  Located locate(std::size_t stage, const Point& p) const override;
  EnumeratedCover enumerate(std::size_t stage, std::size_t limit) const override;

  const std::vector<std::vector<Box>>& stages() const noexcept { return stages_; }

 private:
  std::vector<std::vector<Box>> stages_;
};

/// One explicit stage: blocks in index order.
struct DiscreteCover {
  std::size_t stage = 0;
  std::vector<Box> blocks;
};

/// Strict leaves a non-covering stage as is (validation reports it);
/// permissive appends the uncovered remainder as a final block.
enum class CoverMode { Strict, Permissive };

enum class BasisMode { Explicit, Lazy };

class StratifiedBasis {
 public:
  StratifiedBasis(ProductSpace space, std::shared_ptr<const CoverSource> source, BasisMode mode);

  /// Stage 0 = {X} is inserted in front of `stages`.
  static StratifiedBasis explicit_basis(const ProductSpace& space, const std::vector<std::vector<Box>>& stages,
                                        CoverMode mode = CoverMode::Strict);
  static StratifiedBasis explicit_basis(const OrdinalSubspace& space,
                                        const std::vector<std::vector<PiecewiseSet>>& stages,
                                        CoverMode mode = CoverMode::Strict);

  const ProductSpace& space() const noexcept { return space_; }
  BasisMode mode() const noexcept { return mode_; }
  const CoverSource& source() const noexcept { return *source_; }
  std::shared_ptr<const CoverSource> shared_source() const noexcept { return source_; }

  std::optional<std::size_t> stage_count() const { return source_->stage_count(); }
  bool monotone() const { return source_->monotone(); }
  /// Explicit: the last stage. Lazy: a large safety limit.
  std::size_t default_cap() const;

  /// Throws Errc::NotAMember when p is outside the space.
  Located locate(std::size_t stage, const Point& p) const;
  std::optional<std::size_t> first_separation(const Point& x, const Point& y, std::size_t cap) const;
  RefinementTag refinement_tag(std::size_t alpha, const Point& p) const;
  Box refinement_block(std::size_t alpha, const Point& p) const;
  EnumeratedCover enumerate(std::size_t stage, std::size_t limit = 4096) const;

 private:
  void require_member(const Point& p) const;

  ProductSpace space_;
  std::shared_ptr<const CoverSource> source_;
  BasisMode mode_;
};

/// Lazy bases never run past this stage while looking for a separation.
inline constexpr std::size_t kLazyStageCap = std::size_t{1} << 20;

// ---------------------------------------------------------------------------
// Validation

enum class ViolationKind { Overlap, Uncovered, NotClopen, NotDiscrete, Inconsistent, BadStageZero };

std::string_view violation_name(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::size_t stage = 0;
  Point witness;
  std::vector<BlockIndex> blocks;
  std::string detail;
};

struct ValidationReport {
  std::size_t stages_checked = 0;
  std::size_t points_checked = 0;
  std::vector<Violation> violations;

  bool clean() const noexcept { return violations.empty(); }
  std::size_t count(ViolationKind k) const;
};

/// Checks every stage (explicit) or stages 0..max_stage (lazy). Completely
/// enumerated stages are checked exactly for overlap and clopenness, and in
/// one dimension for coverage. Sampled points check coverage, discreteness
/// and consistency of point location; truncated stages check the located
/// blocks only.
ValidationReport validate(const StratifiedBasis& basis, std::size_t sample_budget, std::size_t max_stage = 12,
                          std::uint64_t seed = 0);

/// Deterministic plain-text table, or `key<TAB>value` lines.
std::string format_validation(const ValidationReport& r, bool line_format);

// ---------------------------------------------------------------------------
// Refinement and separation

struct TraceBlock {
  Box set;
  std::vector<BlockId> inherited;  // the block of each stage < alpha containing this block
};

struct PartitionTrace {
  std::size_t stage = 0;
  std::vector<TraceBlock> blocks;
  bool complete = true;
};

/// Common refinement of the stages < alpha, empty intersections dropped.
/// Throws Errc::StageUnavailable.
PartitionTrace refine(const StratifiedBasis& basis, std::size_t alpha, std::size_t limit = 4096);

/// Least stage whose cover puts x and y in different blocks, searching up to
/// `cap` (default: the basis' default cap). Throws Errc::NotAMember and
/// Errc::IdenticalPoints.
std::optional<std::size_t> separation_stage(const StratifiedBasis& basis, const Point& x, const Point& y,
                                            std::optional<std::size_t> cap = std::nullopt);

/// The unique block of the cover containing x. Throws Errc::NotCovered.
BlockId block_index(const DiscreteCover& cover, const Point& x);

// ---------------------------------------------------------------------------
// Explicit basis text format
//
//   # comment
//   space <set>            optional; defaults to the union of all blocks
//   <set> ; <set> ; ...    one line per stage, starting at stage 1

StratifiedBasis parse_explicit_basis(std::string_view text, CoverMode mode = CoverMode::Strict);
/// Same, with `space` taking the place of any header.
StratifiedBasis parse_explicit_basis(std::string_view text, CoverMode mode, const OrdinalSubspace& space);

}  // namespace gospace
