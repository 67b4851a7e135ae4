#pragma once

// The linear order induced by a stratified basis.
//
// Two distinct points are compared at the first stage whose cover puts them
// in different blocks; the block order of that stage decides. The brute-force
// side materializes the relations stage by stage from maximal families with
// the finite intersection property, for small explicit spaces only.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gospace/strata.hpp"

namespace gospace {

enum class PolicyKind { Canonical, Permuted, MirrorAll, MirrorOdd };

/// Order of the blocks inside each stage.
///   Canonical  index order
///   Permuted   explicit rank per index, per stage (one-element indices);
///              stages without a permutation stay canonical
///   MirrorAll  reversed index order in every stage
///   MirrorOdd  reversed in odd stages only
class BlockOrderPolicy {
 public:
  BlockOrderPolicy() = default;

  static BlockOrderPolicy canonical() { return {}; }
  /// ranks[stage][i] is the position of block i. Throws Errc::InvalidArgument
  /// unless every rank vector is a permutation of 0..k-1.
  static BlockOrderPolicy permuted(std::map<std::size_t, std::vector<std::uint64_t>> ranks);
  static BlockOrderPolicy mirror_all();
  static BlockOrderPolicy mirror_odd();

  PolicyKind kind() const noexcept { return kind_; }
  std::strong_ordering compare(std::size_t stage, const BlockIndex& a, const BlockIndex& b) const;
  std::string describe() const;

 private:
  PolicyKind kind_ = PolicyKind::Canonical;
  std::map<std::size_t, std::vector<std::uint64_t>> ranks_;
};

struct OrderWitness {
  StratifiedBasis basis;
  BlockOrderPolicy policy;
  std::size_t cap;

  explicit OrderWitness(StratifiedBasis b, BlockOrderPolicy p = {}, std::optional<std::size_t> c = std::nullopt)
      : basis(std::move(b)), policy(std::move(p)), cap(c.value_or(basis.default_cap())) {}
};

enum class Verdict { Less, Equal, Greater, Unresolved };

std::string_view verdict_name(Verdict v);

struct Comparison {
  Verdict verdict = Verdict::Equal;
  /// Separation stage; for Unresolved, the last stage tried.
  std::size_t stage = 0;
  std::optional<BlockIndex> index_x;
  std::optional<BlockIndex> index_y;
  /// The common refinement block both points lie in before separating; only
  /// filled by explain_points.
  std::optional<RefinementTag> tag;
};

/// Throws Errc::NotAMember.
Comparison compare_points(const OrderWitness& w, const Point& x, const Point& y);

/// Same comparison with a different stage cap.
Comparison compare_points(const OrderWitness& w, const Point& x, const Point& y, std::size_t cap);

/// compare_points plus the refinement tag at the separation stage.
Comparison explain_points(const OrderWitness& w, const Point& x, const Point& y);

// ---------------------------------------------------------------------------
// Brute force

/// relations[alpha] holds the pairs (i, j) of point indices placed in the
/// alpha-th relation; relations[0] is empty.
struct RelationSet {
  std::vector<Point> points;
  std::vector<std::vector<std::vector<bool>>> relations;
  /// The refinement blocks used at each stage, as sorted point-index lists.
  std::vector<std::vector<std::vector<std::size_t>>> partitions;

  std::size_t stage_count() const noexcept { return relations.size(); }
  std::size_t index_of(const Point& p) const;
  bool related(std::size_t alpha, std::size_t i, std::size_t j) const { return relations[alpha][i][j]; }
  /// Relation of the last stage (the union of all of them).
  bool less(std::size_t i, std::size_t j) const { return relations.back()[i][j]; }
  std::size_t pair_count(std::size_t alpha) const;
};

/// How maximal FIP subfamilies are found. Auto enumerates subfamilies
/// directly for families of at most 16 sets and otherwise uses the point
/// characterization (maximal among the families of sets through one point).
enum class FipMethod { Auto, Subsets, PointFamilies };

/// Explicit bases over at most 256 points and 64 stages; throws Errc::TooLarge
/// beyond that, and Errc::InvalidArgument for lazy bases.
RelationSet brute_force_relations(const StratifiedBasis& basis, const BlockOrderPolicy& policy = {},
                                  FipMethod method = FipMethod::Auto);

/// Maximal subfamilies with nonempty intersection of `family` (bitmasks over
/// `universe` points); returned as sorted member-index lists.
std::vector<std::vector<std::size_t>> maximal_fip_subfamilies(const std::vector<std::vector<bool>>& family,
                                                              std::size_t universe, FipMethod method);

// ---------------------------------------------------------------------------
// Property suites

struct AxiomViolation {
  int axiom = 0;  // 1..5
  std::vector<Point> points;
  std::string detail;
};

struct AxiomReport {
  std::size_t points = 0;
  std::size_t pairs = 0;
  std::size_t triples = 0;
  std::size_t unresolved = 0;
  std::array<std::size_t, 5> counts{};
  std::vector<AxiomViolation> examples;  // at most a handful per axiom

  std::size_t total() const noexcept;
  bool clean() const noexcept { return total() == 0; }
};

/// Comparator-level restatements of the five construction invariants over
/// every pair and triple of the sample:
///   A1 a decision made at stage a is unchanged under any cap >= a;
///   A2 separated distinct pairs get exactly one of Less / Greater, mirrored;
///   A3 transitivity, with the decision stage of (x, z) at most the larger one;
///   A4 Equal only on identical points;
///   A5 when x, y are unseparated through stage b, every z decided against x
///      by stage b is decided the same way against y.
AxiomReport check_axioms(const OrderWitness& w, const std::vector<Point>& sample);

struct ConvexityViolation {
  std::size_t stage = 0;
  Point x, z, y;
};

struct ConvexityReport {
  std::size_t checks = 0;
  std::size_t blocks = 0;
  std::size_t skipped = 0;  // triples with an unresolved pair
  std::vector<ConvexityViolation> violations;

  bool clean() const noexcept { return violations.empty(); }
};

/// Refinement blocks at `alpha` are convex: x < z < y with x, y in one block
/// puts z in that block too. Every ordered sample triple is examined.
ConvexityReport check_convexity(const OrderWitness& w, std::size_t alpha, const std::vector<Point>& sample);

struct NeighborhoodCase {
  Point x;
  Box neighborhood;
};

struct BasisCaseResult {
  NeighborhoodCase test;
  std::optional<std::size_t> stage;  // least stage whose refinement block fits
};

struct BasisReport {
  std::vector<BasisCaseResult> cases;
  std::size_t failures() const noexcept;
  bool clean() const noexcept { return failures() == 0; }
};

/// One basic neighborhood per sampled point: per coordinate {x_i} when x_i is
/// isolated in its factor, else the trace (x_i[n], x_i] with n drawn from 1..6.
std::vector<NeighborhoodCase> basic_neighborhoods(const ProductSpace& space, const std::vector<Point>& sample,
                                                  std::uint64_t seed = 0);

/// For every case, searches refinement stages 0..max_stage for a block
/// containing x inside the neighborhood.
BasisReport check_basis_property(const OrderWitness& w, const std::vector<NeighborhoodCase>& cases,
                                 std::size_t max_stage = 512);

/// Distinct members sorted by the induced order, independent of input order.
/// Throws Errc::UnresolvedPair.
std::vector<Point> sort_sample(const OrderWitness& w, std::vector<Point> points);

/// Pairs (i < j) of `sorted` not compared as Less; 0 for a strict total order.
std::size_t order_violations(const OrderWitness& w, const std::vector<Point>& sorted);

std::string format_axiom_report(const AxiomReport& r, bool line_format);
std::string format_convexity_report(const ConvexityReport& r, bool line_format);
std::string format_basis_report(const BasisReport& r, bool line_format);

}  // namespace gospace
