#include "gospace/order_engine.hpp"

#include <algorithm>
#include <bitset>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "gospace/error.hpp"

namespace gospace {

// ---------------------------------------------------------------------------
// Policy

BlockOrderPolicy BlockOrderPolicy::permuted(std::map<std::size_t, std::vector<std::uint64_t>> ranks) {
  for (const auto& [stage, r] : ranks) {
    std::vector<std::uint64_t> sorted = r;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] != i) {
        throw Error(Errc::InvalidArgument, "stage " + std::to_string(stage) + " ranks are not a permutation");
      }
    }
  }
  BlockOrderPolicy p;
  p.kind_ = PolicyKind::Permuted;
  p.ranks_ = std::move(ranks);
  return p;
}

BlockOrderPolicy BlockOrderPolicy::mirror_all() {
  BlockOrderPolicy p;
  p.kind_ = PolicyKind::MirrorAll;
  return p;
}

BlockOrderPolicy BlockOrderPolicy::mirror_odd() {
  BlockOrderPolicy p;
  p.kind_ = PolicyKind::MirrorOdd;
  return p;
}

std::strong_ordering BlockOrderPolicy::compare(std::size_t stage, const BlockIndex& a, const BlockIndex& b) const {
  switch (kind_) {
    case PolicyKind::Canonical: return a <=> b;
    case PolicyKind::MirrorAll: return b <=> a;
    case PolicyKind::MirrorOdd: return stage % 2 ? b <=> a : a <=> b;
    case PolicyKind::Permuted: {
      const auto it = ranks_.find(stage);
      if (it == ranks_.end() || a.path.size() != 1 || b.path.size() != 1) return a <=> b;
      const auto& r = it->second;
      if (a.path[0] >= r.size() || b.path[0] >= r.size()) return a <=> b;
      return r[a.path[0]] <=> r[b.path[0]];
    }
  }
  return a <=> b;
}

std::string BlockOrderPolicy::describe() const {
  switch (kind_) {
    case PolicyKind::Canonical: return "canonical";
    case PolicyKind::MirrorAll: return "mirror-all";
    case PolicyKind::MirrorOdd: return "mirror-odd";
    case PolicyKind::Permuted: return "permuted";
  }
  return "?";
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Less: return "Less";
    case Verdict::Equal: return "Equal";
    case Verdict::Greater: return "Greater";
    case Verdict::Unresolved: return "Unresolved";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Comparator

Comparison compare_points(const OrderWitness& w, const Point& x, const Point& y, std::size_t cap) {
  const StratifiedBasis& b = w.basis;
  if (!b.space().contains(x)) throw Error(Errc::NotAMember, format_point(x) + " is not a point of the space");
  if (!b.space().contains(y)) throw Error(Errc::NotAMember, format_point(y) + " is not a point of the space");
  Comparison c;
  if (x == y) return c;
  const auto sep = b.first_separation(x, y, cap);
  if (!sep) {
    c.verdict = Verdict::Unresolved;
    c.stage = cap;
    if (auto n = b.stage_count(); n && *n > 0) c.stage = std::min(cap, *n - 1);
    return c;
  }
  c.stage = *sep;
  c.index_x = b.source().locate(*sep, x).id.index;
  c.index_y = b.source().locate(*sep, y).id.index;
  c.verdict = w.policy.compare(*sep, *c.index_x, *c.index_y) < 0 ? Verdict::Less : Verdict::Greater;
  return c;
}

Comparison compare_points(const OrderWitness& w, const Point& x, const Point& y) {
  return compare_points(w, x, y, w.cap);
}

Comparison explain_points(const OrderWitness& w, const Point& x, const Point& y) {
  Comparison c = compare_points(w, x, y);
  if (c.verdict == Verdict::Less || c.verdict == Verdict::Greater) c.tag = w.basis.refinement_tag(c.stage, x);
  return c;
}

// ---------------------------------------------------------------------------
// Brute force

namespace {

constexpr std::size_t kMaxPoints = 256;
constexpr std::size_t kMaxStages = 64;
constexpr std::size_t kMaxSubsetFamily = 16;

using Mask = std::bitset<kMaxPoints>;

Mask to_mask(const std::vector<bool>& v) {
  Mask m;
  for (std::size_t i = 0; i < v.size(); ++i) m[i] = v[i];
  return m;
}

std::vector<std::vector<std::size_t>> maximal_by_subsets(const std::vector<Mask>& fam, const Mask& universe) {
  const std::size_t m = fam.size();
  const std::size_t total = std::size_t{1} << m;
  std::vector<Mask> inter(total);
  std::vector<char> fip(total, 0);
  inter[0] = universe;
  fip[0] = universe.any();
  for (std::size_t mask = 1; mask < total; ++mask) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    inter[mask] = inter[mask & (mask - 1)] & fam[low];
    fip[mask] = inter[mask].any();
  }
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask < total; ++mask) {
    if (!fip[mask]) continue;
    bool maximal = true;
    for (std::size_t j = 0; j < m && maximal; ++j) {
      if (!(mask >> j & 1) && fip[mask | (std::size_t{1} << j)]) maximal = false;
    }
    if (!maximal) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask >> j & 1) members.push_back(j);
    }
    out.push_back(std::move(members));
  }
  return out;
}

std::vector<std::vector<std::size_t>> maximal_by_points(const std::vector<Mask>& fam, std::size_t universe) {
  // every FIP subfamily lies inside the family of sets through some point
  std::set<std::vector<std::size_t>> through;
  for (std::size_t p = 0; p < universe; ++p) {
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < fam.size(); ++j) {
      if (fam[j][p]) members.push_back(j);
    }
    through.insert(std::move(members));
  }
  std::vector<std::vector<std::size_t>> cand(through.begin(), through.end());
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t a = 0; a < cand.size(); ++a) {
    bool maximal = true;
    for (std::size_t b = 0; b < cand.size() && maximal; ++b) {
      if (a == b || cand[b].size() <= cand[a].size()) continue;
      if (std::includes(cand[b].begin(), cand[b].end(), cand[a].begin(), cand[a].end())) maximal = false;
    }
    if (maximal) out.push_back(cand[a]);
  }
  return out;
}

std::vector<std::vector<std::size_t>> maximal_fip(const std::vector<Mask>& fam, std::size_t universe,
                                                  FipMethod method) {
  if (universe > kMaxPoints) throw Error(Errc::TooLarge, "brute force is limited to 256 points");
  if (method == FipMethod::Auto) method = fam.size() <= kMaxSubsetFamily ? FipMethod::Subsets : FipMethod::PointFamilies;
  std::vector<std::vector<std::size_t>> out;
  if (method == FipMethod::Subsets) {
    if (fam.size() > 20) throw Error(Errc::TooLarge, "subset enumeration is limited to 20 sets");
    Mask all;
    for (std::size_t i = 0; i < universe; ++i) all[i] = true;
    out = maximal_by_subsets(fam, all);
  } else {
    out = maximal_by_points(fam, universe);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<std::vector<std::size_t>> maximal_fip_subfamilies(const std::vector<std::vector<bool>>& family,
                                                              std::size_t universe, FipMethod method) {
  std::vector<Mask> fam;
  fam.reserve(family.size());
  for (const auto& f : family) fam.push_back(to_mask(f));
  return maximal_fip(fam, universe, method);
}

std::size_t RelationSet::index_of(const Point& p) const {
  const auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || !(*it == p)) throw Error(Errc::NotAMember, format_point(p) + " is not enumerated");
  return static_cast<std::size_t>(it - points.begin());
}

std::size_t RelationSet::pair_count(std::size_t alpha) const {
  std::size_t n = 0;
  for (const auto& row : relations[alpha]) n += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
  return n;
}

RelationSet brute_force_relations(const StratifiedBasis& basis, const BlockOrderPolicy& policy, FipMethod method) {
  if (basis.mode() != BasisMode::Explicit || !basis.stage_count()) {
    throw Error(Errc::InvalidArgument, "brute force needs an explicit basis");
  }
  const std::size_t stages = *basis.stage_count();
  if (stages > kMaxStages) throw Error(Errc::TooLarge, "brute force is limited to 64 stages");
  const auto size = basis.space().finite_size();
  if (!size || *size > kMaxPoints) throw Error(Errc::TooLarge, "brute force is limited to 256 points");

  RelationSet rs;
  rs.points = basis.space().points(kMaxPoints);
  const std::size_t n = rs.points.size();

  // stage blocks as point masks, with their indices
  std::vector<std::vector<Mask>> blocks(stages);
  std::vector<std::vector<BlockIndex>> indices(stages);
  for (std::size_t s = 0; s < stages; ++s) {
    for (const auto& b : basis.enumerate(s, 1u << 16).blocks) {
      Mask m;
      for (std::size_t i = 0; i < n; ++i) m[i] = b.block.contains(rs.points[i]);
      blocks[s].push_back(m);
      indices[s].push_back(b.id.index);
    }
  }

  const std::vector<std::vector<bool>> empty(n, std::vector<bool>(n, false));
  std::vector<Mask> prefix;  // blocks of all stages < alpha
  for (std::size_t alpha = 0; alpha < stages; ++alpha) {
    std::vector<Mask> cells;
    if (alpha == 0) {
      Mask all;
      for (std::size_t i = 0; i < n; ++i) all[i] = true;
      cells.push_back(all);
    } else {
      std::set<std::string> seen;
      for (const auto& members : maximal_fip(prefix, n, method)) {
        Mask cell;
        for (std::size_t i = 0; i < n; ++i) cell[i] = true;
        for (auto j : members) cell &= prefix[j];
        if (cell.none() || !seen.insert(cell.to_string()).second) continue;
        cells.push_back(cell);
      }
    }

    auto rel = alpha == 0 ? empty : rs.relations.back();
    for (const auto& cell : cells) {
      for (std::size_t lam = 0; lam < blocks[alpha].size(); ++lam) {
        for (std::size_t gam = 0; gam < blocks[alpha].size(); ++gam) {
          if (policy.compare(alpha, indices[alpha][lam], indices[alpha][gam]) >= 0) continue;
          const Mask xs = cell & blocks[alpha][lam];
          const Mask ys = cell & blocks[alpha][gam];
          if (xs.none() || ys.none()) continue;
          for (std::size_t i = 0; i < n; ++i) {
            if (!xs[i]) continue;
            for (std::size_t j = 0; j < n; ++j) {
              if (ys[j]) rel[i][j] = true;
            }
          }
        }
      }
    }
    rs.relations.push_back(std::move(rel));

    std::vector<std::vector<std::size_t>> part;
    for (const auto& cell : cells) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (cell[i]) members.push_back(i);
      }
      part.push_back(std::move(members));
    }
    std::sort(part.begin(), part.end());
    rs.partitions.push_back(std::move(part));

    prefix.insert(prefix.end(), blocks[alpha].begin(), blocks[alpha].end());
  }
  return rs;
}

// ---------------------------------------------------------------------------
// Axiom suite

std::size_t AxiomReport::total() const noexcept { return std::accumulate(counts.begin(), counts.end(), std::size_t{0}); }

namespace {

constexpr std::size_t kExamplesPerAxiom = 3;

std::vector<Point> distinct(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

bool decided(const Comparison& c) { return c.verdict == Verdict::Less || c.verdict == Verdict::Greater; }

bool same(const Comparison& a, const Comparison& b) { return a.verdict == b.verdict && a.stage == b.stage; }

Verdict mirror(Verdict v) {
  if (v == Verdict::Less) return Verdict::Greater;
  if (v == Verdict::Greater) return Verdict::Less;
  return v;
}

using Matrix = std::vector<std::vector<Comparison>>;

Matrix comparison_matrix(const OrderWitness& w, const std::vector<Point>& pts) {
  Matrix m(pts.size(), std::vector<Comparison>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = 0; j < pts.size(); ++j) m[i][j] = compare_points(w, pts[i], pts[j]);
  }
  return m;
}

class AxiomSink {
 public:
  explicit AxiomSink(AxiomReport& r) : r_(r) {}

  void add(int axiom, std::vector<Point> pts, std::string detail) {
    ++r_.counts[static_cast<std::size_t>(axiom - 1)];
    if (shown_[static_cast<std::size_t>(axiom - 1)]++ < kExamplesPerAxiom) {
      r_.examples.push_back({axiom, std::move(pts), std::move(detail)});
    }
  }

 private:
  AxiomReport& r_;
  std::array<std::size_t, 5> shown_{};
};

}  // namespace

AxiomReport check_axioms(const OrderWitness& w, const std::vector<Point>& sample) {
  AxiomReport r;
  AxiomSink sink(r);
  const std::vector<Point> pts = distinct(sample);
  const std::size_t n = pts.size();
  r.points = n;
  const Matrix c = comparison_matrix(w, pts);

  // A4
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool eq = c[i][j].verdict == Verdict::Equal;
      if (eq != (i == j)) sink.add(4, {pts[i], pts[j]}, "Equal must hold exactly on identical points");
    }
  }

  // A2 and A1
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      ++r.pairs;
      const Comparison& a = c[i][j];
      const Comparison& b = c[j][i];
      if (a.verdict == Verdict::Unresolved || b.verdict == Verdict::Unresolved) {
        ++r.unresolved;
        if (a.verdict != b.verdict) sink.add(2, {pts[i], pts[j]}, "resolved in one direction only");
        continue;
      }
      if (b.verdict != mirror(a.verdict) || a.stage != b.stage) {
        sink.add(2, {pts[i], pts[j]}, "not exactly one of the two orders");
      }
      const std::size_t alpha = a.stage;
      for (std::size_t cap : {alpha, alpha + 1, alpha + 8, 2 * alpha + 16}) {
        if (!same(compare_points(w, pts[i], pts[j], cap), a)) {
          sink.add(1, {pts[i], pts[j]}, "decision changed at stage cap " + std::to_string(cap));
          break;
        }
      }
    }
  }

  // A3 and A5
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Comparison& xy = c[i][j];
      // x and y are unseparated through beta
      const std::size_t beta = decided(xy) ? xy.stage - 1 : xy.stage;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        ++r.triples;
        const Comparison& yz = c[j][k];
        if (xy.verdict == Verdict::Less && yz.verdict == Verdict::Less) {
          const Comparison& xz = c[i][k];
          if (xz.verdict != Verdict::Less || xz.stage > std::max(xy.stage, yz.stage)) {
            sink.add(3, {pts[i], pts[j], pts[k]}, "transitivity fails");
          }
        }
        const Comparison& zx = c[k][i];
        const Comparison& zy = c[k][j];
        if (decided(zx) && zx.stage <= beta && !same(zx, zy)) {
          sink.add(5, {pts[i], pts[j], pts[k]}, "unseparated points treated differently");
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Convexity

ConvexityReport check_convexity(const OrderWitness& w, std::size_t alpha, const std::vector<Point>& sample) {
  ConvexityReport r;
  const std::vector<Point> pts = distinct(sample);
  const std::size_t n = pts.size();
  const Matrix c = comparison_matrix(w, pts);
  std::vector<RefinementTag> tags;
  tags.reserve(n);
  for (const auto& p : pts) tags.push_back(w.basis.refinement_tag(alpha, p));
  r.blocks = std::set<RefinementTag>(tags.begin(), tags.end()).size();

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !(tags[i] == tags[j])) continue;
      if (c[i][j].verdict == Verdict::Unresolved) {
        r.skipped += n - 2;
        continue;
      }
      if (c[i][j].verdict != Verdict::Less) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (c[i][k].verdict == Verdict::Unresolved || c[k][j].verdict == Verdict::Unresolved) {
          ++r.skipped;
          continue;
        }
        if (c[i][k].verdict != Verdict::Less || c[k][j].verdict != Verdict::Less) continue;
        ++r.checks;
        if (!(tags[k] == tags[i])) r.violations.push_back({alpha, pts[i], pts[k], pts[j]});
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Basis property

std::size_t BasisReport::failures() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(cases.begin(), cases.end(), [](const BasisCaseResult& c) { return !c.stage; }));
}

std::vector<NeighborhoodCase> basic_neighborhoods(const ProductSpace& space, const std::vector<Point>& sample,
                                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<NeighborhoodCase> out;
  for (const auto& x : sample) {
    Box nb;
    for (std::size_t i = 0; i < space.dimension(); ++i) {
      const OrdinalSubspace& f = space.factors()[i];
      if (is_isolated(f, x[i])) {
        nb.sides.push_back(PiecewiseSet::point(x[i]));
      } else {
        const std::uint64_t k = 1 + rng() % 6;
        nb.sides.push_back(f.carrier().clip(fundamental_sequence(x[i], k), x[i]));
      }
    }
    out.push_back({x, std::move(nb)});
  }
  return out;
}

BasisReport check_basis_property(const OrderWitness& w, const std::vector<NeighborhoodCase>& cases,
                                 std::size_t max_stage) {
  const StratifiedBasis& b = w.basis;
  std::size_t last = max_stage;
  if (auto n = b.stage_count()) last = std::min(last, *n);
  auto fits = [&](std::size_t alpha, const NeighborhoodCase& t) {
    return b.refinement_block(alpha, t.x).is_subset_of(t.neighborhood);
  };

  BasisReport r;
  for (const auto& t : cases) {
    BasisCaseResult res{t, std::nullopt};
    if (b.monotone()) {
      // refinement blocks shrink with the stage: gallop, then bisect
      std::size_t hi = 1;
      while (hi < last && !fits(hi, t)) hi = std::min(last, hi * 2);
      if (fits(hi, t)) {
        std::size_t lo = 0;
        while (lo < hi) {
          const std::size_t mid = lo + (hi - lo) / 2;
          if (fits(mid, t)) {
            hi = mid;
          } else {
            lo = mid + 1;
          }
        }
        res.stage = hi;
      }
    } else {
      for (std::size_t alpha = 0; alpha <= last; ++alpha) {
        if (fits(alpha, t)) {
          res.stage = alpha;
          break;
        }
      }
    }
    r.cases.push_back(std::move(res));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Sorting

std::vector<Point> sort_sample(const OrderWitness& w, std::vector<Point> points) {
  points = distinct(std::move(points));
  std::stable_sort(points.begin(), points.end(), [&](const Point& a, const Point& b) {
    const Comparison c = compare_points(w, a, b);
    if (c.verdict == Verdict::Unresolved) {
      throw Error(Errc::UnresolvedPair, format_point(a) + " and " + format_point(b) + " are not separated by stage " +
                                            std::to_string(c.stage));
    }
    return c.verdict == Verdict::Less;
  });
  return points;
}

std::size_t order_violations(const OrderWitness& w, const std::vector<Point>& sorted) {
  std::size_t bad = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      if (compare_points(w, sorted[i], sorted[j]).verdict != Verdict::Less) ++bad;
    }
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

std::string points_text(const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ", ";
    out += format_point(pts[i]);
  }
  return out;
}

}  // namespace

std::string format_axiom_report(const AxiomReport& r, bool line_format) {
  std::ostringstream os;
  if (line_format) {
    os << "points\t" << r.points << "\npairs\t" << r.pairs << "\ntriples\t" << r.triples << "\nunresolved\t"
       << r.unresolved << "\n";
    for (std::size_t a = 0; a < 5; ++a) os << "A" << a + 1 << "\t" << r.counts[a] << "\n";
    os << "violations\t" << r.total() << "\n";
    for (const auto& v : r.examples) os << "violation\tA" << v.axiom << "\t" << points_text(v.points) << "\n";
    return os.str();
  }
  os << "points: " << r.points << ", pairs: " << r.pairs << ", triples: " << r.triples
     << ", unresolved pairs: " << r.unresolved << "\n";
  for (std::size_t a = 0; a < 5; ++a) os << "A" << a + 1 << ": " << r.counts[a] << "\n";
  for (const auto& v : r.examples) os << "  A" << v.axiom << " at " << points_text(v.points) << ": " << v.detail << "\n";
  os << "A1..A5: " << r.total() << " violations\n";
  return os.str();
}

std::string format_convexity_report(const ConvexityReport& r, bool line_format) {
  std::ostringstream os;
  if (line_format) {
    os << "checks\t" << r.checks << "\nblocks\t" << r.blocks << "\nskipped\t" << r.skipped << "\nviolations\t"
       << r.violations.size() << "\n";
    for (const auto& v : r.violations) {
      os << "violation\t" << v.stage << "\t" << points_text({v.x, v.z, v.y}) << "\n";
    }
    return os.str();
  }
  os << "convexity: " << r.checks << " checks over " << r.blocks << " blocks, " << r.violations.size()
     << " violations\n";
  for (const auto& v : r.violations) {
    os << "  stage " << v.stage << ": " << format_point(v.z) << " lies between " << format_point(v.x) << " and "
       << format_point(v.y) << "\n";
  }
  return os.str();
}

std::string format_basis_report(const BasisReport& r, bool line_format) {
  std::ostringstream os;
  if (line_format) {
    os << "cases\t" << r.cases.size() << "\nfailures\t" << r.failures() << "\n";
    for (const auto& c : r.cases) {
      os << "case\t" << format_point(c.test.x) << "\t" << format_box(c.test.neighborhood) << "\t"
         << (c.stage ? std::to_string(*c.stage) : std::string("none")) << "\n";
    }
    return os.str();
  }
  os << "basis property: " << r.cases.size() << " cases, " << r.failures() << " failures\n";
  for (const auto& c : r.cases) {
    if (c.stage) continue;
    os << "  no block at " << format_point(c.test.x) << " inside " << format_box(c.test.neighborhood) << "\n";
  }
  return os.str();
}

}  // namespace gospace
