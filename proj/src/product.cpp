#include "gospace/product.hpp"

#include <algorithm>
#include <limits>

#include "gospace/error.hpp"

namespace gospace {

namespace {

std::size_t checked_mul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) throw Error(Errc::TooLarge, "stage index overflow");
  return a * b;
}

std::size_t ipow(std::size_t base, std::size_t e) {
  std::size_t v = 1;
  for (std::size_t i = 0; i < e; ++i) v = checked_mul(v, base);
  return v;
}

/// C(n, k)
std::size_t binom(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t v = 1;
  for (std::size_t i = 1; i <= k; ++i) v = checked_mul(v, n - k + i) / i;
  return v;
}

/// Tuples of length r over [0, m] with largest entry m (has_max: already attained).
std::size_t diagonal_completions(std::size_t m, std::size_t r, bool has_max) {
  const std::size_t all = ipow(m + 1, r);
  return has_max ? all : all - ipow(m, r);
}

/// Tuples of length r of naturals summing to `rem`.
std::size_t sum_completions(std::size_t rem, std::size_t r) {
  if (r == 0) return rem == 0 ? 1 : 0;
  return binom(rem + r - 1, r - 1);
}

/// Shared shape of the closed form: the first tuple reaching some threshold
/// is m * e_i, m the least threshold and i the last coordinate attaining it.
std::optional<StageTuple> least_reaching_tuple(const std::vector<std::optional<std::size_t>>& thresholds) {
  std::optional<std::size_t> m;
  for (const auto& t : thresholds) {
    if (t && (!m || *t < *m)) m = t;
  }
  if (!m) return std::nullopt;
  StageTuple tuple(thresholds.size(), 0);
  for (std::size_t i = thresholds.size(); i-- > 0;) {
    if (thresholds[i] == m) {
      tuple[i] = *m;
      break;
    }
  }
  return tuple;
}

/// Both concrete pairings list their tuples level by level (level = largest
/// entry, or sum) and the first tuple of a level with entry i equal to the
/// level is level * e_i.
StageTuple reached_by_level(const StagePairing& p, std::size_t alpha, std::size_t arity, std::size_t level) {
  StageTuple m(arity, 0);
  if (alpha == 0 || level == 0) return m;
  for (std::size_t i = 0; i < arity; ++i) {
    StageTuple top(arity, 0);
    top[i] = level;
    m[i] = p.index_of(top) < alpha ? level : level - 1;
  }
  return m;
}

/// Least k >= 0 with f(k + 1) > s, for f increasing with f(0) <= s.
template <class F>
std::size_t level_search(std::size_t s, F f) {
  std::size_t hi = 1;
  while (f(hi) <= s) hi *= 2;
  std::size_t lo = 0;  // f(lo) <= s < f(hi)
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (f(mid) <= s) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

StageTuple StagePairing::reached(std::size_t alpha, std::size_t arity) const {
  StageTuple m(arity, 0);
  for (std::size_t s = 0; s < alpha; ++s) {
    const StageTuple t = tuple_at(s, arity);
    for (std::size_t i = 0; i < arity; ++i) m[i] = std::max(m[i], t[i]);
  }
  return m;
}

StageTuple DiagonalPairing::reached(std::size_t alpha, std::size_t arity) const {
  if (alpha == 0) return StageTuple(arity, 0);
  const StageTuple t = tuple_at(alpha - 1, arity);
  return reached_by_level(*this, alpha, arity, *std::max_element(t.begin(), t.end()));
}

StageTuple SumPairing::reached(std::size_t alpha, std::size_t arity) const {
  if (alpha == 0) return StageTuple(arity, 0);
  const StageTuple t = tuple_at(alpha - 1, arity);
  std::size_t level = 0;
  for (auto v : t) level += v;
  return reached_by_level(*this, alpha, arity, level);
}

std::optional<std::size_t> StagePairing::first_reaching(const std::vector<std::optional<std::size_t>>& thresholds,
                                                        std::size_t cap) const {
  for (std::size_t s = 0; s <= cap; ++s) {
    const StageTuple t = tuple_at(s, thresholds.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (thresholds[i] && t[i] >= *thresholds[i]) return s;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Diagonal

StageTuple DiagonalPairing::tuple_at(std::size_t s, std::size_t arity) const {
  if (arity == 0) throw Error(Errc::InvalidArgument, "pairing arity 0");
  // m^arity <= s < (m+1)^arity
  const std::size_t m = level_search(s, [arity](std::size_t k) { return ipow(k, arity); });
  std::size_t rank = s - ipow(m, arity);
  StageTuple t(arity, 0);
  bool has_max = false;
  for (std::size_t i = 0; i < arity; ++i) {
    const std::size_t r = arity - i - 1;
    for (std::size_t v = 0; v <= m; ++v) {
      const std::size_t block = diagonal_completions(m, r, has_max || v == m);
      if (rank < block) {
        t[i] = v;
        has_max = has_max || v == m;
        break;
      }
      rank -= block;
    }
  }
  return t;
}

std::size_t DiagonalPairing::index_of(const StageTuple& t) const {
  if (t.empty()) throw Error(Errc::InvalidArgument, "pairing arity 0");
  const std::size_t n = t.size();
  const std::size_t m = *std::max_element(t.begin(), t.end());
  std::size_t s = ipow(m, n);
  bool has_max = false;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = n - i - 1;
    for (std::size_t v = 0; v < t[i]; ++v) s += diagonal_completions(m, r, has_max || v == m);
    has_max = has_max || t[i] == m;
  }
  return s;
}

std::optional<std::size_t> DiagonalPairing::first_reaching(
    const std::vector<std::optional<std::size_t>>& thresholds, std::size_t cap) const {
  const auto t = least_reaching_tuple(thresholds);
  if (!t) return std::nullopt;
  const std::size_t s = index_of(*t);
  if (s > cap) return std::nullopt;
  return s;
}

// ---------------------------------------------------------------------------
// Sum

StageTuple SumPairing::tuple_at(std::size_t s, std::size_t arity) const {
  if (arity == 0) throw Error(Errc::InvalidArgument, "pairing arity 0");
  // tuples with sum < k number C(k - 1 + arity, arity)
  // C(k - 1 + arity, arity) <= s < C(k + arity, arity)
  const std::size_t k =
      level_search(s, [arity](std::size_t j) { return j == 0 ? std::size_t{0} : binom(j - 1 + arity, arity); });
  std::size_t rank = s - (k == 0 ? 0 : binom(k - 1 + arity, arity));
  StageTuple t(arity, 0);
  std::size_t rem = k;
  for (std::size_t i = 0; i < arity; ++i) {
    const std::size_t r = arity - i - 1;
    for (std::size_t v = 0; v <= rem; ++v) {
      const std::size_t block = sum_completions(rem - v, r);
      if (rank < block) {
        t[i] = v;
        rem -= v;
        break;
      }
      rank -= block;
    }
  }
  return t;
}

std::size_t SumPairing::index_of(const StageTuple& t) const {
  if (t.empty()) throw Error(Errc::InvalidArgument, "pairing arity 0");
  const std::size_t n = t.size();
  std::size_t k = 0;
  for (auto v : t) k += v;
  std::size_t s = k == 0 ? 0 : binom(k - 1 + n, n);
  std::size_t rem = k;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = n - i - 1;
    for (std::size_t v = 0; v < t[i]; ++v) s += sum_completions(rem - v, r);
    rem -= t[i];
  }
  return s;
}

std::optional<std::size_t> SumPairing::first_reaching(const std::vector<std::optional<std::size_t>>& thresholds,
                                                      std::size_t cap) const {
  const auto t = least_reaching_tuple(thresholds);
  if (!t) return std::nullopt;
  const std::size_t s = index_of(*t);
  if (s > cap) return std::nullopt;
  return s;
}

void check_pairing(const StagePairing& p, std::size_t arity, std::size_t side) {
  auto fail = [&](const std::string& why) {
    throw Error(Errc::PairingNotBijective, "pairing '" + p.name() + "' is not bijective: " + why);
  };
  if (p.tuple_at(0, arity) != StageTuple(arity, 0)) fail("stage 0 is not (0,...,0)");
  const std::size_t total = ipow(side, arity);
  for (std::size_t s = 0; s < total; ++s) {
    if (p.index_of(p.tuple_at(s, arity)) != s) fail("stage " + std::to_string(s) + " does not round trip");
  }
  StageTuple t(arity, 0);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rest = k;
    for (std::size_t i = 0; i < arity; ++i) {
      t[i] = rest % side;
      rest /= side;
    }
    if (p.tuple_at(p.index_of(t), arity) != t) fail("a stage tuple does not round trip");
  }
}

// ---------------------------------------------------------------------------
// Product covers

namespace {

class ProductCovers final : public CoverSource {
 public:
  ProductCovers(std::vector<StratifiedBasis> factors, std::shared_ptr<const StagePairing> pairing)
      : factors_(std::move(factors)), pairing_(std::move(pairing)) {
    std::size_t offset = 0;
    for (const auto& f : factors_) {
      offsets_.push_back(offset);
      offset += f.space().dimension();
      monotone_ = monotone_ && f.monotone();
    }
    dimension_ = offset;
  }

  std::size_t dimension() const override { return dimension_; }

  std::optional<std::size_t> stage_count() const override {
    StageTuple corner;
    for (const auto& f : factors_) {
      const auto n = f.stage_count();
      if (!n) return std::nullopt;
      corner.push_back(*n - 1);
    }
    return pairing_->index_of(corner) + 1;
  }

  Located locate(std::size_t stage, const Point& p) const override {
    require_stage(stage);
    const StageTuple t = pairing_->tuple_at(stage, factors_.size());
    Located out{{stage, {}}, {}};
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Located l = factors_[i].source().locate(clamp(i, t[i]), part(i, p));
      out.id.index.path.insert(out.id.index.path.end(), l.id.index.path.begin(), l.id.index.path.end());
      out.block.sides.insert(out.block.sides.end(), l.block.sides.begin(), l.block.sides.end());
    }
    return out;
  }

  EnumeratedCover enumerate(std::size_t stage, std::size_t limit) const override {
    require_stage(stage);
    const StageTuple t = pairing_->tuple_at(stage, factors_.size());
    EnumeratedCover out;
    out.stage = stage;
    out.blocks.push_back({{stage, {}}, {}});
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const EnumeratedCover f = factors_[i].enumerate(clamp(i, t[i]), limit);
      if (!f.complete) out.complete = false;
      std::vector<Located> next;
      for (const auto& prefix : out.blocks) {
        for (const auto& b : f.blocks) {
          if (next.size() >= limit) {
            out.complete = false;
            break;
          }
          Located l = prefix;
          l.id.index.path.insert(l.id.index.path.end(), b.id.index.path.begin(), b.id.index.path.end());
          l.block.sides.insert(l.block.sides.end(), b.block.sides.begin(), b.block.sides.end());
          next.push_back(std::move(l));
        }
      }
      out.blocks = std::move(next);
    }
    return out;
  }

  std::optional<std::size_t> first_separation(const Point& x, const Point& y, std::size_t cap) const override {
    if (!monotone_) return CoverSource::first_separation(x, y, cap);
    // separated by factor i from its stage sep_i on; the pairing finds the first tuple reaching one
    std::vector<std::optional<std::size_t>> thresholds;
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Point xi = part(i, x);
      const Point yi = part(i, y);
      if (xi == yi) {
        thresholds.emplace_back();
        continue;
      }
      thresholds.push_back(factors_[i].source().first_separation(xi, yi, kLazyStageCap));
    }
    auto s = pairing_->first_reaching(thresholds, cap);
    if (s) {
      if (auto n = stage_count(); n && *s >= *n) return std::nullopt;
    }
    return s;
  }

  RefinementTag refinement_tag(std::size_t alpha, const Point& p) const override {
    if (!monotone_) return CoverSource::refinement_tag(alpha, p);
    RefinementTag tag;
    const StageTuple m = reached(alpha);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      tag.parts.push_back(factors_[i].source().locate(m[i], part(i, p)).id.index);
    }
    return tag;
  }

  Box refinement_block(std::size_t alpha, const Point& p) const override {
    if (!monotone_) return CoverSource::refinement_block(alpha, p);
    Box b;
    const StageTuple m = reached(alpha);
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      const Box f = factors_[i].source().locate(m[i], part(i, p)).block;
      b.sides.insert(b.sides.end(), f.sides.begin(), f.sides.end());
    }
    return b;
  }

 private:
  void require_stage(std::size_t stage) const {
    if (auto n = stage_count(); n && stage >= *n) {
      throw Error(Errc::StageUnavailable, "product stage " + std::to_string(stage) + " is not available");
    }
  }

  std::size_t clamp(std::size_t i, std::size_t s) const {
    if (auto n = factors_[i].stage_count()) return std::min(s, *n - 1);
    return s;
  }

  Point part(std::size_t i, const Point& p) const {
    const std::size_t from = offsets_[i];
    const std::size_t dim = factors_[i].space().dimension();
    return Point(std::vector<Ordinal>(p.coords.begin() + static_cast<std::ptrdiff_t>(from),
                                      p.coords.begin() + static_cast<std::ptrdiff_t>(from + dim)));
  }

  /// Largest (clamped) factor stage used by product stages < alpha.
  StageTuple reached(std::size_t alpha) const {
    StageTuple m = pairing_->reached(alpha, factors_.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = clamp(i, m[i]);
    return m;
  }

  std::vector<StratifiedBasis> factors_;
  std::shared_ptr<const StagePairing> pairing_;
  std::vector<std::size_t> offsets_;
  std::size_t dimension_ = 0;
  bool monotone_ = true;
};

}  // namespace

StratifiedBasis product_basis(const std::vector<StratifiedBasis>& factors,
                              std::shared_ptr<const StagePairing> pairing) {
  if (factors.empty()) throw Error(Errc::InvalidArgument, "a product needs at least one factor");
  if (!pairing) throw Error(Errc::InvalidArgument, "missing stage pairing");
  check_pairing(*pairing, factors.size());
  std::vector<OrdinalSubspace> spaces;
  bool all_explicit = true;
  for (const auto& f : factors) {
    spaces.insert(spaces.end(), f.space().factors().begin(), f.space().factors().end());
    all_explicit = all_explicit && f.mode() == BasisMode::Explicit;
  }
  auto source = std::make_shared<ProductCovers>(factors, std::move(pairing));
  return StratifiedBasis(ProductSpace(std::move(spaces)), std::move(source),
                         all_explicit ? BasisMode::Explicit : BasisMode::Lazy);
}

StratifiedBasis product_basis(const StratifiedBasis& bx, const StratifiedBasis& by,
                              std::shared_ptr<const StagePairing> pairing) {
  return product_basis(std::vector<StratifiedBasis>{bx, by}, std::move(pairing));
}

std::pair<ProductSpace, StratifiedBasis> power_space(const StratifiedBasis& basis, std::size_t n,
                                                     std::shared_ptr<const StagePairing> pairing) {
  if (n == 0) throw Error(Errc::InvalidArgument, "power exponent must be positive");
  if (n == 1) return {basis.space(), basis};
  if (!pairing) pairing = std::make_shared<DiagonalPairing>();
  StratifiedBasis b = product_basis(std::vector<StratifiedBasis>(n, basis), std::move(pairing));
  return {b.space(), b};
}

namespace {

struct FactorCharacters {
  std::optional<CardinalValue> least_non_isolated;  // none for discrete factors
  CardinalValue least;                              // over all points
};

FactorCharacters characters(const OrdinalSubspace& x) {
  const auto& c = x.carrier();
  FactorCharacters out{std::nullopt, CardinalValue::finite(1)};
  if (auto limit = PiecewiseSet(c.intervals(), {}, c.minus_points()).first_limit()) {
    out.least_non_isolated = character_at(x, *limit);
  }
  // the least member is always isolated
  out.least = character_at(x, *c.min());
  return out;
}

}  // namespace

CardinalValue product_p_number(const std::vector<OrdinalSubspace>& factors) {
  if (factors.empty()) throw Error(Errc::InvalidArgument, "a product needs at least one factor");
  for (const auto& f : factors) {
    if (f.empty()) throw Error(Errc::EmptySpace, "P-number of an empty product");
  }
  std::vector<FactorCharacters> ch;
  for (const auto& f : factors) ch.push_back(characters(f));

  const bool discrete = std::none_of(ch.begin(), ch.end(), [](const auto& c) { return c.least_non_isolated; });
  if (discrete) {
    std::uint64_t n = 1;
    for (const auto& f : factors) {
      const auto k = f.carrier().finite_size();
      if (!k) return CardinalValue::aleph_nought();
      if (n > std::numeric_limits<std::uint64_t>::max() / *k) return CardinalValue::aleph_nought();
      n *= *k;
    }
    return CardinalValue::finite(n);
  }
  std::optional<CardinalValue> best;
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (!ch[i].least_non_isolated) continue;
    CardinalValue v = *ch[i].least_non_isolated;
    for (std::size_t j = 0; j < ch.size(); ++j) {
      if (j != i) v = std::max(v, ch[j].least);
    }
    if (!best || v < *best) best = v;
  }
  return *best;
}

}  // namespace gospace
