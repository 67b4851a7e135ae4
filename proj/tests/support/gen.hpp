#pragma once

// Hand-rolled generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "gospace/ordinal.hpp"
#include "gospace/piecewise_set.hpp"
#include "gospace/strata.hpp"

namespace gospace::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

/// w^2*a + w*b + c, compared and added as plain integer triples.
struct Triple {
  std::uint64_t a = 0, b = 0, c = 0;

  Ordinal to_ordinal() const {
    Ordinal out = Ordinal::zero();
    if (a) out = out + Ordinal::omega_power(Ordinal::natural(2), a);
    if (b) out = out + Ordinal::omega_power(Ordinal::natural(1), b);
    if (c) out = out + Ordinal::natural(c);
    return out;
  }
  bool is_limit() const { return c == 0 && (a || b); }

  friend auto operator<=>(const Triple&, const Triple&) = default;
};

inline Triple triple_add(const Triple& x, const Triple& y) {
  if (y.a) return {x.a + y.a, y.b, y.c};
  if (y.b) return {x.a, x.b + y.b, y.c};
  return {x.a, x.b, x.c + y.c};
}

/// x[n] for a limit triple.
inline Triple triple_fund(const Triple& x, std::uint64_t n) {
  if (x.b) return {x.a, x.b - 1, n};
  return {x.a - 1, n, 0};
}

inline Triple random_triple(Rng& rng, std::uint64_t max_coef = 5) {
  return {uniform(rng, 0, max_coef), uniform(rng, 0, max_coef), uniform(rng, 0, max_coef)};
}

/// Random ordinal below w^w^2 with up to `terms` CNF terms.
inline Ordinal random_ordinal(Rng& rng, int depth = 2, int terms = 3) {
  const int k = static_cast<int>(uniform(rng, 0, static_cast<std::uint64_t>(terms)));
  Ordinal out = Ordinal::zero();
  for (int i = 0; i < k; ++i) {
    const Ordinal e = depth > 0 ? random_ordinal(rng, depth - 1, 2) : Ordinal::natural(uniform(rng, 0, 3));
    out = out + Ordinal::omega_power(e, uniform(rng, 1, 4));
  }
  return out;
}

inline Ordinal random_limit(Rng& rng) {
  for (;;) {
    Ordinal a = random_ordinal(rng);
    if (a.is_limit()) return a;
  }
}

/// Random set whose endpoints lie on the grid w*a + b, a <= 3, b <= maxb.
inline PiecewiseSet random_grid_set(Rng& rng, std::uint64_t maxb = 100) {
  const auto grid = [&] {
    return Triple{0, uniform(rng, 0, 3), uniform(rng, 0, maxb)}.to_ordinal();
  };
  PiecewiseSet s;
  const int pieces = static_cast<int>(uniform(rng, 1, 4));
  for (int i = 0; i < pieces; ++i) {
    switch (uniform(rng, 0, 3)) {
      case 0: {
        Ordinal lo = grid(), hi = grid();
        if (hi < lo) std::swap(lo, hi);
        if (lo < hi) s = s.unite(PiecewiseSet::interval(lo, hi));
        break;
      }
      case 1:
        s = s.unite(PiecewiseSet::segment(grid()));
        break;
      case 2:
        s = s.subtract(PiecewiseSet::point(grid()));
        break;
      default:
        s = s.unite(PiecewiseSet::points({grid(), grid()}));
        break;
    }
  }
  if (s.empty()) s = PiecewiseSet::point(Ordinal::zero());
  return s;
}

/// A random partition of 0..n-1 into at most `max_blocks` nonempty blocks,
/// blocks listed in random order.
inline std::vector<std::vector<std::size_t>> random_partition(Rng& rng, std::size_t n, std::size_t max_blocks) {
  std::vector<std::vector<std::size_t>> blocks(uniform(rng, 1, std::min(n, max_blocks)));
  for (std::size_t i = 0; i < n; ++i) blocks[i < blocks.size() ? i : uniform(rng, 0, blocks.size() - 1)].push_back(i);
  std::shuffle(blocks.begin(), blocks.end(), rng);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  return blocks;
}

/// Explicit basis on the points {0..n-1} from index partitions, one per stage.
inline StratifiedBasis finite_basis(std::size_t n, const std::vector<std::vector<std::vector<std::size_t>>>& stages) {
  std::vector<std::vector<PiecewiseSet>> covers;
  for (const auto& st : stages) {
    std::vector<PiecewiseSet> cover;
    for (const auto& block : st) {
      std::vector<Ordinal> pts;
      for (auto i : block) pts.push_back(Ordinal::natural(i));
      cover.push_back(PiecewiseSet::points(pts));
    }
    covers.push_back(cover);
  }
  return StratifiedBasis::explicit_basis(OrdinalSubspace(PiecewiseSet::interval(std::nullopt, Ordinal::natural(n - 1))),
                                         covers);
}

/// All set partitions of 0..n-1, blocks ordered by least element.
inline std::vector<std::vector<std::vector<std::size_t>>> all_partitions(std::size_t n) {
  std::vector<std::vector<std::vector<std::size_t>>> out;
  std::vector<std::size_t> label(n, 0);
  // restricted growth strings
  const auto emit = [&] {
    std::size_t k = 0;
    for (auto l : label) k = std::max(k, l + 1);
    std::vector<std::vector<std::size_t>> p(k);
    for (std::size_t i = 0; i < n; ++i) p[label[i]].push_back(i);
    out.push_back(p);
  };
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
    if (i == n) {
      emit();
      return;
    }
    for (std::size_t l = 0; l <= used && l < n; ++l) {
      label[i] = l;
      rec(i + 1, std::max(used, l + 1));
    }
  };
  if (n) rec(1, 1);
  return out;
}

}  // namespace gospace::testing
