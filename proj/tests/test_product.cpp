#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gospace/error.hpp"
#include "gospace/order_engine.hpp"
#include "gospace/ordinal_synth.hpp"
#include "gospace/product.hpp"
#include "support/gen.hpp"

using namespace gospace;
using gospace::testing::Rng;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::InvalidArgument;
}

OrdinalSubspace space(const char* s) { return OrdinalSubspace(parse_set(s)); }
Box box2(const char* a, const char* b) { return Box({parse_set(a), parse_set(b)}); }

/// Forwards the bijection only, so the scanning defaults are exercised.
class ScanOnly final : public StagePairing {
 public:
  explicit ScanOnly(std::shared_ptr<const StagePairing> inner) : inner_(std::move(inner)) {}
  std::string name() const override { return "scan-" + inner_->name(); }
  StageTuple tuple_at(std::size_t s, std::size_t arity) const override { return inner_->tuple_at(s, arity); }
  std::size_t index_of(const StageTuple& t) const override { return inner_->index_of(t); }

 private:
  std::shared_ptr<const StagePairing> inner_;
};

/// Sends every stage past 3 to the tuple of stage 3.
class Collapsing final : public StagePairing {
 public:
  std::string name() const override { return "collapsing"; }
  StageTuple tuple_at(std::size_t s, std::size_t arity) const override { return diag_.tuple_at(std::min<std::size_t>(s, 3), arity); }
  std::size_t index_of(const StageTuple& t) const override { return diag_.index_of(t); }

 private:
  DiagonalPairing diag_;
};

/// Tuples of [0, side)^arity sorted by an independent key.
std::vector<StageTuple> grid_sorted(std::size_t arity, std::size_t side, bool by_sum) {
  std::vector<StageTuple> all;
  StageTuple t(arity, 0);
  for (;;) {
    all.push_back(t);
    std::size_t i = arity;
    while (i > 0 && ++t[i - 1] == side) t[--i] = 0;
    if (i == 0) break;
  }
  const auto key = [&](const StageTuple& u) {
    std::size_t k = 0;
    for (auto v : u) k = by_sum ? k + v : std::max(k, v);
    return k;
  };
  std::stable_sort(all.begin(), all.end(), [&](const StageTuple& a, const StageTuple& b) {
    return key(a) != key(b) ? key(a) < key(b) : a < b;
  });
  return all;
}

StratifiedBasis four_point() { return gospace::testing::finite_basis(4, {{{0, 1}, {2, 3}}, {{0}, {1}, {2}, {3}}}); }

}  // namespace

TEST_CASE("pairings enumerate the grid in their stated order") {
  for (std::size_t arity = 1; arity <= 3; ++arity) {
    const auto diag = grid_sorted(arity, 5, false);
    const auto sum = grid_sorted(arity, 5, true);
    DiagonalPairing d;
    SumPairing s;
    // the diagonal order lists each cube [0,L]^n completely before leaving it
    std::size_t cube = 0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
      const std::size_t m = *std::max_element(diag[i].begin(), diag[i].end());
      if (m == 4) break;
      REQUIRE(d.tuple_at(i, arity) == diag[i]);
      REQUIRE(d.index_of(diag[i]) == i);
      ++cube;
    }
    CHECK(cube > 0);
    for (std::size_t i = 0; i < sum.size(); ++i) {
      std::size_t total = 0;
      for (auto v : sum[i]) total += v;
      if (total >= 5) break;
      REQUIRE(s.tuple_at(i, arity) == sum[i]);
      REQUIRE(s.index_of(sum[i]) == i);
    }
    CHECK_NOTHROW(check_pairing(d, arity, 7));
    CHECK_NOTHROW(check_pairing(s, arity, 7));
  }
}

TEST_CASE("closed forms agree with scanning") {
  Rng rng(67);
  for (const auto& base : {std::shared_ptr<const StagePairing>(std::make_shared<DiagonalPairing>()),
                           std::shared_ptr<const StagePairing>(std::make_shared<SumPairing>())}) {
    const ScanOnly scan(base);
    for (int i = 0; i < 400; ++i) {
      const std::size_t arity = gospace::testing::uniform(rng, 1, 3);
      const std::size_t alpha = gospace::testing::uniform(rng, 0, 200);
      REQUIRE(base->reached(alpha, arity) == scan.reached(alpha, arity));
      std::vector<std::optional<std::size_t>> th(arity);
      for (auto& t : th) {
        if (gospace::testing::uniform(rng, 0, 3)) t = gospace::testing::uniform(rng, 0, 7);
      }
      const std::size_t cap = gospace::testing::uniform(rng, 0, 300);
      REQUIRE(base->first_reaching(th, cap) == scan.first_reaching(th, cap));
    }
  }
}

TEST_CASE("a pairing that is not a bijection is rejected") {
  const Collapsing bad;
  CHECK(code_of([&] { check_pairing(bad, 2); }) == Errc::PairingNotBijective);
  const StratifiedBasis b = four_point();
  CHECK(code_of([&] { product_basis(b, b, std::make_shared<Collapsing>()); }) == Errc::PairingNotBijective);
}

TEST_CASE("product_basis examples") {
  const StratifiedBasis w = synthesize_basis(space("[0,w]"));
  const StratifiedBasis sq = product_basis(w, w, std::make_shared<DiagonalPairing>());
  const EnumeratedCover s0 = sq.enumerate(0);
  REQUIRE(s0.blocks.size() == 1);
  CHECK(s0.blocks[0].block == box2("[0,w]", "[0,w]"));

  // the synthesized [0,w] splits first into [0,1] and (1,w]
  const std::size_t s11 = DiagonalPairing().index_of({1, 1});
  const EnumeratedCover c = sq.enumerate(s11, 16);
  REQUIRE(c.complete);
  const std::vector<Box> expect{box2("[0,1]", "[0,1]"), box2("[0,1]", "(1,w]"), box2("(1,w]", "[0,1]"),
                                box2("(1,w]", "(1,w]")};
  REQUIRE(c.blocks.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(c.blocks[i].block == expect[i]);
  for (std::size_t i = 1; i < 4; ++i) CHECK(c.blocks[i - 1].id.index < c.blocks[i].id.index);

  SUBCASE("four points paired with themselves") {
    const StratifiedBasis f = four_point();
    const StratifiedBasis ff = product_basis(f, f, std::make_shared<DiagonalPairing>());
    CHECK(ff.mode() == BasisMode::Explicit);
    const std::size_t s = DiagonalPairing().index_of({1, 1});
    const EnumeratedCover e = ff.enumerate(s);
    CHECK(e.blocks.size() == 4);
    CHECK(validate(ff, 64).clean());
  }
}

TEST_CASE("power_space") {
  const StratifiedBasis f = four_point();
  const auto [one_space, one] = power_space(f, 1);
  CHECK(one_space == f.space());
  CHECK(one.shared_source() == f.shared_source());
  CHECK(code_of([&] { power_space(f, 0); }) == Errc::InvalidArgument);

  SUBCASE("cube of the four-point system is brute-force orderable") {
    const auto [cube_space, cube] = power_space(f, 3);
    CHECK(cube_space.finite_size() == 64u);
    const RelationSet rel = brute_force_relations(cube);
    REQUIRE(rel.points.size() == 64);
    const OrderWitness w(cube);
    std::size_t less = 0;
    for (std::size_t i = 0; i < 64; ++i)
      for (std::size_t j = 0; j < 64; ++j) {
        const Verdict v = compare_points(w, rel.points[i], rel.points[j]).verdict;
        REQUIRE(v != Verdict::Unresolved);
        REQUIRE((v == Verdict::Less) == rel.less(i, j));
        less += v == Verdict::Less;
      }
    CHECK(less == 64 * 63 / 2);
  }
}

TEST_CASE("product_p_number examples") {
  CHECK(product_p_number({space("[0,w]"), space("[0,w]")}) == CardinalValue::aleph_nought());
  CHECK(product_p_number({space("{1,2,3}"), space("{4,5}")}) == CardinalValue::finite(6));
  CHECK(product_p_number({space("[0,w]"), space("{0,1}")}) == CardinalValue::aleph_nought());
  CHECK(product_p_number({space("[0,w] \\ {w}"), space("{0}")}) == CardinalValue::aleph_nought());
  CHECK(code_of([] { product_p_number({space("[0,w]"), OrdinalSubspace()}); }) == Errc::EmptySpace);
  for (const char* s : {"[0,w]", "[0,w^2] \\ {w}", "(w,w*2] | {0}"}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      CHECK(product_p_number(std::vector<OrdinalSubspace>(n, space(s))) == p_number(space(s)));
    }
  }
}

TEST_CASE("property: product stages are disjoint covers") {
  for (const auto& pairing : {std::shared_ptr<const StagePairing>(std::make_shared<DiagonalPairing>()),
                              std::shared_ptr<const StagePairing>(std::make_shared<SumPairing>())}) {
    CAPTURE(pairing->name());
    const StratifiedBasis a = synthesize_basis(space("[0,w]"));
    const StratifiedBasis b = synthesize_basis(space("(w,w^2] | {1}"));
    CHECK(validate(product_basis(a, b, pairing), 128, 12).clean());
    CHECK(validate(power_space(a, 3, pairing).second, 128, 12).clean());
  }
}

TEST_CASE("property: projection coherence") {
  const StratifiedBasis a = synthesize_basis(space("[0,w^2]"));
  const StratifiedBasis b = synthesize_basis(space("[0,w*2]"));
  const auto [sp, basis] = power_space(a, 2);
  const StratifiedBasis mixed = product_basis({a, b, a}, std::make_shared<DiagonalPairing>());
  const auto pts = sample_points(mixed.space(), 40, 3);
  const DiagonalPairing d;
  for (std::size_t alpha = 0; alpha <= 8; ++alpha) {
    const std::size_t s = d.index_of({alpha, 0, 0});
    for (const auto& p : pts) {
      const Located got = mixed.locate(s, p);
      const Located first = a.locate(alpha, Point::of(p[0]));
      CHECK(got.block.sides[0] == first.block.sides[0]);
      CHECK(got.block.sides[1] == b.space().whole().sides[0]);
      REQUIRE(got.id.index.path.size() >= first.id.index.path.size());
      CHECK(std::equal(first.id.index.path.begin(), first.id.index.path.end(), got.id.index.path.begin()));
    }
  }
}

TEST_CASE("property: the order on the square does not depend on the pairing") {
  const StratifiedBasis w = synthesize_basis(space("[0,w]"));
  for (const auto& pairing : {std::shared_ptr<const StagePairing>(std::make_shared<DiagonalPairing>()),
                              std::shared_ptr<const StagePairing>(std::make_shared<SumPairing>())}) {
    CAPTURE(pairing->name());
    const auto [sp, b] = power_space(w, 2, pairing);
    const OrderWitness o(b);
    const auto pts = sample_points(sp, 30, 3);
    CHECK(check_axioms(o, pts).clean());
    for (std::size_t a = 1; a <= 6; ++a) CHECK(check_convexity(o, a, pts).clean());
    CHECK(order_violations(o, sort_sample(o, pts)) == 0);
    CHECK(check_basis_property(o, basic_neighborhoods(sp, pts, 3)).clean());
  }
}
