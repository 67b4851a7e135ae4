#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gospace/error.hpp"
#include "gospace/ordinal.hpp"
#include "support/gen.hpp"

using namespace gospace;
using gospace::testing::Rng;
using gospace::testing::Triple;

namespace {

Ordinal ord(const char* s) { return parse_ordinal(s); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::InvalidArgument;
}

}  // namespace

TEST_CASE("compare_ordinals examples") {
  CHECK(compare_ordinals(ord("w"), ord("w")) == std::strong_ordering::equal);
  CHECK(compare_ordinals(ord("w*2+3"), ord("w^2")) == std::strong_ordering::less);
  CHECK(compare_ordinals(ord("w^2*2"), ord("w^2+w*5")) == std::strong_ordering::greater);
}

TEST_CASE("add_ordinals examples") {
  CHECK(ord("1") + ord("w") == ord("w"));
  CHECK(ord("w") + ord("1") == ord("w+1"));
  CHECK(ord("w+3") + ord("w*2") == ord("w*3"));
  CHECK(ord("w^2") + Ordinal::zero() == ord("w^2"));
  CHECK(Ordinal::zero() + ord("w^2") == ord("w^2"));
}

TEST_CASE("classify and cofinality") {
  CHECK(classify(Ordinal::zero()).tag == OrdinalKindTag::Zero);
  const OrdinalKind k = classify(ord("w+1"));
  CHECK(k.tag == OrdinalKindTag::Successor);
  CHECK(*k.predecessor == ord("w"));
  CHECK(classify(ord("w^2")).tag == OrdinalKindTag::Limit);

  CHECK(cofinality(Ordinal::zero()) == CardinalValue::finite(0));
  CHECK(cofinality(ord("5")) == CardinalValue::finite(1));
  CHECK(cofinality(ord("w")) == CardinalValue::aleph_nought());
  CHECK(cofinality(ord("w^w*3 + w^2")) == CardinalValue::aleph_nought());
}

TEST_CASE("fundamental_sequence examples") {
  CHECK(fundamental_sequence(ord("w"), 3) == ord("3"));
  CHECK(fundamental_sequence(ord("w^2"), 3) == ord("w*3"));
  CHECK(fundamental_sequence(ord("w^w"), 2) == ord("w^2"));
  CHECK(fundamental_sequence(ord("w^w*3 + w^2"), 4) == ord("w^w*3 + w*4"));
  CHECK(fundamental_sequence(ord("w^(w+1)"), 2) == ord("w^w*2"));
  CHECK(code_of([] { fundamental_sequence(ord("w+1"), 1); }) == Errc::NotALimit);
  CHECK(code_of([] { fundamental_sequence(Ordinal::zero(), 1); }) == Errc::NotALimit);
}

TEST_CASE("fundamental_index_at_least is the least index reaching x") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Ordinal a = gospace::testing::random_limit(rng);
    const Ordinal x = fundamental_sequence(a, gospace::testing::uniform(rng, 1, 9)) + ord("1");
    const std::uint64_t n = fundamental_index_at_least(a, x);
    REQUIRE(n >= 1);
    CHECK(fundamental_sequence(a, n) >= x);
    if (n > 1) CHECK(fundamental_sequence(a, n - 1) < x);
  }
}

TEST_CASE("parse and format") {
  const Ordinal a = ord("w^2*3 + w + 4");
  REQUIRE(a.terms().size() == 3);
  CHECK(a.terms()[0].exponent == Ordinal::natural(2));
  CHECK(a.terms()[0].coefficient == 3);
  CHECK(a.terms()[1].exponent == Ordinal::natural(1));
  CHECK(a.terms()[1].coefficient == 1);
  CHECK(a.terms()[2].exponent == Ordinal::zero());
  CHECK(a.terms()[2].coefficient == 4);
  CHECK(ord("0").is_zero());
  CHECK(ord("w + w^2") == ord("w^2"));
  CHECK(ord("  w ^ 2 ") == ord("w^2"));

  SUBCASE("syntax errors carry a position") {
    for (const char* bad : {"", "w^", "w*", "w*0", "2+", "x", "w^2 3", "(w", "w^(2"}) {
      CAPTURE(bad);
      try {
        parse_ordinal(bad);
        FAIL("accepted");
      } catch (const ParseError& e) {
        CHECK(e.position() <= std::string(bad).size());
      }
    }
  }
}

TEST_CASE("triple oracle: exhaustive grid below w^3") {
  // coefficients <= 4 on every coordinate
  std::vector<Triple> grid;
  for (std::uint64_t a = 0; a <= 4; ++a)
    for (std::uint64_t b = 0; b <= 4; ++b)
      for (std::uint64_t c = 0; c <= 4; ++c) grid.push_back({a, b, c});
  std::vector<Ordinal> ords;
  for (const auto& t : grid) ords.push_back(t.to_ordinal());

  std::size_t disagreements = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = 0; j < grid.size(); ++j) {
      if ((grid[i] <=> grid[j]) != compare_ordinals(ords[i], ords[j])) ++disagreements;
      if (gospace::testing::triple_add(grid[i], grid[j]).to_ordinal() != ords[i] + ords[j]) ++disagreements;
    }
    if (grid[i].is_limit()) {
      for (std::uint64_t n = 1; n <= 6; ++n) {
        if (gospace::testing::triple_fund(grid[i], n).to_ordinal() != fundamental_sequence(ords[i], n)) ++disagreements;
      }
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("property: comparison is a strict total order") {
  Rng rng(11);
  for (int i = 0; i < 10000; ++i) {
    const Ordinal a = gospace::testing::random_ordinal(rng);
    const Ordinal b = gospace::testing::random_ordinal(rng);
    const Ordinal c = gospace::testing::random_ordinal(rng);
    const auto ab = compare_ordinals(a, b);
    REQUIRE(compare_ordinals(b, a) == 0 <=> ab);
    REQUIRE((ab == 0) == (a == b));
    if (a < b && b < c) REQUIRE(a < c);
  }
}

TEST_CASE("property: addition") {
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Ordinal a = gospace::testing::random_ordinal(rng);
    const Ordinal b = gospace::testing::random_ordinal(rng);
    const Ordinal c = gospace::testing::random_ordinal(rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE(a + b >= b);
    REQUIRE(a + b >= a);
    const OrdinalKind k = classify(a + Ordinal::natural(1));
    REQUIRE(k.tag == OrdinalKindTag::Successor);
    REQUIRE(*k.predecessor == a);
    REQUIRE(a.successor() == a + Ordinal::natural(1));
  }
}

TEST_CASE("property: fundamental sequences increase to their limit") {
  Rng rng(17);
  std::size_t violations = 0;
  for (int i = 0; i < 100; ++i) {
    const Ordinal a = gospace::testing::random_limit(rng);
    Ordinal prev = fundamental_sequence(a, 1);
    for (std::uint64_t n = 2; n <= 51; ++n) {
      const Ordinal next = fundamental_sequence(a, n);
      if (!(prev < next && next < a)) ++violations;
      prev = next;
    }
    // every smaller ordinal is eventually passed
    const Ordinal below = fundamental_sequence(a, 3) + ord("2");
    if (!(fundamental_sequence(a, fundamental_index_at_least(a, below)) >= below)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("property: format round-trips") {
  Rng rng(19);
  for (int i = 0; i < 3000; ++i) {
    const Ordinal a = gospace::testing::random_ordinal(rng, 3, 4);
    REQUIRE(parse_ordinal(format_ordinal(a)) == a);
  }
}
