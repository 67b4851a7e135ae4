#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "gospace/error.hpp"
#include "gospace/order_engine.hpp"
#include "gospace/ordinal_synth.hpp"
#include "support/gen.hpp"

using namespace gospace;
using gospace::testing::Rng;

namespace {

Ordinal ord(const char* s) { return parse_ordinal(s); }
OrdinalSubspace space(const char* s) { return OrdinalSubspace(parse_set(s)); }
Point at(const char* s) { return Point::of(parse_ordinal(s)); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return Errc::InvalidArgument;
}

std::vector<std::string> stage_text(const StratifiedBasis& b, std::size_t stage, std::size_t limit = 16) {
  std::vector<std::string> out;
  for (const auto& l : b.enumerate(stage, limit).blocks) out.push_back(format_box(l.block));
  return out;
}

const char* const kAssorted[] = {
    "[0,w]",           "[0,w*2]",       "[0,w^2]",          "[0,w^3]",          "[0,w^w]",
    "(w,w^2]",         "[0,w^2] \\ {w}", "[0,w^3] \\ {w^2, w*3, w^2*2+w}",         "{1,3,5}",
    "[0,w] \\ {w}",    "{w, w*2, w^2}",  "[0,5] | (w,w*2] | {w^2}",               "(w^2,w^3] \\ {w^2+w}",
    "[0,w^2*2+w*3+4]", "(3,w*5] | (w^2+w, w^2*2]",                                "{0, w, w^2, w^3}",
    "[0,w^3] \\ {w^3}", "(w*2,w*7] \\ {w*3, w*3+1, w*5}", "[0,w^2] | (w^2+1, w^2+w]", "{7} | (w^2*2, w^3]",
};

}  // namespace

TEST_CASE("synthesis examples") {
  SUBCASE("a single point") {
    const StratifiedBasis b = synthesize_basis(space("{5}"));
    for (std::size_t s = 0; s <= 3; ++s) CHECK(stage_text(b, s) == std::vector<std::string>{"{5}"});
    CHECK(analyze(parse_set("{5}")).kind == NodeKind::Leaf);
  }
  SUBCASE("[0,w] peels one tail per stage") {
    const StratifiedBasis b = synthesize_basis(space("[0,w]"));
    CHECK(stage_text(b, 1) == std::vector<std::string>{"[0,1]", "(1,w]"});
    CHECK(stage_text(b, 2) == std::vector<std::string>{"{0}", "{1}", "{2}", "(2,w]"});
    CHECK(stage_text(b, 3) == std::vector<std::string>{"{0}", "{1}", "{2}", "{3}", "(3,w]"});
  }
  SUBCASE("[0,w*2] cuts at w+1 first") {
    const StratifiedBasis b = synthesize_basis(space("[0,w*2]"));
    CHECK(stage_text(b, 1) == std::vector<std::string>{"[0,w + 1]", "(w + 1,w*2]"});
    const DecompositionNode root = analyze(parse_set("[0,w*2]"));
    CHECK(root.kind == NodeKind::TailPeel);
    CHECK(*root.cut == ord("w+1"));
  }
  CHECK(code_of([] { synthesize_basis(OrdinalSubspace()); }) == Errc::EmptySpace);
  CHECK(code_of([] { analyze(PiecewiseSet()); }) == Errc::EmptySpace);
}

TEST_CASE("node kinds") {
  CHECK(analyze(parse_set("{2,4,9}")).kind == NodeKind::Finite);
  CHECK(analyze(parse_set("{2,4,9}")).size == 3);
  CHECK(analyze(parse_set("[0,w] \\ {w}")).kind == NodeKind::FreeSum);
  CHECK(analyze(parse_set("[0,w^2] \\ {w^2}")).kind == NodeKind::FreeSum);
  CHECK(analyze(parse_set("[0,w+1]")).kind == NodeKind::TopPoint);
  CHECK(analyze(parse_set("[0,w^2]")).kind == NodeKind::TailPeel);
  const DecompositionNode fs = analyze(parse_set("(w+3,w*2] \\ {w*2}"));
  CHECK(fs.kind == NodeKind::FreeSum);
  CHECK(fs.child(0).min() == ord("w+4"));
}

TEST_CASE("decomposition_dump examples") {
  CHECK(decomposition_dump(space("{5}"), 1) == "Leaf {5}\n");
  const std::string w = decomposition_dump(space("[0,w]"), 2);
  CHECK(w.rfind("TailPeel [0,w] max w cut 1\n", 0) == 0);
  CHECK(w.find("  #0 Finite [0,1] size 2\n") != std::string::npos);
  CHECK(w.find("  #1 TailPeel (1,w] max w cut 2\n") != std::string::npos);
  const std::string sq = decomposition_dump(space("[0,w^2] \\ {w^2}"), 3);
  CHECK(sq.rfind("FreeSum", 0) == 0);
  CHECK(sq.find("TailPeel") != std::string::npos);
  CHECK(sq.find("...") != std::string::npos);
  CHECK(code_of([] { decomposition_dump(space("[0,w]"), 0); }) == Errc::InvalidArgument);
  CHECK(decomposition_dump(space("[0,w^3]"), 4) == decomposition_dump(space("[0,w^3]"), 4));
}

TEST_CASE("check_conditions") {
  for (const char* s : {"{1,3,5}", "[0,w^2]", "[0,w]", "[0,w^w] \\ {w}"}) {
    CAPTURE(s);
    const ConditionReport r = check_conditions(space(s));
    CHECK(r.stationary_free);
    CHECK(r.justification == "ambient ordinal countable");
    CHECK(r.char_homogeneous);
    CHECK_FALSE(r.witness.has_value());
  }
  CHECK(code_of([] { check_conditions(OrdinalSubspace()); }) == Errc::EmptySpace);

  SUBCASE("mixed characters from a mock produce a witness") {
    std::map<Ordinal, CardinalValue> table{{ord("w"), CardinalValue::aleph_nought()},
                                           {ord("w*2"), CardinalValue::aleph_nought()},
                                           {ord("w*3"), CardinalValue::finite(7)}};
    const ConditionReport r = character_homogeneity({ord("w"), ord("w*2"), ord("w*3")},
                                                    [&](const Ordinal& x) { return table.at(x); });
    CHECK_FALSE(r.char_homogeneous);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->first == ord("w"));
    CHECK(r.witness->second == ord("w*3"));
    const ConditionReport ok =
        character_homogeneity({ord("w"), ord("w*2")}, [&](const Ordinal& x) { return table.at(x); });
    CHECK(ok.char_homogeneous);
  }
}

TEST_CASE("property: children partition their node into clopen traces") {
  Rng rng(71);
  for (int i = 0; i < 400; ++i) {
    const PiecewiseSet s = gospace::testing::random_grid_set(rng, 20);
    const DecompositionNode n = analyze(s);
    const std::uint64_t k = n.child_count().value_or(6);
    PiecewiseSet joined;
    for (std::uint64_t c = 0; c < k; ++c) {
      const PiecewiseSet ch = n.child(c);
      REQUIRE_FALSE(ch.empty());
      REQUIRE(ch.intersect(joined).empty());
      REQUIRE(ch.is_subset_of(s));
      REQUIRE(is_clopen_in(ch, s));
      for (const auto& e : sample(OrdinalSubspace(ch), 24, 2)) REQUIRE(n.child_of(e) == c);
      joined = joined.unite(ch);
    }
    if (n.child_count()) {
      REQUIRE((n.kind == NodeKind::Leaf || joined == s));
    } else {
      REQUIRE(n.kind == NodeKind::FreeSum);
      for (std::uint64_t c = 1; c < 8; ++c) REQUIRE(n.cut_after(c - 1) < n.cut_after(c));
      REQUIRE(n.cut_after(7) < *n.top);
      REQUIRE(*n.top == *s.sup());
    }
  }
}

TEST_CASE("stage validity to stage 12") {
  for (const char* s : {"[0,w]", "[0,w*2]", "[0,w^2]", "[0,w^3]", "[0,w^w]"}) {
    CAPTURE(s);
    const ValidationReport r = validate(synthesize_basis(space(s)), 96, 12);
    CHECK(r.stages_checked == 13);
    CHECK(r.clean());
  }
}

TEST_CASE("every sampled pair separates, in ordinal order") {
  for (const char* s : kAssorted) {
    CAPTURE(s);
    const OrdinalSubspace x = space(s);
    const OrderWitness w(synthesize_basis(x));
    const auto pts = sample(x, 100, 3);
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        const Comparison c = compare_points(w, Point::of(pts[i]), Point::of(pts[j]));
        REQUIRE(c.verdict == Verdict::Less);
      }
  }
}

TEST_CASE("basis property on [0,w^2]") {
  const OrdinalSubspace x = space("[0,w^2]");
  const OrderWitness w(synthesize_basis(x));
  const auto pts = sample_points(ProductSpace(x), 100, 3);
  REQUIRE(pts.size() == 100);
  const BasisReport r = check_basis_property(w, basic_neighborhoods(w.basis.space(), pts, 1));
  CHECK(r.cases.size() == 100);
  CHECK(r.clean());
}

TEST_CASE("discrete spaces end in singletons") {
  for (const char* s : {"{1,3,5,w+1}", "[0,w] \\ {w}", "{w, w*2, w*3+4}"}) {
    CAPTURE(s);
    const OrdinalSubspace x = space(s);
    const OrderWitness w(synthesize_basis(x));
    const auto pts = sample(x, 30, 2);
    for (const auto& p : pts) {
      bool single = false;
      for (std::size_t stage = 0; stage <= 64 && !single; ++stage) {
        single = w.basis.locate(stage, Point::of(p)).block == Box({PiecewiseSet::point(p)});
      }
      CHECK(single);
    }
    std::vector<Point> sp;
    for (const auto& p : pts) sp.push_back(Point::of(p));
    CHECK(order_violations(w, sort_sample(w, sp)) == 0);
  }
}

TEST_CASE("the order on X and X^2 passes the suites for assorted X") {
  for (const char* s : {"[0,w*2]", "[0,w^2] \\ {w}", "{1,3,5}", "(w,w^2]"}) {
    CAPTURE(s);
    const OrdinalSubspace x = space(s);
    const OrderWitness w(synthesize_basis(x));
    const auto pts = sample_points(ProductSpace(x), 30, 3);
    CHECK(check_axioms(w, pts).clean());
    CHECK(check_convexity(w, 4, pts).clean());
  }
}
