#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "gospace/cli.hpp"
#include "gospace/ordinal_space.hpp"
#include "support/golden.hpp"

using namespace gospace;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string line_value(const std::string& text, const std::string& key) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l.rfind(key + "\t", 0) == 0) return l.substr(key.size() + 1);
  }
  return "<none>";
}

}  // namespace

TEST_CASE("documented examples") {
  const Result a = run({"ord", "cmp", "w*2+3", "w^2"});
  CHECK(a.code == cli::kOk);
  CHECK(a.out == "Less\n");

  const Result b = run({"space", "info", "[0,w]"});
  CHECK(b.code == cli::kOk);
  CHECK(b.out.find("P-number: aleph0; non-isolated points in sample: {w}\n") != std::string::npos);

  const Result c = run({"verify", "[0,w]", "--suite", "axioms", "--samples", "30", "--seed", "0"});
  CHECK(c.code == cli::kOk);
  CHECK(c.out.find("A1..A5: 0 violations") != std::string::npos);
}

TEST_CASE("defaults") {
  const cli::RunConfig cfg;
  CHECK(cfg.depth == 8);
  CHECK(cfg.budget == 64);
  CHECK(cfg.seed == 0);
  CHECK(cfg.mode == CoverMode::Strict);
  CHECK(cfg.format == cli::OutputFormat::Human);
}

TEST_CASE("exit codes") {
  CHECK(run({"ord", "cmp", "w^", "1"}).code == cli::kUsage);
  CHECK(run({"ord", "fund", "w", "0"}).code == cli::kUsage);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"verify", "[0,w]", "--suite", "nope"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);
  CHECK(run({"basis", "validate", "/nonexistent/file.basis"}).code == cli::kUsage);
  const std::string overlap = testing::golden_dir() + "/overlap.basis";
  CHECK(run({"basis", "validate", overlap}).code == cli::kViolations);
  const std::string coarse = testing::golden_dir() + "/coarse.basis";
  CHECK(run({"order", "cmp", "[0,3]", "0", "1", "--basis", coarse}).code == cli::kUnresolved);
  CHECK(run({"order", "cmp", "[0,3]", "0", "1", "--basis", coarse, "--permissive"}).code == cli::kOk);
  CHECK(run({"order", "sort", "[0,3]", "--basis", coarse}).code == cli::kUnresolved);
}

TEST_CASE("usage errors name the token and position") {
  const Result r = run({"space", "info", "[0,w] | (w,q]"});
  CHECK(r.code == cli::kUsage);
  CHECK(r.err.find("position 11") != std::string::npos);
  CHECK(r.err.find("'q]'") != std::string::npos);
}

TEST_CASE("echoed spaces re-parse to the same space") {
  for (const char* s : {"[0,w]", "[0,w^2] \\ {w*2}", "(w,w*3] | {1,2}", "{w^w+1, 0}", "[0,w+w^2]"}) {
    CAPTURE(s);
    const Result r = run({"--format", "line", "space", "info", s});
    REQUIRE(r.code == cli::kOk);
    CHECK(parse_space(line_value(r.out, "space")) == parse_space(s));
  }
}

TEST_CASE("line format is key<TAB>value") {
  const Result r = run({"--format", "line", "power", "[0,w]", "2"});
  REQUIRE(r.code == cli::kOk);
  std::istringstream in(r.out);
  for (std::string l; std::getline(in, l);) CHECK(l.find('\t') != std::string::npos);
  CHECK(line_value(r.out, "p_number") == "aleph0");
}

TEST_CASE("golden transcripts") {
  const auto invocations = testing::load_invocations();
  CHECK(invocations.size() >= 20);
  for (const auto& inv : invocations) {
    CAPTURE(inv.name);
    const std::string first = testing::transcript(inv);
    const std::string second = testing::transcript(inv);
    CHECK(first == second);
    if (testing::updating_golden()) {
      testing::write_text(testing::golden_path(inv), first);
    } else {
      CHECK(first == testing::read_text(testing::golden_path(inv)));
    }
  }
}
