#include "gospace/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "gospace/error.hpp"
#include "gospace/order_engine.hpp"
#include "gospace/ordinal_synth.hpp"
#include "gospace/product.hpp"

namespace gospace::cli {

namespace {

constexpr std::size_t kStageBlocksShown = 8;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Runs a DSL parser, turning parse failures into usage errors that quote
/// the offending token and its position.
template <class F>
auto parse_operand(const std::string& what, const std::string& text, F parse) -> decltype(parse(text)) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    const std::size_t pos = std::min(e.position(), text.size());
    const std::string token = pos < text.size() ? "'" + text.substr(pos, 8) + "'" : "end of input";
    throw UsageError("cannot parse " + what + " \"" + text + "\" at position " + std::to_string(pos) + " (" + token +
                     "): " + e.what());
  }
}

OrdinalSubspace space_of(const std::string& text) {
  OrdinalSubspace x = parse_operand("space", text, [](const std::string& t) { return parse_space(t); });
  if (x.empty()) throw UsageError("space \"" + text + "\" is empty");
  return x;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read basis file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join_points(const std::vector<Point>& pts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += sep;
    out += format_point(pts[i]);
  }
  return out;
}

std::string join_ordinals(const std::vector<Ordinal>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += format_ordinal(xs[i]);
  }
  return out;
}

/// Writes `key: value` or `key<TAB>value`.
class Emitter {
 public:
  Emitter(std::ostream& os, OutputFormat f) : os_(os), line_(f == OutputFormat::Line) {}

  void fact(const std::string& key, const std::string& human_key, const std::string& value) {
    if (line_) {
      os_ << key << "\t" << value << "\n";
    } else {
      os_ << human_key << ": " << value << "\n";
    }
  }
  bool line() const { return line_; }
  std::ostream& raw() { return os_; }

 private:
  std::ostream& os_;
  bool line_;
};

struct Context {
  RunConfig cfg;
  std::string basis_file;
  std::string suite = "axioms";
  std::string pairing = "diagonal";
  bool verify = false;
  std::uint64_t count = 0;
  std::ostream* out = nullptr;
  std::ostream* err = nullptr;
};

StratifiedBasis basis_for(const Context& c, const OrdinalSubspace& x) {
  if (c.basis_file.empty()) return synthesize_basis(x);
  const std::string text = read_file(c.basis_file);
  return parse_operand("basis file", c.basis_file, [&](const std::string&) {
    return parse_explicit_basis(text, c.cfg.mode, x);
  });
}

std::shared_ptr<const StagePairing> pairing_of(const std::string& name) {
  if (name == "sum") return std::make_shared<SumPairing>();
  return std::make_shared<DiagonalPairing>();
}

// ---------------------------------------------------------------------------
// Commands

int ord_cmp(Context& c) {
  const auto parse = [](const std::string& t) { return parse_ordinal(t); };
  const Ordinal a = parse_operand("ordinal", c.cfg.operands[0], parse);
  const Ordinal b = parse_operand("ordinal", c.cfg.operands[1], parse);
  const auto r = compare_ordinals(a, b);
  const char* v = r < 0 ? "Less" : r > 0 ? "Greater" : "Equal";
  if (c.cfg.format == OutputFormat::Line) {
    *c.out << "result\t" << v << "\n";
  } else {
    *c.out << v << "\n";
  }
  return kOk;
}

int ord_fund(Context& c) {
  const Ordinal a = parse_operand("ordinal", c.cfg.operands[0], [](const std::string& t) { return parse_ordinal(t); });
  if (c.count == 0) throw UsageError("the sequence index must be at least 1");
  const std::string v = format_ordinal(fundamental_sequence(a, c.count));
  if (c.cfg.format == OutputFormat::Line) {
    *c.out << "result\t" << v << "\n";
  } else {
    *c.out << v << "\n";
  }
  return kOk;
}

int space_info(Context& c) {
  const OrdinalSubspace x = space_of(c.cfg.operands[0]);
  const std::vector<Ordinal> pts = sample(x, c.cfg.budget, c.cfg.depth, c.cfg.seed);
  std::vector<Ordinal> limits;
  std::size_t isolated = 0;
  for (const auto& p : pts) {
    if (is_isolated(x, p)) {
      ++isolated;
    } else {
      limits.push_back(p);
    }
  }
  const std::string pn = p_number(x).to_string();
  Emitter e(*c.out, c.cfg.format);
  e.fact("space", "space", format_space(x));
  if (e.line()) {
    e.fact("p_number", "", pn);
    e.fact("non_isolated", "", join_ordinals(limits, ","));
  } else {
    *c.out << "P-number: " << pn << "; non-isolated points in sample: {" << join_ordinals(limits, ", ") << "}\n";
  }
  e.fact("discrete", "discrete", is_discrete(x) ? "yes" : "no");
  e.fact("sampled", "sampled points", std::to_string(pts.size()));
  e.fact("isolated", "isolated points in sample", std::to_string(isolated));
  return kOk;
}

std::string stage_text(const EnumeratedCover& cover, bool line) {
  std::string out;
  const std::size_t shown = std::min(cover.blocks.size(), kStageBlocksShown);
  for (std::size_t i = 0; i < shown; ++i) {
    if (i) out += line ? "\t" : " ; ";
    out += format_box(cover.blocks[i].block);
  }
  if (!cover.complete || cover.blocks.size() > shown) out += line ? "\t..." : " ; ...";
  return out;
}

int basis_synth(Context& c) {
  const OrdinalSubspace x = space_of(c.cfg.operands[0]);
  const ConditionReport cond = check_conditions(x);
  const StratifiedBasis b = synthesize_basis(x);
  Emitter e(*c.out, c.cfg.format);
  e.fact("space", "space", format_space(x));
  e.fact("stationary_free", "stationary-free",
         std::string(cond.stationary_free ? "yes" : "no") + " (" + cond.justification + ")");
  e.fact("character_homogeneous", "character-homogeneous", cond.char_homogeneous ? "yes" : "no");
  for (std::size_t s = 0; s <= c.cfg.depth; ++s) {
    const EnumeratedCover cover = b.enumerate(s, kStageBlocksShown + 1);
    const bool line = e.line();
    if (line) {
      *c.out << "stage\t" << s << "\t" << stage_text(cover, true) << "\n";
    } else {
      *c.out << "stage " << s << ": " << stage_text(cover, false) << "\n";
    }
  }
  const ValidationReport r = validate(b, c.cfg.budget, c.cfg.depth, c.cfg.seed);
  e.fact("violations", "validation violations", std::to_string(r.violations.size()));
  return r.clean() && cond.char_homogeneous ? kOk : kViolations;
}

int basis_validate(Context& c) {
  const std::string& path = c.cfg.operands[0];
  const std::string text = read_file(path);
  const StratifiedBasis b = parse_operand("basis file", path, [&](const std::string&) {
    return parse_explicit_basis(text, c.cfg.mode);
  });
  const ValidationReport r = validate(b, c.cfg.budget, c.cfg.depth, c.cfg.seed);
  Emitter e(*c.out, c.cfg.format);
  e.fact("space", "space", format_product_space(b.space()));
  *c.out << format_validation(r, e.line());
  return r.clean() ? kOk : kViolations;
}

int order_cmp(Context& c) {
  const OrdinalSubspace x = space_of(c.cfg.operands[0]);
  const auto parse = [](const std::string& t) { return parse_point(t); };
  const Point p = parse_operand("point", c.cfg.operands[1], parse);
  const Point q = parse_operand("point", c.cfg.operands[2], parse);
  const OrderWitness w(basis_for(c, x));
  const Comparison r = explain_points(w, p, q);
  Emitter e(*c.out, c.cfg.format);
  if (e.line()) {
    e.fact("result", "", std::string(verdict_name(r.verdict)));
  } else {
    *c.out << verdict_name(r.verdict) << "\n";
  }
  if (r.verdict == Verdict::Unresolved) {
    e.fact("stages_tried", "stages tried", std::to_string(r.stage));
    return c.cfg.mode == CoverMode::Strict ? kUnresolved : kOk;
  }
  if (r.verdict != Verdict::Equal) {
    e.fact("stage", "separation stage", std::to_string(r.stage));
    e.fact("blocks", "blocks", format_index(*r.index_x) + " vs " + format_index(*r.index_y));
  }
  return kOk;
}

int order_sort(Context& c) {
  const OrdinalSubspace x = space_of(c.cfg.operands[0]);
  const OrderWitness w(basis_for(c, x));
  const std::vector<Point> pts = sample_points(x, c.cfg.budget, c.cfg.depth, c.cfg.seed);
  std::vector<Point> sorted;
  try {
    sorted = sort_sample(w, pts);
  } catch (const Error& ex) {
    if (ex.code() != Errc::UnresolvedPair) throw;
    *c.err << "unresolved: " << ex.what() << "\n";
    return c.cfg.mode == CoverMode::Strict ? kUnresolved : kOk;
  }
  const std::size_t bad = order_violations(w, sorted);
  Emitter e(*c.out, c.cfg.format);
  e.fact("sorted", "sorted", join_points(sorted, e.line() ? "," : ", "));
  e.fact("points", "points", std::to_string(sorted.size()));
  e.fact("order_violations", "all-pairs violations", std::to_string(bad));
  return bad == 0 ? kOk : kViolations;
}

std::size_t convexity_block(Context& c, const OrderWitness& w, const std::vector<Point>& pts, Emitter& e) {
  std::size_t checks = 0;
  std::size_t bad = 0;
  for (std::size_t alpha = 1; alpha <= c.cfg.depth; ++alpha) {
    const ConvexityReport r = check_convexity(w, alpha, pts);
    checks += r.checks;
    bad += r.violations.size();
    if (!r.clean()) *c.out << format_convexity_report(r, e.line());
  }
  e.fact("convexity_checks", "convexity checks", std::to_string(checks));
  e.fact("convexity_violations", "convexity violations", std::to_string(bad));
  return bad;
}

int power(Context& c) {
  const OrdinalSubspace x = space_of(c.cfg.operands[0]);
  if (c.count == 0) throw UsageError("the exponent must be at least 1");
  const std::size_t n = static_cast<std::size_t>(c.count);
  const auto [space, basis] = power_space(synthesize_basis(x), n, pairing_of(c.pairing));
  Emitter e(*c.out, c.cfg.format);
  e.fact("space", "space", format_product_space(space));
  e.fact("dimension", "dimension", std::to_string(n));
  e.fact("p_number", "P-number", product_p_number(space.factors()).to_string());
  e.fact("pairing", "pairing", n == 1 ? std::string("none") : c.pairing);
  if (!c.verify) return kOk;

  const OrderWitness w(basis);
  const std::vector<Point> pts = sample_points(space, c.cfg.budget, c.cfg.depth, c.cfg.seed);
  const std::vector<Point> sorted = sort_sample(w, pts);
  const std::size_t bad = order_violations(w, sorted);
  e.fact("points", "points", std::to_string(sorted.size()));
  e.fact("order_violations", "all-pairs violations", std::to_string(bad));
  const AxiomReport ax = check_axioms(w, pts);
  e.fact("axiom_violations", "A1..A5 violations", std::to_string(ax.total()));
  const std::size_t conv = convexity_block(c, w, pts, e);
  return bad == 0 && ax.clean() && conv == 0 ? kOk : kViolations;
}

int verify(Context& c) {
  const OrdinalSubspace x = space_of(c.cfg.operands[0]);
  const OrderWitness w(basis_for(c, x));
  const std::vector<Point> pts = sample_points(x, c.cfg.budget, c.cfg.depth, c.cfg.seed);
  Emitter e(*c.out, c.cfg.format);
  if (c.suite == "axioms") {
    const AxiomReport r = check_axioms(w, pts);
    *c.out << format_axiom_report(r, e.line());
    if (r.unresolved && c.cfg.mode == CoverMode::Strict) return kUnresolved;
    return r.clean() ? kOk : kViolations;
  }
  if (c.suite == "convexity") return convexity_block(c, w, pts, e) == 0 ? kOk : kViolations;
  const BasisReport r = check_basis_property(w, basic_neighborhoods(w.basis.space(), pts, c.cfg.seed));
  *c.out << format_basis_report(r, e.line());
  return r.clean() ? kOk : kViolations;
}

int dump_tree(Context& c) {
  const OrdinalSubspace x = space_of(c.cfg.operands[0]);
  if (c.cfg.depth == 0) throw UsageError("--depth must be at least 1");
  *c.out << decomposition_dump(x, c.cfg.depth);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context c;
  c.out = &out;
  c.err = &err;
  std::string format = "human";
  bool permissive = false;

  CLI::App app{"Linear orders for zero-dimensional spaces", "gospace"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--format", format, "human or line")->check(CLI::IsMember({"human", "line"}));
  app.add_option("--depth", c.cfg.depth, "stage / tree depth")->capture_default_str();
  app.add_option("--budget,--samples", c.cfg.budget, "sample size")->capture_default_str();
  app.add_option("--seed", c.cfg.seed, "sampling seed")->capture_default_str();
  app.add_flag("--permissive", permissive, "append uncovered remainders as blocks");

  std::function<int(Context&)> handler;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::vector<std::string> operands, int (*fn)(Context&)) {
    CLI::App* sub = parent->add_subcommand(name, help);
    // operand slots are filled in declaration order
    auto slots = std::make_shared<std::vector<std::string>>(operands.size());
    for (std::size_t i = 0; i < operands.size(); ++i) sub->add_option(operands[i], (*slots)[i])->required();
    sub->callback([&c, &handler, slots, fn] {
      c.cfg.operands = *slots;
      handler = fn;
    });
    return sub;
  };

  CLI::App* ord = app.add_subcommand("ord", "ordinal arithmetic");
  ord->require_subcommand(1, 1);
  leaf(ord, "cmp", "compare two ordinals", {"A", "B"}, ord_cmp);
  leaf(ord, "fund", "fundamental sequence term A[n]", {"A"}, ord_fund)->add_option("n", c.count)->required();

  CLI::App* space = app.add_subcommand("space", "ordinal subspaces");
  space->require_subcommand(1, 1);
  leaf(space, "info", "P-number and isolated points", {"EXPR"}, space_info);

  CLI::App* basis = app.add_subcommand("basis", "stratified bases");
  basis->require_subcommand(1, 1);
  leaf(basis, "synth", "synthesize a basis", {"EXPR"}, basis_synth);
  leaf(basis, "validate", "validate an explicit basis file", {"FILE"}, basis_validate);

  CLI::App* order = app.add_subcommand("order", "the induced order");
  order->require_subcommand(1, 1);
  leaf(order, "cmp", "compare two points", {"EXPR", "X", "Y"}, order_cmp)
      ->add_option("--basis", c.basis_file, "explicit basis file");
  leaf(order, "sort", "sort a sample", {"EXPR"}, order_sort)->add_option("--basis", c.basis_file, "explicit basis file");

  CLI::App* pw = leaf(&app, "power", "finite powers", {"EXPR"}, power);
  pw->add_option("n", c.count)->required();
  pw->add_flag("--verify", c.verify, "run the order suites on a sample");
  pw->add_option("--pairing", c.pairing, "diagonal or sum")->check(CLI::IsMember({"diagonal", "sum"}));

  CLI::App* ver = leaf(&app, "verify", "property suites", {"EXPR"}, verify);
  ver->add_option("--suite", c.suite, "axioms, convexity or basis")
      ->check(CLI::IsMember({"axioms", "convexity", "basis"}));
  ver->add_option("--basis", c.basis_file, "explicit basis file");

  CLI::App* dump = app.add_subcommand("dump", "inspection");
  dump->require_subcommand(1, 1);
  leaf(dump, "tree", "decomposition tree", {"EXPR"}, dump_tree);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  c.cfg.format = format == "line" ? OutputFormat::Line : OutputFormat::Human;
  c.cfg.mode = permissive ? CoverMode::Permissive : CoverMode::Strict;

  try {
    return handler(c);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << errc_name(e.code()) << ": " << e.what() << "\n";
    return e.code() == Errc::UnresolvedPair ? kUnresolved : kUsage;
  }
}

}  // namespace gospace::cli
