#include "gospace/ordinal.hpp"

#include <cctype>
#include <limits>
#include <sstream>
#include <utility>

#include "gospace/error.hpp"

namespace gospace {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::NonCanonical: return "NonCanonical";
    case Errc::NotALimit: return "NotALimit";
    case Errc::NotAMember: return "NotAMember";
    case Errc::EmptySpace: return "EmptySpace";
    case Errc::StageUnavailable: return "StageUnavailable";
    case Errc::IdenticalPoints: return "IdenticalPoints";
    case Errc::NotCovered: return "NotCovered";
    case Errc::TooLarge: return "TooLarge";
    case Errc::UnresolvedPair: return "UnresolvedPair";
    case Errc::PairingNotBijective: return "PairingNotBijective";
    case Errc::InvalidBasis: return "InvalidBasis";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > std::numeric_limits<std::uint64_t>::max() - b) {
    throw Error(Errc::TooLarge, "ordinal coefficient overflow");
  }
  return a + b;
}

}  // namespace

Ordinal::Ordinal() = default;
Ordinal::Ordinal(const Ordinal&) = default;
Ordinal::Ordinal(Ordinal&&) noexcept = default;
Ordinal& Ordinal::operator=(const Ordinal&) = default;
Ordinal& Ordinal::operator=(Ordinal&&) noexcept = default;
Ordinal::~Ordinal() = default;

Ordinal::Ordinal(std::vector<CnfTerm> terms) : terms_(std::move(terms)) {}

bool operator==(const CnfTerm& a, const CnfTerm& b) noexcept {
  return a.coefficient == b.coefficient && a.exponent == b.exponent;
}

Ordinal Ordinal::zero() { return Ordinal(); }

Ordinal Ordinal::natural(std::uint64_t n) {
  if (n == 0) return Ordinal();
  return Ordinal(std::vector<CnfTerm>{CnfTerm{Ordinal(), n}});
}

Ordinal Ordinal::omega() { return omega_power(natural(1)); }

Ordinal Ordinal::omega_power(const Ordinal& exponent, std::uint64_t coefficient) {
  if (coefficient == 0) return Ordinal();
  return Ordinal(std::vector<CnfTerm>{CnfTerm{exponent, coefficient}});
}

Ordinal Ordinal::from_terms(std::vector<CnfTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) {
      throw Error(Errc::NonCanonical, "CNF coefficient must be positive");
    }
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw Error(Errc::NonCanonical, "CNF exponents must strictly decrease");
    }
  }
  return Ordinal(std::move(terms));
}

bool Ordinal::is_finite() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool Ordinal::is_successor() const noexcept {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool Ordinal::is_limit() const noexcept {
  return !terms_.empty() && !terms_.back().exponent.is_zero();
}

std::uint64_t Ordinal::finite_part() const noexcept {
  return is_successor() ? terms_.back().coefficient : 0;
}

Ordinal Ordinal::without_finite_part() const {
  if (!is_successor()) return *this;
  std::vector<CnfTerm> t(terms_.begin(), terms_.end() - 1);
  return Ordinal(std::move(t));
}

std::optional<std::uint64_t> Ordinal::as_natural() const noexcept {
  if (terms_.empty()) return 0;
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

Ordinal Ordinal::successor() const { return add_ordinals(*this, natural(1)); }

Ordinal Ordinal::predecessor() const {
  if (!is_successor()) {
    throw Error(Errc::InvalidArgument, "predecessor of a non-successor ordinal " + format_ordinal(*this));
  }
  std::vector<CnfTerm> t = terms_;
  if (--t.back().coefficient == 0) t.pop_back();
  return Ordinal(std::move(t));
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept {
  const auto& x = a.terms_;
  const auto& y = b.terms_;
  const std::size_t n = std::min(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = x[i].exponent <=> y[i].exponent; c != 0) return c;
    if (auto c = x[i].coefficient <=> y[i].coefficient; c != 0) return c;
  }
  return x.size() <=> y.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) noexcept { return (a <=> b) == 0; }

std::string CardinalValue::to_string() const {
  return aleph_ ? std::string("aleph0") : std::to_string(count_);
}

std::strong_ordering compare_ordinals(const Ordinal& a, const Ordinal& b) noexcept { return a <=> b; }

Ordinal add_ordinals(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return b;
  const Ordinal& lead = b.terms().front().exponent;
  std::vector<CnfTerm> out;
  out.reserve(a.terms().size() + b.terms().size());
  std::uint64_t carried = 0;
  for (const auto& t : a.terms()) {
    const auto c = t.exponent <=> lead;
    if (c > 0) {
      out.push_back(t);
    } else if (c == 0) {
      carried = t.coefficient;
      break;
    } else {
      break;
    }
  }
  bool first = true;
  for (const auto& t : b.terms()) {
    if (first) {
      out.push_back(CnfTerm{t.exponent, checked_add(t.coefficient, carried)});
      first = false;
    } else {
      out.push_back(t);
    }
  }
  return Ordinal::from_terms(std::move(out));
}

OrdinalKind classify(const Ordinal& a) {
  if (a.is_zero()) return {OrdinalKindTag::Zero, std::nullopt};
  if (a.is_successor()) return {OrdinalKindTag::Successor, a.predecessor()};
  return {OrdinalKindTag::Limit, std::nullopt};
}

CardinalValue cofinality(const Ordinal& a) {
  if (a.is_zero()) return CardinalValue::finite(0);
  if (a.is_successor()) return CardinalValue::finite(1);
  // every countable limit has an w-type cofinal sequence
  return CardinalValue::aleph_nought();
}

Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t n) {
  if (!a.is_limit()) {
    throw Error(Errc::NotALimit, "fundamental sequence of non-limit ordinal " + format_ordinal(a));
  }
  if (n == 0) throw Error(Errc::InvalidArgument, "fundamental sequence index must be >= 1");
  std::vector<CnfTerm> base = a.terms();
  const CnfTerm last = base.back();
  if (last.coefficient == 1) {
    base.pop_back();
  } else {
    base.back().coefficient -= 1;
  }
  const Ordinal delta = Ordinal::from_terms(std::move(base));
  const Ordinal& xi = last.exponent;
  if (xi.is_successor()) {
    return add_ordinals(delta, Ordinal::omega_power(xi.predecessor(), n));
  }
  return add_ordinals(delta, Ordinal::omega_power(fundamental_sequence(xi, n)));
}

std::uint64_t fundamental_index_at_least(const Ordinal& a, const Ordinal& x) {
  if (!a.is_limit()) {
    throw Error(Errc::NotALimit, "fundamental sequence of non-limit ordinal " + format_ordinal(a));
  }
  if (!(x < a)) throw Error(Errc::InvalidArgument, "fundamental_index_at_least needs x < a");
  // a = d + w^xi with d = a[n] minus the varying part; x = d + r when x > d
  const auto& at = a.terms();
  const CnfTerm& last = at.back();
  std::vector<CnfTerm> d(at.begin(), at.end() - 1);
  if (last.coefficient > 1) d.push_back({last.exponent, last.coefficient - 1});
  const auto& xt = x.terms();
  if (xt.size() <= d.size()) return 1;  // x <= d
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (!(xt[i] == d[i])) return 1;  // x < d, since x < a
  }
  const CnfTerm& lead = xt[d.size()];  // r = w^e * c + ...
  const bool exact = xt.size() == d.size() + 1;
  const Ordinal& xi = last.exponent;
  if (xi.is_successor()) {
    const Ordinal step = xi.predecessor();
    if (lead.exponent < step) return 1;
    return exact ? lead.coefficient : lead.coefficient + 1;
  }
  // a[n] = d + w^(xi[n])
  const std::uint64_t n = fundamental_index_at_least(xi, lead.exponent);
  if (fundamental_sequence(xi, n) > lead.exponent) return n;
  return exact && lead.coefficient == 1 ? n : n + 1;
}

// ---------------------------------------------------------------------------
// Text form

namespace {

class OrdinalParser {
 public:
  OrdinalParser(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  Ordinal ord() {
    Ordinal acc = term();
    while (peek() == '+') {
      ++pos_;
      acc = add_ordinals(acc, term());
    }
    return acc;
  }

  std::size_t position() const { return pos_; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << msg << " at position " << pos_;
    if (pos_ < text_.size()) os << " near '" << text_[pos_] << "'";
    throw ParseError(pos_, os.str());
  }

  std::uint64_t nat() {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a natural number");
    std::uint64_t v = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      const auto digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
        pos_ = start;
        fail("natural number too large");
      }
      v = v * 10 + digit;
      ++pos_;
    }
    return v;
  }

  Ordinal expo() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Ordinal inner = ord();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'w') {
      ++pos_;
      Ordinal e = Ordinal::natural(1);
      if (peek() == '^') {
        ++pos_;
        e = expo();
      }
      return Ordinal::omega_power(e);
    }
    return Ordinal::natural(nat());
  }

  Ordinal term() {
    const char c = peek();
    if (c == 'w') {
      ++pos_;
      Ordinal e = Ordinal::natural(1);
      if (peek() == '^') {
        ++pos_;
        e = expo();
      }
      std::uint64_t coeff = 1;
      if (peek() == '*') {
        ++pos_;
        const std::size_t at = pos_;
        coeff = nat();
        if (coeff == 0) {
          pos_ = at;
          fail("coefficient must be positive");
        }
      }
      return Ordinal::omega_power(e, coeff);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Ordinal::natural(nat());
    fail(c == '\0' ? "unexpected end of input" : "unexpected character");
  }

  std::string_view text_;
  std::size_t pos_;
};

void format_exponent(std::ostream& os, const Ordinal& e) {
  if (auto n = e.as_natural()) {
    os << *n;
    return;
  }
  const auto& t = e.terms();
  if (t.size() == 1 && t[0].coefficient == 1) {
    os << 'w';
    if (t[0].exponent != Ordinal::natural(1)) {
      os << '^';
      format_exponent(os, t[0].exponent);
    }
    return;
  }
  os << '(' << format_ordinal(e) << ')';
}

}  // namespace

Ordinal parse_ordinal_prefix(std::string_view text, std::size_t& pos) {
  OrdinalParser p(text, pos);
  Ordinal result = p.ord();
  p.skip_ws();
  pos = p.position();
  return result;
}

Ordinal parse_ordinal(std::string_view text) {
  std::size_t pos = 0;
  Ordinal result = parse_ordinal_prefix(text, pos);
  if (pos != text.size()) {
    std::ostringstream os;
    os << "trailing input at position " << pos << " near '" << text[pos] << "'";
    throw ParseError(pos, os.str());
  }
  return result;
}

std::string format_ordinal(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : a.terms()) {
    if (!first) os << " + ";
    first = false;
    if (t.exponent.is_zero()) {
      os << t.coefficient;
      continue;
    }
    os << 'w';
    if (t.exponent != Ordinal::natural(1)) {
      os << '^';
      format_exponent(os, t.exponent);
    }
    if (t.coefficient != 1) os << '*' << t.coefficient;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Ordinal& a) { return os << format_ordinal(a); }
std::ostream& operator<<(std::ostream& os, const CardinalValue& c) { return os << c.to_string(); }

}  // namespace gospace
