#include "gospace/piecewise_set.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gospace/error.hpp"

namespace gospace {

std::strong_ordering compare_lower(const LowerEnd& a, const LowerEnd& b) noexcept {
  if (!a) return b ? std::strong_ordering::less : std::strong_ordering::equal;
  if (!b) return std::strong_ordering::greater;
  return *a <=> *b;
}

namespace {

/// Least limit ordinal strictly above the lower end.
Ordinal smallest_limit_above(const LowerEnd& lo) {
  if (!lo) return Ordinal::omega();
  return lo->without_finite_part() + Ordinal::omega();
}

bool spans_limit(const OrdinalInterval& iv) { return smallest_limit_above(iv.lo) <= iv.hi; }

void sort_unique(std::vector<Ordinal>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

bool sorted_has(const std::vector<Ordinal>& v, const Ordinal& x) {
  return std::binary_search(v.begin(), v.end(), x);
}

/// Pieces of a \ b.
void subtract_interval(const OrdinalInterval& a, const OrdinalInterval& b, std::vector<OrdinalInterval>& out) {
  if (b.lo) {
    OrdinalInterval left{a.lo, std::min(a.hi, *b.lo)};
    if (!left.empty()) out.push_back(left);
  }
  LowerEnd right_lo = a.lo && *a.lo > b.hi ? a.lo : LowerEnd(b.hi);
  OrdinalInterval right{right_lo, a.hi};
  if (!right.empty()) out.push_back(right);
}

}  // namespace

PiecewiseSet::PiecewiseSet(std::vector<OrdinalInterval> intervals, std::vector<Ordinal> plus_points,
                           std::vector<Ordinal> minus_points)
    : intervals_(std::move(intervals)), plus_(std::move(plus_points)), minus_(std::move(minus_points)) {
  normalize();
}

PiecewiseSet PiecewiseSet::interval(LowerEnd lo, const Ordinal& hi) {
  return PiecewiseSet({OrdinalInterval{std::move(lo), hi}}, {}, {});
}

PiecewiseSet PiecewiseSet::segment(const Ordinal& hi) { return interval(std::nullopt, hi); }

PiecewiseSet PiecewiseSet::points(const std::vector<Ordinal>& pts) { return PiecewiseSet({}, pts, {}); }

void PiecewiseSet::normalize() {
  for (;;) {
    std::erase_if(intervals_, [](const OrdinalInterval& iv) { return iv.empty(); });
    std::sort(intervals_.begin(), intervals_.end(),
              [](const OrdinalInterval& a, const OrdinalInterval& b) { return compare_lower(a.lo, b.lo) < 0; });
    std::vector<OrdinalInterval> merged;
    for (auto& iv : intervals_) {
      if (!merged.empty() && (!iv.lo || *iv.lo <= merged.back().hi)) {
        if (merged.back().hi < iv.hi) merged.back().hi = iv.hi;
      } else {
        merged.push_back(std::move(iv));
      }
    }
    intervals_ = std::move(merged);

    sort_unique(plus_);
    sort_unique(minus_);
    auto in_intervals = [this](const Ordinal& x) {
      auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                                 [](const OrdinalInterval& iv, const Ordinal& v) { return iv.hi < v; });
      return it != intervals_.end() && it->contains(x);
    };

    std::vector<Ordinal> plus;
    for (auto& p : plus_) {
      if (!in_intervals(p) && !sorted_has(minus_, p)) plus.push_back(p);
    }
    std::vector<Ordinal> minus;
    for (auto& m : minus_) {
      if (in_intervals(m)) minus.push_back(m);
    }

    bool changed = false;
    plus_.clear();
    for (auto& p : plus) {
      if (p.is_limit()) {
        plus_.push_back(std::move(p));
      } else {
        intervals_.push_back(OrdinalInterval{p.is_zero() ? LowerEnd() : LowerEnd(p.predecessor()), p});
        changed = true;
      }
    }
    minus_.clear();
    for (auto& m : minus) {
      if (m.is_limit()) {
        minus_.push_back(std::move(m));
        continue;
      }
      auto it = std::find_if(intervals_.begin(), intervals_.end(),
                             [&](const OrdinalInterval& iv) { return iv.contains(m); });
      const OrdinalInterval whole = *it;
      intervals_.erase(it);
      if (!m.is_zero()) intervals_.push_back(OrdinalInterval{whole.lo, m.predecessor()});
      intervals_.push_back(OrdinalInterval{m, whole.hi});
      changed = true;
    }
    if (!changed) break;
  }
}

bool PiecewiseSet::contains(const Ordinal& x) const noexcept {
  if (sorted_has(plus_, x)) return true;
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const OrdinalInterval& iv, const Ordinal& v) { return iv.hi < v; });
  return it != intervals_.end() && it->contains(x) && !sorted_has(minus_, x);
}

bool PiecewiseSet::is_finite() const noexcept {
  return std::none_of(intervals_.begin(), intervals_.end(), spans_limit);
}

std::optional<std::uint64_t> PiecewiseSet::finite_size() const {
  if (!is_finite()) return std::nullopt;
  std::uint64_t n = plus_.size();
  for (const auto& iv : intervals_) {
    // no limit in between, so both ends share everything but the finite tail
    const std::uint64_t top = iv.hi.finite_part();
    n += iv.lo ? top - iv.lo->finite_part() : top + 1;
  }
  return n;
}

std::vector<Ordinal> PiecewiseSet::elements(std::uint64_t limit) const {
  const auto n = finite_size();
  if (!n || *n > limit) throw Error(Errc::TooLarge, "set is too large to enumerate: " + format_set(*this));
  std::vector<Ordinal> out;
  out.reserve(*n);
  for (const auto& iv : intervals_) {
    for (Ordinal x = iv.least(); x <= iv.hi; x = x.successor()) out.push_back(x);
  }
  out.insert(out.end(), plus_.begin(), plus_.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Ordinal> PiecewiseSet::min() const {
  std::optional<Ordinal> best;
  if (!intervals_.empty()) best = intervals_.front().least();
  if (!plus_.empty() && (!best || plus_.front() < *best)) best = plus_.front();
  return best;
}

std::optional<Ordinal> PiecewiseSet::max() const {
  std::optional<Ordinal> top_plus;
  if (!plus_.empty()) top_plus = plus_.back();
  if (intervals_.empty()) return top_plus;
  const Ordinal& h = intervals_.back().hi;
  if (top_plus && *top_plus > h) return top_plus;
  if (!sorted_has(minus_, h)) return h;
  return std::nullopt;
}

std::optional<Ordinal> PiecewiseSet::sup() const {
  if (auto m = max()) return m;
  if (intervals_.empty()) return std::nullopt;
  return intervals_.back().hi;
}

std::optional<Ordinal> PiecewiseSet::first_at_or_above(const Ordinal& x) const {
  std::optional<Ordinal> best;
  for (const auto& iv : intervals_) {
    if (iv.hi < x) continue;
    Ordinal c = std::max(x, iv.least());
    if (sorted_has(minus_, c)) c = c.successor();
    if (c <= iv.hi) {
      best = c;
      break;
    }
  }
  auto it = std::lower_bound(plus_.begin(), plus_.end(), x);
  if (it != plus_.end() && (!best || *it < *best)) best = *it;
  return best;
}

std::optional<Ordinal> PiecewiseSet::first_limit() const {
  std::optional<Ordinal> best;
  for (const auto& iv : intervals_) {
    for (Ordinal c = smallest_limit_above(iv.lo); c <= iv.hi; c = c + Ordinal::omega()) {
      if (!sorted_has(minus_, c)) {
        best = c;
        break;
      }
    }
    if (best) break;
  }
  if (!plus_.empty() && (!best || plus_.front() < *best)) best = plus_.front();
  return best;
}

bool PiecewiseSet::accumulates_at(const Ordinal& x) const noexcept {
  if (!x.is_limit()) return false;
  auto it = std::lower_bound(intervals_.begin(), intervals_.end(), x,
                             [](const OrdinalInterval& iv, const Ordinal& v) { return iv.hi < v; });
  return it != intervals_.end() && (!it->lo || *it->lo < x);
}

PiecewiseSet PiecewiseSet::unite(const PiecewiseSet& other) const {
  std::vector<OrdinalInterval> iv = intervals_;
  iv.insert(iv.end(), other.intervals_.begin(), other.intervals_.end());
  std::vector<Ordinal> plus = plus_;
  plus.insert(plus.end(), other.plus_.begin(), other.plus_.end());
  std::vector<Ordinal> minus;
  for (const auto* src : {&minus_, &other.minus_}) {
    for (const auto& m : *src) {
      if (!contains(m) && !other.contains(m)) minus.push_back(m);
    }
  }
  return PiecewiseSet(std::move(iv), std::move(plus), std::move(minus));
}

PiecewiseSet PiecewiseSet::subtract(const PiecewiseSet& other) const {
  std::vector<OrdinalInterval> current = intervals_;
  for (const auto& b : other.intervals_) {
    std::vector<OrdinalInterval> next;
    for (const auto& a : current) subtract_interval(a, b, next);
    current = std::move(next);
  }
  std::vector<Ordinal> plus;
  for (const auto& p : plus_) {
    if (!other.contains(p)) plus.push_back(p);
  }
  for (const auto& m : other.minus_) {
    if (contains(m)) plus.push_back(m);
  }
  std::vector<Ordinal> minus = minus_;
  minus.insert(minus.end(), other.plus_.begin(), other.plus_.end());
  return PiecewiseSet(std::move(current), std::move(plus), std::move(minus));
}

PiecewiseSet PiecewiseSet::intersect(const PiecewiseSet& other) const {
  std::vector<OrdinalInterval> iv;
  for (const auto& a : intervals_) {
    for (const auto& b : other.intervals_) {
      OrdinalInterval c{compare_lower(a.lo, b.lo) >= 0 ? a.lo : b.lo, std::min(a.hi, b.hi)};
      if (!c.empty()) iv.push_back(std::move(c));
    }
  }
  std::vector<Ordinal> plus;
  for (const auto& p : plus_) {
    if (other.contains(p)) plus.push_back(p);
  }
  for (const auto& p : other.plus_) {
    if (contains(p)) plus.push_back(p);
  }
  std::vector<Ordinal> minus = minus_;
  minus.insert(minus.end(), other.minus_.begin(), other.minus_.end());
  return PiecewiseSet(std::move(iv), std::move(plus), std::move(minus));
}

PiecewiseSet PiecewiseSet::clip(const LowerEnd& lo, const Ordinal& hi) const { return intersect(interval(lo, hi)); }

std::optional<Ordinal> PiecewiseSet::first_member_accumulated_by(const PiecewiseSet& other) const {
  std::optional<Ordinal> best;
  for (const auto& j : other.intervals_) {
    if (auto x = clip(j.lo, j.hi).first_limit(); x && (!best || *x < *best)) best = x;
  }
  return best;
}

// ---------------------------------------------------------------------------
// DSL

namespace {

class SetParser {
 public:
  SetParser(std::string_view text, std::size_t pos) : text_(text), pos_(pos) {}

  PiecewiseSet set() {
    PiecewiseSet acc = atom();
    for (;;) {
      const char c = peek();
      if (c == '|') {
        ++pos_;
        acc = acc.unite(atom());
      } else if (c == '\\') {
        ++pos_;
        acc = acc.subtract(atom());
      } else {
        break;
      }
    }
    return acc;
  }

  std::size_t position() {
    skip_ws();
    return pos_;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& msg) {
    std::ostringstream os;
    os << msg << " at position " << pos_;
    if (pos_ < text_.size()) os << " near '" << text_[pos_] << "'";
    throw ParseError(pos_, os.str());
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Ordinal ord() { return parse_ordinal_prefix(text_, pos_); }

  PiecewiseSet atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Ordinal lo = ord();
      expect(',');
      const std::size_t at = position();
      Ordinal hi = ord();
      if (!(lo < hi)) {
        pos_ = at;
        fail("interval upper end must exceed its lower end");
      }
      expect(']');
      return PiecewiseSet::interval(lo, hi);
    }
    if (c == '[') {
      ++pos_;
      const std::size_t at = position();
      if (!ord().is_zero()) {
        pos_ = at;
        fail("closed lower end must be 0");
      }
      expect(',');
      Ordinal hi = ord();
      expect(']');
      return PiecewiseSet::segment(hi);
    }
    if (c == '{') {
      ++pos_;
      std::vector<Ordinal> pts;
      if (peek() == '}') {
        ++pos_;
        return PiecewiseSet();
      }
      pts.push_back(ord());
      while (peek() == ',') {
        ++pos_;
        pts.push_back(ord());
      }
      expect('}');
      return PiecewiseSet::points(pts);
    }
    fail(c == '\0' ? "unexpected end of set expression" : "expected '(', '[' or '{'");
  }

  std::string_view text_;
  std::size_t pos_;
};

}  // namespace

PiecewiseSet parse_set_prefix(std::string_view text, std::size_t& pos) {
  SetParser p(text, pos);
  PiecewiseSet s = p.set();
  pos = p.position();
  return s;
}

PiecewiseSet parse_set(std::string_view text) {
  std::size_t pos = 0;
  PiecewiseSet s = parse_set_prefix(text, pos);
  if (pos != text.size()) {
    std::ostringstream os;
    os << "unexpected '" << text[pos] << "' at position " << pos;
    throw ParseError(pos, os.str());
  }
  return s;
}

std::string format_set(const PiecewiseSet& s) {
  if (s.empty()) return "{}";
  // atoms in positional order; runs of single points share one brace group
  struct Atom {
    Ordinal key;
    std::string text;
    bool single;
  };
  std::vector<Atom> atoms;
  for (const auto& iv : s.intervals()) {
    const Ordinal least = iv.least();
    if (least == iv.hi) {
      atoms.push_back({least, format_ordinal(iv.hi), true});
    } else if (!iv.lo) {
      atoms.push_back({least, "[0," + format_ordinal(iv.hi) + "]", false});
    } else {
      atoms.push_back({least, "(" + format_ordinal(*iv.lo) + "," + format_ordinal(iv.hi) + "]", false});
    }
  }
  for (const auto& p : s.plus_points()) atoms.push_back({p, format_ordinal(p), true});
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.key < b.key; });

  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < atoms.size();) {
    if (!first) os << " | ";
    first = false;
    if (!atoms[i].single) {
      os << atoms[i++].text;
      continue;
    }
    os << '{' << atoms[i++].text;
    while (i < atoms.size() && atoms[i].single) os << ", " << atoms[i++].text;
    os << '}';
  }
  if (!s.minus_points().empty()) {
    os << " \\ {";
    for (std::size_t i = 0; i < s.minus_points().size(); ++i) {
      if (i) os << ", ";
      os << format_ordinal(s.minus_points()[i]);
    }
    os << '}';
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const PiecewiseSet& s) { return os << format_set(s); }

}  // namespace gospace
