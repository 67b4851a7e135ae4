#include "gospace/point.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "gospace/error.hpp"

namespace gospace {

std::string format_point(const Point& p) {
  if (p.dimension() == 1) return format_ordinal(p[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    if (i) out += ", ";
    out += format_ordinal(p[i]);
  }
  return out + ")";
}

Point parse_point(std::string_view text) {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  Point p;
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    p.coords.push_back(parse_ordinal_prefix(text, pos));
    while (pos < text.size() && text[pos] == ',') {
      ++pos;
      p.coords.push_back(parse_ordinal_prefix(text, pos));
    }
    if (pos >= text.size() || text[pos] != ')') throw ParseError(pos, "expected ')' in point tuple");
    ++pos;
    skip();
  } else {
    p.coords.push_back(parse_ordinal_prefix(text, pos));
  }
  if (pos != text.size()) throw ParseError(pos, "trailing input in point at position " + std::to_string(pos));
  return p;
}

std::ostream& operator<<(std::ostream& os, const Point& p) { return os << format_point(p); }

bool Box::empty() const noexcept {
  return std::any_of(sides.begin(), sides.end(), [](const PiecewiseSet& s) { return s.empty(); });
}

bool Box::contains(const Point& p) const noexcept {
  if (p.dimension() != sides.size()) return false;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (!sides[i].contains(p[i])) return false;
  }
  return true;
}

bool Box::closure_contains(const Point& p) const noexcept {
  if (p.dimension() != sides.size()) return false;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (!sides[i].closure_contains(p[i])) return false;
  }
  return true;
}

Box Box::intersect(const Box& other) const {
  if (other.dimension() != dimension()) throw Error(Errc::InvalidArgument, "box dimension mismatch");
  Box out;
  out.sides.reserve(sides.size());
  for (std::size_t i = 0; i < sides.size(); ++i) out.sides.push_back(sides[i].intersect(other.sides[i]));
  return out;
}

bool Box::is_subset_of(const Box& other) const {
  if (empty()) return true;
  if (other.dimension() != dimension()) return false;
  for (std::size_t i = 0; i < sides.size(); ++i) {
    if (!sides[i].is_subset_of(other.sides[i])) return false;
  }
  return true;
}

std::string format_box(const Box& b) {
  std::string out;
  for (std::size_t i = 0; i < b.sides.size(); ++i) {
    if (i) out += " x ";
    out += format_set(b.sides[i]);
  }
  return out;
}

ProductSpace::ProductSpace(std::vector<OrdinalSubspace> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(Errc::InvalidArgument, "a product needs at least one factor");
}

bool ProductSpace::contains(const Point& p) const noexcept {
  if (p.dimension() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (!factors_[i].contains(p[i])) return false;
  }
  return true;
}

bool ProductSpace::empty() const noexcept {
  return std::any_of(factors_.begin(), factors_.end(), [](const OrdinalSubspace& f) { return f.empty(); });
}

Box ProductSpace::whole() const {
  Box b;
  for (const auto& f : factors_) b.sides.push_back(f.carrier());
  return b;
}

std::optional<std::uint64_t> ProductSpace::finite_size() const {
  std::uint64_t n = 1;
  for (const auto& f : factors_) {
    const auto k = f.carrier().finite_size();
    if (!k) return std::nullopt;
    if (*k != 0 && n > UINT64_MAX / *k) throw Error(Errc::TooLarge, "product cardinality overflow");
    n *= *k;
  }
  return n;
}

namespace {

std::vector<Point> grid(const std::vector<std::vector<Ordinal>>& axes) {
  std::vector<Point> out{Point()};
  for (const auto& axis : axes) {
    std::vector<Point> next;
    next.reserve(out.size() * axis.size());
    for (const auto& prefix : out) {
      for (const auto& x : axis) {
        Point p = prefix;
        p.coords.push_back(x);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace

std::vector<Point> ProductSpace::points(std::uint64_t limit) const {
  const auto n = finite_size();
  if (!n || *n > limit) throw Error(Errc::TooLarge, "product space too large to enumerate");
  std::vector<std::vector<Ordinal>> axes;
  for (const auto& f : factors_) axes.push_back(f.carrier().elements());
  return grid(axes);
}

std::string format_product_space(const ProductSpace& s) {
  std::string out;
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    if (i) out += " x ";
    out += format_space(s.factors()[i]);
  }
  return out;
}

std::vector<Point> sample_points(const ProductSpace& s, std::size_t budget, std::size_t depth, std::uint64_t seed) {
  if (s.empty()) throw Error(Errc::EmptySpace, "cannot sample the empty space");
  const std::size_t n = s.dimension();
  std::size_t per_axis = 1;
  auto power = [n](std::size_t k) {
    std::size_t v = 1;
    for (std::size_t i = 0; i < n; ++i) v *= k;
    return v;
  };
  while (power(per_axis) < budget) ++per_axis;
  std::vector<std::vector<Ordinal>> axes;
  for (const auto& f : s.factors()) axes.push_back(sample(f, per_axis, depth, seed));
  std::vector<Point> pts = grid(axes);
  if (pts.size() > budget) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    for (std::size_t i = 0; i < budget; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng() % (pts.size() - i));
      std::swap(pts[i], pts[j]);
    }
    pts.resize(budget);
    std::sort(pts.begin(), pts.end());
  }
  return pts;
}

}  // namespace gospace
