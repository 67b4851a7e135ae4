#pragma once

// Ordinals below epsilon_0 in Cantor normal form.
//
// An ordinal is a finite sequence of terms w^e * c with strictly decreasing
// exponents e (themselves ordinals) and positive coefficients c. The empty
// sequence is 0. Because the representation is canonical, structural
// equality is ordinal equality.

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gospace {

struct CnfTerm;

class Ordinal {
 public:
  Ordinal();
  Ordinal(const Ordinal&);
  Ordinal(Ordinal&&) noexcept;
  Ordinal& operator=(const Ordinal&);
  Ordinal& operator=(Ordinal&&) noexcept;
  ~Ordinal();

  static Ordinal zero();
  static Ordinal natural(std::uint64_t n);
  static Ordinal omega();
  /// w^exponent * coefficient; coefficient 0 yields 0.
  static Ordinal omega_power(const Ordinal& exponent, std::uint64_t coefficient = 1);
  /// Builds from terms, throwing Errc::NonCanonical unless exponents strictly
  /// decrease and every coefficient is positive.
  static Ordinal from_terms(std::vector<CnfTerm> terms);

  const std::vector<CnfTerm>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_finite() const noexcept;
  bool is_successor() const noexcept;
  bool is_limit() const noexcept;

  /// Coefficient of the w^0 term (the "n" in delta + n).
  std::uint64_t finite_part() const noexcept;
  /// The ordinal with its finite tail removed: delta for delta + n.
  Ordinal without_finite_part() const;
  std::optional<std::uint64_t> as_natural() const noexcept;

  Ordinal successor() const;
  /// Throws Errc::InvalidArgument unless this is a successor.
  Ordinal predecessor() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) noexcept;
  friend bool operator==(const Ordinal& a, const Ordinal& b) noexcept;

 private:
  explicit Ordinal(std::vector<CnfTerm> terms);

  std::vector<CnfTerm> terms_;
};

struct CnfTerm {
  Ordinal exponent;
  std::uint64_t coefficient = 1;

  friend bool operator==(const CnfTerm& a, const CnfTerm& b) noexcept;
};

enum class OrdinalKindTag { Zero, Successor, Limit };

struct OrdinalKind {
  OrdinalKindTag tag = OrdinalKindTag::Zero;
  std::optional<Ordinal> predecessor;  // set for Successor

  friend bool operator==(const OrdinalKind&, const OrdinalKind&) = default;
};

/// Finite(n) | AlephNought, totally ordered with every Finite below AlephNought.
class CardinalValue {
 public:
  static CardinalValue finite(std::uint64_t n) { return CardinalValue(n, false); }
  static CardinalValue aleph_nought() { return CardinalValue(0, true); }

  bool is_finite() const noexcept { return !aleph_; }
  bool is_aleph_nought() const noexcept { return aleph_; }
  /// Only meaningful when is_finite().
  std::uint64_t count() const noexcept { return count_; }

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const CardinalValue& a, const CardinalValue& b) noexcept {
    if (a.aleph_ != b.aleph_) return a.aleph_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.count_ <=> b.count_;
  }
  friend bool operator==(const CardinalValue&, const CardinalValue&) = default;

 private:
  CardinalValue(std::uint64_t n, bool aleph) : count_(aleph ? 0 : n), aleph_(aleph) {}

  std::uint64_t count_;
  bool aleph_;
};

std::strong_ordering compare_ordinals(const Ordinal& a, const Ordinal& b) noexcept;

/// Non-commutative ordinal sum a + b.
Ordinal add_ordinals(const Ordinal& a, const Ordinal& b);
inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add_ordinals(a, b); }

OrdinalKind classify(const Ordinal& a);
CardinalValue cofinality(const Ordinal& a);

/// The canonical fundamental sequence a[n], n >= 1.
///
/// With a = delta + w^xi * c and delta' = delta + w^xi * (c - 1):
///   xi = xi' + 1  ->  a[n] = delta' + w^xi' * n
///   xi limit      ->  a[n] = delta' + w^(xi[n])
/// Throws Errc::NotALimit for 0 and successors, Errc::InvalidArgument for n = 0.
Ordinal fundamental_sequence(const Ordinal& a, std::uint64_t n);

/// Least n >= 1 with a[n] >= x, for limit a and x < a.
std::uint64_t fundamental_index_at_least(const Ordinal& a, const Ordinal& x);

/// Grammar:
///   ord  := term ("+" term)*
///   term := "w" ("^" expo)? ("*" nat)? | nat
///   expo := nat | "w" ("^" expo)? | "(" ord ")"
/// Sums are normalized by ordinal addition, so "w + w^2" reads as w^2.
Ordinal parse_ordinal(std::string_view text);
std::string format_ordinal(const Ordinal& a);

/// Parser entry used by the set DSL: reads one ord starting at `pos` and
/// advances it. Positions in errors are relative to `text`.
Ordinal parse_ordinal_prefix(std::string_view text, std::size_t& pos);

std::ostream& operator<<(std::ostream& os, const Ordinal& a);
std::ostream& operator<<(std::ostream& os, const CardinalValue& c);

}  // namespace gospace
