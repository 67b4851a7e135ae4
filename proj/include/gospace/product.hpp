#pragma once

// Finite products of stratified bases.
//
// The factor stages form an n-dimensional grid of stage tuples; a pairing
// lists the tuples one after another, (0,...,0) first, and product stage s
// is the cover by boxes U1 x ... x Un with Ui from the stage t_i cover of
// factor i, where t = tuple_at(s). Block indices are the concatenated factor
// indices, so blocks are ordered lexicographically by factor index.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gospace/strata.hpp"

namespace gospace {

using StageTuple = std::vector<std::size_t>;

class StagePairing {
 public:
  virtual ~StagePairing() = default;

  virtual std::string name() const = 0;
  virtual StageTuple tuple_at(std::size_t s, std::size_t arity) const = 0;
  virtual std::size_t index_of(const StageTuple& t) const = 0;

  /// Least stage s <= cap whose tuple t has t_i >= thresholds_i for some i
  /// (missing thresholds never count). Scans by default.
  virtual std::optional<std::size_t> first_reaching(const std::vector<std::optional<std::size_t>>& thresholds,
                                                    std::size_t cap) const;

  /// Coordinatewise largest entry among the tuples of stages < alpha. Scans by default.
  virtual StageTuple reached(std::size_t alpha, std::size_t arity) const;
};

/// Tuples ordered by their largest coordinate, then lexicographically.
class DiagonalPairing final : public StagePairing {
 public:
  StageTuple reached(std::size_t alpha, std::size_t arity) const override;
  std::string name() const override { return "diagonal"; }
  StageTuple tuple_at(std::size_t s, std::size_t arity) const override;
  std::size_t index_of(const StageTuple& t) const override;
  std::optional<std::size_t> first_reaching(const std::vector<std::optional<std::size_t>>& thresholds,
                                            std::size_t cap) const override;
};

/// Tuples ordered by coordinate sum, then lexicographically.
class SumPairing final : public StagePairing {
 public:
  StageTuple reached(std::size_t alpha, std::size_t arity) const override;
  std::string name() const override { return "sum"; }
  StageTuple tuple_at(std::size_t s, std::size_t arity) const override;
  std::size_t index_of(const StageTuple& t) const override;
  std::optional<std::size_t> first_reaching(const std::vector<std::optional<std::size_t>>& thresholds,
                                            std::size_t cap) const override;
};

/// Round trip over the first stages and over the tuple grid [0, side)^arity,
/// with (0,...,0) at stage 0. Throws Errc::PairingNotBijective.
void check_pairing(const StagePairing& p, std::size_t arity, std::size_t side = 6);

/// Throws Errc::PairingNotBijective when the pairing fails check_pairing.
StratifiedBasis product_basis(const std::vector<StratifiedBasis>& factors, std::shared_ptr<const StagePairing> pairing);
StratifiedBasis product_basis(const StratifiedBasis& bx, const StratifiedBasis& by,
                              std::shared_ptr<const StagePairing> pairing);

/// X^n with the basis paired by `pairing` (diagonal when null). n = 1 returns
/// the input unchanged. Throws Errc::InvalidArgument for n = 0.
std::pair<ProductSpace, StratifiedBasis> power_space(const StratifiedBasis& basis, std::size_t n,
                                                     std::shared_ptr<const StagePairing> pairing = nullptr);

/// P-number of the product: the size (or AlephNought) when every factor is
/// discrete, otherwise the least character at a non-isolated tuple, a tuple's
/// character being the largest of its coordinates'. Throws Errc::EmptySpace.
CardinalValue product_p_number(const std::vector<OrdinalSubspace>& factors);

}  // namespace gospace
