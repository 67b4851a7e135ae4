#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gospace {

enum class Errc {
  SyntaxError,
  NonCanonical,
  NotALimit,
  NotAMember,
  EmptySpace,
  StageUnavailable,
  IdenticalPoints,
  NotCovered,
  TooLarge,
  UnresolvedPair,
  PairingNotBijective,
  InvalidBasis,
  InvalidArgument,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Parse failure with the byte offset of the offending token.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(Errc::SyntaxError, what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace gospace
