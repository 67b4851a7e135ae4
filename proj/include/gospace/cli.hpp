#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gospace/strata.hpp"

namespace gospace::cli {

enum class OutputFormat { Human, Line };

struct RunConfig {
  std::vector<std::string> command;  // e.g. {"order", "cmp"}
  std::vector<std::string> operands;
  std::size_t depth = 8;
  std::size_t budget = 64;
  std::uint64_t seed = 0;
  CoverMode mode = CoverMode::Strict;
  OutputFormat format = OutputFormat::Human;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolations = 1;
inline constexpr int kUsage = 2;
inline constexpr int kUnresolved = 3;

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gospace::cli
