#pragma once

#include <stdexcept>
#include <string>

namespace bao {

// Arithmetic left the 128-bit unsigned range.
struct OverflowError : std::runtime_error {
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration would exceed the configured atom-count ceiling.
struct EnumerationLimitError : std::runtime_error {
  EnumerationLimitError(const std::string& what, std::string estimate)
      : std::runtime_error(what), count_estimate(std::move(estimate)) {}
  std::string count_estimate;
};

// Requested operation is not part of the algebra's signature.
struct SignatureError : std::invalid_argument {
  explicit SignatureError(const std::string& what) : std::invalid_argument(what) {}
};

// The game strategy could not be implemented at some round.  A conforming
// adversary can never force this, so it always carries enough context to
// debug the round.
struct StrategyError : std::runtime_error {
  explicit StrategyError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bao
