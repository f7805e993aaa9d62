#pragma once

#include <stdexcept>
#include <string>

namespace contactlab {

// A precondition on a numeric argument is violated (n too small, k < 2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Structurally bad input: ragged center lists, parity violations, duplicates.
class MalformedInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A (kind, dimension) combination for which no constant is known.
class UnsupportedConstant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace contactlab
