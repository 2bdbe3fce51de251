#pragma once

#include <stdexcept>
#include <string>

namespace lpa {

/// Bad user input: unknown identifiers, malformed text, mismatched operands.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computed object failed its own re-verification. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace lpa
