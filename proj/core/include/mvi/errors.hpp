#pragma once

#include <stdexcept>
#include <string>

namespace mvi {

/// A precondition of a library call was not met by the caller.
class ContractViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// The request is well-formed but outside a configured guard.
class Refusal : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A literal has no representation under a non-canonical polarity.
class UnrepresentableLiteral : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An internal cross-check failed; indicates a bug, never bad input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace mvi
