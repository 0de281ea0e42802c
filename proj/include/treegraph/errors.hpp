#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace treegraph {

/// A precondition on argument values was violated (bad vertex, disconnected
/// graph, unstable potential, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The request is well-formed but exceeds what the enumeration can handle.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Malformed or inconsistent instance / certificate input. `code` is a short
/// stable identifier ("missing_pair", "self_pair", ...).
class InputError : public std::runtime_error {
 public:
  InputError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace treegraph
