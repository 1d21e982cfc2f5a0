#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orelab {

/// Malformed expression text. `position()` is a byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Division by zero, an uncovered variable under a substitution, and other
/// arithmetic that has no value.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An operation was called outside the setting it is defined for
/// (e.g. asking for D_f when the derivation is not delta_omega).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Scenario file does not match the schema.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace orelab
