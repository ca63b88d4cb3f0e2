#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ffbasis {

/// Argument outside the mathematical domain of an operation
/// (inverting zero, negative-valuation input to a function on O, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A truncated input does not carry enough digits for the requested output.
class PrecisionError : public std::runtime_error {
 public:
  PrecisionError(const std::string& what, std::int64_t required)
      : std::runtime_error(what), required_(required) {}

  /// Input precision that would have been sufficient, when known (else -1).
  std::int64_t required() const noexcept { return required_; }

 private:
  std::int64_t required_;
};

/// A degree or enumeration budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t required)
      : std::runtime_error(what), required_(required) {}

  std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

/// A function handed to a linear-only operation is not flagged linear.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An identity that must hold by construction failed (e.g. an exact division
/// left a remainder). Always indicates an arithmetic bug.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed canonical text (polynomials, function specs).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace ffbasis
