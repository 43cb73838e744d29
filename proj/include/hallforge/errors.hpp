/// \file
/// Exception types shared by every hallforge module.

#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace hallforge {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidField : public Error {
 public:
  using Error::Error;
};

class DivisionByZero : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration bound would be exceeded. `bound()` names the
/// limit that tripped so the CLI can report it.
class EnumerationTooLarge : public Error {
 public:
  EnumerationTooLarge(std::string bound, std::string what)
      : Error(what), bound_(std::move(bound)) {}
  const std::string& bound() const noexcept { return bound_; }

 private:
  std::string bound_;
};

class NotHereditarySetup : public Error {
 public:
  using Error::Error;
};

class IncompatibleObjects : public Error {
 public:
  using Error::Error;
};

class NotASubobject : public Error {
 public:
  using Error::Error;
};

/// Raised when a quantity that must be a nonnegative integer (or otherwise
/// constrained by theory) is not. Always indicates a bug.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

class NotAPureQPower : public Error {
 public:
  using Error::Error;
};

class RewriteBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class UnsupportedPeriod : public Error {
 public:
  using Error::Error;
};

class CacheInvalid : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Enumeration safety bounds. Every brute-force loop checks one of these
/// before starting and throws EnumerationTooLarge instead of truncating.
struct Limits {
  std::size_t max_ambient_dim = 6;     ///< subspace enumeration
  std::uint32_t max_prime = 7;         ///< subspace enumeration
  std::size_t max_hom_dim = 16;        ///< Hom-space element enumeration
  std::uint64_t max_variety = 1u << 22;  ///< matrix tuples per dimension vector
  std::size_t rewrite_budget = 1'000'000;
};

}  // namespace hallforge
