#ifndef NEB_ERRORS_HPP
#define NEB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace neb {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (Cayley tables, basis JSON, descriptors).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input parsed but violates a structural requirement (group axioms,
/// normality, dimension mismatch, parameter range).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace neb

#endif  // NEB_ERRORS_HPP
