#pragma once

#include <stdexcept>
#include <string>

namespace profinite {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: bad permutation table, generator outside the partition,
// unparsable word text, modulus out of range.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An operation's documented precondition does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// An enumeration or search limit was hit. Never a silent truncation.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

// A construction could not find what it was looking for within its limits.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A structural assertion made by a witness operation failed.
class AssertionFailure : public Error {
 public:
  using Error::Error;
};

// Certificate JSON does not match the schema. The message carries the path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace profinite
