#pragma once

#include <stdexcept>
#include <string>

namespace supermap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes (generator counts, variable counts, arities) disagree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An element that must be purely even or purely odd is not.
class ParityError : public Error {
 public:
  using Error::Error;
};

/// A point lies outside the domain of a chart, exponential map or overlap.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition (base points, ordering, ranges) is violated.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A polynomial substitution would exceed the configured total-degree bound.
class DegreeBoundError : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON input.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace supermap
