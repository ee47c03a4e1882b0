#pragma once

#include <stdexcept>
#include <string>

namespace bineg {

// Base class for every error raised by the library. Catch this to handle
// any failure uniformly; catch the subclasses to discriminate.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class NotPSD : public Error {
 public:
  using Error::Error;
};

class WrongDimension : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class InfeasibleRegion : public Error {
 public:
  using Error::Error;
};

// More than one negative eigenvalue in the partial transpose of a two-qubit
// state. Cannot happen in exact arithmetic.
class MultipleNegativeEigenvalues : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// A matrix failed one of the density-matrix invariants; the message names it.
class InvalidState : public Error {
 public:
  using Error::Error;
};

}  // namespace bineg
