#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace chaos {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad indices, wrong lengths, unparsable documents.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A computation refused to run because it would exceed a size budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double projected, double limit)
      : Error(what), projected_(projected), limit_(limit) {}

  double projected() const noexcept { return projected_; }
  double limit() const noexcept { return limit_; }

 private:
  double projected_;
  double limit_;
};

/// An exact integer result does not fit the requested representation.
class Overflow : public Error {
 public:
  using Error::Error;
};

}  // namespace chaos
