#pragma once

#include <stdexcept>
#include <string>

namespace qlab {

// Base class for all qlab errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Shapes of two operands (grids, mode vectors, matrices) do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// A user-supplied callable produced a non-finite value.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// Fixed-step integration hit a non-finite right-hand side.
class IntegrationDiverged : public Error {
 public:
  IntegrationDiverged(const std::string& what, double last_good_t)
      : Error(what), last_good_t_(last_good_t) {}
  double last_good_t() const { return last_good_t_; }

 private:
  double last_good_t_;
};

// Symbol outside the class handled by the polynomial quantisation path.
class UnsupportedSymbol : public Error {
 public:
  using Error::Error;
};

// Groupoid product of a non-composable pair; carries the source/target gap.
class ComposabilityError : public Error {
 public:
  ComposabilityError(const std::string& what, double mismatch)
      : Error(what), mismatch_(mismatch) {}
  double mismatch() const { return mismatch_; }

 private:
  double mismatch_ = 0.0;
};

// Point left the chart where a closed form is valid (conjugate points etc.).
class OutOfChart : public Error {
 public:
  using Error::Error;
};

// Argument outside the domain of a map that is only locally defined.
class OutOfDomain : public Error {
 public:
  using Error::Error;
};

// Precondition on an argument failed.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace qlab
