#pragma once

#include <stdexcept>
#include <string>

namespace gkit {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite entries or otherwise malformed input.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An operator expected to be positive semidefinite has a negative eigenvalue
/// beyond the clamping floor.
class NotPositive : public Error {
 public:
  using Error::Error;
};

/// ‖A − I‖ is too close to (or above) 1 for the binomial series.
class SeriesDivergence : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// An internal cross-check between two numerical routes failed.
class NumericError : public Error {
 public:
  using Error::Error;
};

class InvalidProjection : public Error {
 public:
  using Error::Error;
};

class NotPartialIsometry : public Error {
 public:
  using Error::Error;
};

/// Infeasible sampler or generator specification.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// ‖P − Q‖ < 1 does not hold; carries the measured gap.
class HypothesisViolated : public Error {
 public:
  explicit HypothesisViolated(double gap)
      : Error("hypothesis violated: ||P - Q|| = " + std::to_string(gap) +
              " is not < 1"),
        gap_(gap) {}

  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

}  // namespace gkit
