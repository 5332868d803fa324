#pragma once

#include <stdexcept>
#include <string>

namespace dfc {

/// Base class for all library failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every coefficient of a trigonometric pair is zero.
struct AllZero : Error {
  using Error::Error;
};

/// A polynomial argument is identically zero (or otherwise unusable).
struct DegenerateInput : Error {
  using Error::Error;
};

/// A claimed joint zero of (C, S) fails the residual check.
struct NotAZero : Error {
  using Error::Error;
};

/// Synthetic division left a remainder above tolerance.
struct RemainderTooLarge : Error {
  using Error::Error;
};

/// Prehistory depth N outside the generator's domain.
struct InvalidDepth : Error {
  using Error::Error;
};

/// Iterative root computation failed to meet its residual bound.
struct NoConvergence : Error {
  using Error::Error;
};

/// The constrained cosine infimum came out nonnegative (numerical fault).
struct NonNegativeInfimum : Error {
  using Error::Error;
};

/// The constrained sine maximum vanished (numerical fault).
struct ZeroMax : Error {
  using Error::Error;
};

/// No orbit of the requested period was found from any seed.
struct NoCycleFound : Error {
  using Error::Error;
};

/// Cycle period and coefficient period disagree, or a history has the
/// wrong length.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// Bisection stayed Schur-stable all the way down to its guard bound.
struct NeverUnstable : Error {
  using Error::Error;
};

/// The caller-supplied cosine polynomial is not nonnegative on the grid.
struct NotNonnegative : Error {
  using Error::Error;
};

}  // namespace dfc
