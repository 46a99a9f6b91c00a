#pragma once

#include <stdexcept>
#include <string>

namespace trivopt {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operand shapes are incompatible with the requested operation.
struct DimensionError : Error {
  using Error::Error;
};

/// Input lies outside the mathematical domain of the operation
/// (non-finite entries, non-symmetric where symmetry is required, ...).
struct DomainError : Error {
  using Error::Error;
};

/// A matrix that must be invertible is numerically singular.
struct SingularityError : Error {
  using Error::Error;
};

/// An iterative method exhausted its iteration budget.
struct ConvergenceError : Error {
  using Error::Error;
};

/// A point or coordinate reached the boundary of the region where the chart
/// (exponential map / principal logarithm) is invertible.  The optimization
/// engine consumes this error and responds by re-basing the chart.
struct BranchError : Error {
  using Error::Error;
};

/// Invalid experiment or harness configuration.
struct ConfigError : Error {
  using Error::Error;
};

/// The operation is not defined for the requested manifold kind.
struct UnsupportedError : Error {
  using Error::Error;
};

/// File input/output failure in the harness.
struct IoError : Error {
  using Error::Error;
};

}  // namespace trivopt
