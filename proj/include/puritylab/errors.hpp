#pragma once

#include <stdexcept>
#include <string>

namespace puritylab {

/// Base class for all puritylab errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Non-finite entries, malformed parameters, bad exponents.
struct InvalidInput : Error {
  using Error::Error;
};

/// Operand shapes do not conform.
struct DimensionMismatch : Error {
  using Error::Error;
};

/// A matrix required to be positive semidefinite is not, beyond tolerance.
/// Doubles as the not-completely-positive error for Choi matrices.
struct NotPsd : Error {
  NotPsd(const std::string& what, double min_eig)
      : Error(what), min_eigenvalue(min_eig) {}
  double min_eigenvalue;
};

/// Eigensolver failure and similar numerical breakdowns.
struct NumericalError : Error {
  using Error::Error;
};

/// A requested computation exceeds a configured size cap.
struct ResourceLimit : Error {
  ResourceLimit(const std::string& what, long long dim)
      : Error(what), offending_dim(dim) {}
  long long offending_dim;
};

/// Parameter outside the mathematical domain of a formula.
struct DomainError : Error {
  using Error::Error;
};

}  // namespace puritylab
