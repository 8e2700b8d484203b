#pragma once

#include <stdexcept>
#include <string>

namespace wedgelab {

/// Sector or mode count exceeds the configured caps, or N is out of range.
struct SizeError : std::length_error {
  using std::length_error::length_error;
};

/// Operands live on incompatible spaces (mode count, sector, basis).
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A vector or tensor required to be normalized is not.
struct NormalizationError : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotAntisymmetricError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Spectral routine did not converge.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A structural identity (Hermiticity, reality of a quadratic form) failed
/// beyond roundoff; indicates a bug rather than bad input.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wedgelab
