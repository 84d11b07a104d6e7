#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace oqho {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Matrix shapes that are inconsistent or violate an evenness requirement.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A structural invariant (skewness, orthogonality, ...) failed; carries the
/// offending residual.
class StructureError : public Error {
 public:
  StructureError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

/// A matrix that must be invertible is numerically singular.
class SingularError : public Error {
 public:
  SingularError(const std::string& what, double magnitude)
      : Error(what), magnitude_(magnitude) {}
  /// Smallest singular value (or canonical-form parameter) that tripped the
  /// threshold.
  double magnitude() const { return magnitude_; }

 private:
  double magnitude_;
};

/// Transfer-function evaluation requested too close to a pole.
class NearPoleError : public Error {
 public:
  NearPoleError(const std::string& what, std::complex<double> eigenvalue)
      : Error(what), eigenvalue_(eigenvalue) {}
  std::complex<double> eigenvalue() const { return eigenvalue_; }

 private:
  std::complex<double> eigenvalue_;
};

/// The input does not describe a physically realizable system, so a
/// construction that presumes realizability cannot proceed.
class NotRealizableError : public Error {
 public:
  using Error::Error;
};

/// Malformed or ambiguous JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace oqho
