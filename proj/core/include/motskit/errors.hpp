// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <stdexcept>
#include <string>

namespace motskit {

/// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad arguments or unrecognized configuration (maps to CLI exit 2).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class InvalidParam : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnknownFamily : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnsupportedTopology : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Numerical breakdown while evaluating (maps to CLI exit 4).
class NumericalError : public Error {
 public:
  using Error::Error;
};

class DomainError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateMetric : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonFiniteDerivative : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegeneratePlane : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class RankDeficientImmersion : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GeodesicExitedDomain : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class CausticDetected : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ComplexPrincipal : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonPositiveEigenfunction : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ResidualExceeded : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace motskit
