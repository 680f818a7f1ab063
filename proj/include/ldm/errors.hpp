// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace ldm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid model parameters (gamma, rho, L) or operation arguments.
class ParameterError : public Error {
  public:
    using Error::Error;
};

/// Interval interiors overlap by more than the merge tolerance.
class OverlapError : public Error {
  public:
    using Error::Error;
};

/// A set lies outside its domain, or a domain does not fit the operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

/// The canonical configuration does not fit inside the box.
class FitError : public Error {
  public:
    using Error::Error;
};

/// Requested mass is outside the open range (0, L).
class MassError : public Error {
  public:
    using Error::Error;
};

/// Quadrature did not reach its target tolerance within the subdivision budget.
class ToleranceError : public Error {
  public:
    using Error::Error;
};

/// A search problem has no feasible configuration.
class InfeasibleError : public Error {
  public:
    using Error::Error;
};

/// Malformed input document.
class ParseError : public Error {
  public:
    using Error::Error;
};

}  // namespace ldm
