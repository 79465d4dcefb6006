// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hsf {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Precondition or input validation failure.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Any numerical failure (quadrature, resonance search, retrieval).
class NumericalError : public Error {
  public:
    using Error::Error;
};

class QuadratureError : public NumericalError {
  public:
    QuadratureError(const std::string& what, std::complex<double> partial, double error_estimate)
        : NumericalError(what), partial_(partial), error_estimate_(error_estimate) {}

    std::complex<double> partial_estimate() const { return partial_; }
    double error_estimate() const { return error_estimate_; }

  private:
    std::complex<double> partial_;
    double error_estimate_;
};

class NoResonanceError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

/// Raised by a frequency sweep; carries the offending frequency.
class SweepError : public NumericalError {
  public:
    SweepError(const std::string& what, double frequency)
        : NumericalError(what), frequency_(frequency) {}
    double frequency() const { return frequency_; }

  private:
    double frequency_;
};

class RetrievalError : public NumericalError {
  public:
    using NumericalError::NumericalError;
};

class CalibrationError : public Error {
  public:
    CalibrationError(const std::string& what, double achievable_lo, double achievable_hi)
        : Error(what), lo_(achievable_lo), hi_(achievable_hi) {}
    /// Target frequencies the model can be calibrated to (NaN if none were found).
    double achievable_lo() const { return lo_; }
    double achievable_hi() const { return hi_; }

  private:
    double lo_, hi_;
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw InvalidArgument(msg);
}

inline void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw InvalidArgument(std::string(name) + " must be finite");
}

inline void require_positive(double v, const char* name) {
    require_finite(v, name);
    if (!(v > 0.0)) throw InvalidArgument(std::string(name) + " must be positive");
}

}  // namespace detail
}  // namespace hsf
