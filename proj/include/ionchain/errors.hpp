#pragma once

#include <stdexcept>
#include <string>

namespace ionchain {

/// Reason codes for rejected inputs. Each validation failure carries exactly one.
enum class ValidationCode {
    EvenIonCount,
    TooFewIons,
    TooManyIons,
    NonPositiveMassRatio,
    MassRatioOutOfRange,
    NonPositiveAnisotropy,
    MissingAnisotropy,
    NonSymmetricMatrix,
    BadArgument,
    MassRatioMismatch,
    UnknownSpecies,
    MalformedSpeciesFile,
    MissingSpectralDensity,
};

const char* to_string(ValidationCode code);

/// Base of all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input rejected before any computation.
class ValidationError : public Error {
public:
    ValidationError(ValidationCode code, const std::string& what)
        : Error(what), code_(code) {}
    ValidationCode code() const noexcept { return code_; }

private:
    ValidationCode code_;
};

/// Iterative kernel failed to converge or diverged.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double last_residual = 0.0)
        : Error(what), last_residual_(last_residual) {}
    double last_residual() const noexcept { return last_residual_; }

private:
    double last_residual_;
};

/// Root search found no sign change in the requested interval.
class NotBracketed : public NumericError {
public:
    using NumericError::NumericError;
};

/// Physically meaningless request (unstable mode, coincident ions, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace ionchain
