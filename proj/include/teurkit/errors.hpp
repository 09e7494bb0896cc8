#pragma once

#include <stdexcept>

namespace teurkit {

// Base for every failure this library raises on purpose. Catching this at a
// boundary separates "the math refused the input" from genuine bugs.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianInput : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct SingularMatrix : Error { using Error::Error; };

struct ModelEvaluationError : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };
struct UnknownModel : Error { using Error::Error; };

struct SupportMismatch : Error { using Error::Error; };
struct SingularQfim : Error { using Error::Error; };
struct ZeroProbabilityDerivative : Error { using Error::Error; };

// Scaled covariance claims a determinant below the quantum limit.
struct NegativeDeterminant : Error { using Error::Error; };
struct NonDiagonalQfim : Error { using Error::Error; };
struct RegretDomainError : Error { using Error::Error; };

struct NonConcentric : Error { using Error::Error; };

}  // namespace teurkit
