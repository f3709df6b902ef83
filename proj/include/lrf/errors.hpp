#ifndef LRF_ERRORS_HPP
#define LRF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lrf {

/// Base class for all domain errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A coefficient is NaN or infinite.
class InvalidCoefficient : public Error {
public:
    using Error::Error;
};

/// The requested spectral grid is not a power of two or is too small
/// to resolve the symbol (M < 4N + 4).
class GridTooCoarse : public Error {
public:
    using Error::Error;
};

/// The symbol attains zero (or dips below the positivity tolerance),
/// so 1/b does not exist as a bounded symbol.
class SymbolNotInvertible : public Error {
public:
    using Error::Error;
};

/// A factorization root lies too close to the unit circle for the
/// outer/inner split to be numerically meaningful.
class SymbolNearSingular : public Error {
public:
    using Error::Error;
};

/// A truncated expansion did not decay below the requested tolerance;
/// the truncation order or grid must be enlarged.
class TruncationWarning : public Error {
public:
    using Error::Error;
};

/// Fewer correlation lags are available than the operation needs.
class InsufficientCorrelations : public Error {
public:
    using Error::Error;
};

/// The Levinson recursion detected a non-positive-definite Toeplitz
/// system (reflection coefficient with modulus >= 1).
class NotPositiveDefinite : public Error {
public:
    using Error::Error;
};

/// A one-sided polynomial has a root inside or on the unit circle.
class NotMinimumPhase : public Error {
public:
    using Error::Error;
};

/// The circulant embedding of the covariance has an eigenvalue below
/// the clipping tolerance.
class EmbeddingNotPSD : public Error {
public:
    using Error::Error;
};

/// The sample path is too short for the requested estimator.
class InsufficientData : public Error {
public:
    using Error::Error;
};

/// The regression design matrix is singular (degenerate path).
class DegenerateDesign : public Error {
public:
    using Error::Error;
};

/// Invalid job configuration (CLI / config file); maps to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace lrf

#endif // LRF_ERRORS_HPP
