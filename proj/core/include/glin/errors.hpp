#pragma once

#include <limits>
#include <stdexcept>
#include <string>

namespace glin {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operands live on different meshes or have incompatible sizes.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A state contains NaN/Inf entries or otherwise violates a type invariant.
class InvalidStateError : public Error {
public:
    using Error::Error;
};

class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// A problem spec fails its construction-time checks (e.g. g(0) != 0).
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

/// The requested operation is not available for this problem family or handle.
class UnsupportedOperationError : public Error {
public:
    using Error::Error;
};

/// Not enough recorded data to compute the requested diagnostic.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

/// A linear operator is singular or numerically singular. Carries the best
/// relative residual achieved before giving up (NaN when no solve was run).
class SingularOperatorError : public Error {
public:
    explicit SingularOperatorError(const std::string& what,
                                   double residual_achieved = std::numeric_limits<double>::quiet_NaN())
        : Error(what), residual_achieved_(residual_achieved) {}

    double residual_achieved() const noexcept { return residual_achieved_; }

private:
    double residual_achieved_;
};

/// Configuration file errors (CLI). Carries the offending key path.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::string key = {})
        : Error(what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace glin
