#pragma once

#include <stdexcept>
#include <string>

namespace cesaro {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Numerical failures map to exit code 3 in the CLI.
class NumericalError : public Error {
public:
    using Error::Error;
};

class SeriesOverflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class OverflowNearOrigin : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonPositiveSample : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoBracket : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularSample : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class UnsupportedSpace : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(std::string key, const std::string& what)
        : Error(what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace cesaro
