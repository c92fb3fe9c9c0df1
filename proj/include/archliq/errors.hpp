#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace archliq {

// Base of every error raised by the core. The C API maps each subclass to
// one status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A parameter falls outside a stationarity / moment regime.
class RegimeError : public Error {
public:
    using Error::Error;
};

// Noise synthesis failed (e.g. fGn covariance not representable).
class GenerationError : public Error {
public:
    using Error::Error;
};

class SimulationError : public Error {
public:
    SimulationError(const std::string& what, std::size_t index)
        : Error(what + " (at index " + std::to_string(index) + ")"), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

// Liquidity covariance unusable for the requested estimator.
class CovarianceError : public Error {
public:
    using Error::Error;
};

class UnidentifiableError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace archliq
