#pragma once

#include <stdexcept>
#include <string>

namespace affect_engine {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A distribution could not be formed (all-zero or negative weights).
class DegenerateDistributionError : public Error {
public:
    using Error::Error;
};

/// An argument violated a precondition (bad size, NaN, out-of-range index...).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// An observation has zero probability under the current predictive belief.
class ImpossibleObservationError : public Error {
public:
    using Error::Error;
};

/// A scenario configuration violates a documented invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A configuration file or string is not syntactically valid.
class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

} // namespace affect_engine
