#pragma once

#include <stdexcept>
#include <string>

namespace gct {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Input fails a domain invariant (bad value, bad config field).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// File header does not match the expected column schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A cell or token could not be converted to its declared type.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Mismatched or impossible sizes (lengths, dimensions, counts).
class SizeError : public Error {
public:
    using Error::Error;
};

/// Index outside a valid range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Problem too large for an exhaustive algorithm.
class CapacityError : public Error {
public:
    using Error::Error;
};

/// Argument outside a function's mathematical domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Non-finite values or unsolvable numeric systems.
class NumericError : public Error {
public:
    using Error::Error;
};

/// Bad key or value in a run configuration file.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace gct
