#pragma once

#include <stdexcept>
#include <string>

namespace cayspec {

/// Base class for all library failures.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A size guard (ball cap, image cap) was exceeded.
class GuardExceeded : public Error {
public:
    using Error::Error;
};

/// Bad run configuration or malformed input file.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A generated sequence left the representable floating-point range.
class OverflowError : public Error {
public:
    using Error::Error;
};

} // namespace cayspec
