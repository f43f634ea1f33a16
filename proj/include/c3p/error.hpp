#pragma once

#include <stdexcept>
#include <string>

namespace c3p {

// Error taxonomy shared by the whole library. The CLI maps these to exit
// codes; tests match on the concrete type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Unrecognized magic bytes, wrong version, structurally invalid layout.
class FormatError : public Error {
public:
    using Error::Error;
};

// Truncated or damaged payload (checksum mismatch, exhausted stream).
class CorruptionError : public Error {
public:
    using Error::Error;
};

// Inputs that parse but violate a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A value exceeds a representable or transmittable range.
class RangeError : public Error {
public:
    using Error::Error;
};

// Non-finite values encountered during numeric evaluation.
class NumericError : public Error {
public:
    using Error::Error;
};

// Invalid configuration (e.g. sampling from an empty pool).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Filesystem-level failures.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace c3p
