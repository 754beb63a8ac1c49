#pragma once

#include <stdexcept>
#include <string>

namespace nirmal {

// Root of every error raised by the library. Subclasses name the failure
// category; the CLI maps categories onto process exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (shape mismatch, label out of range).
class ContractViolation : public Error {
public:
    using Error::Error;
};

// Mathematically undefined input such as division by zero or sqrt of a negative.
class DomainError : public Error {
public:
    using Error::Error;
};

class NonFiniteInput : public Error {
public:
    using Error::Error;
};

// An object was used in the wrong lifecycle state (backward before forward).
class StateError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Bytes were read but do not form a valid file of the expected kind.
class FormatError : public IoError {
public:
    using IoError::IoError;
};

// Two inputs that must agree (image and label counts) do not.
class ConsistencyError : public IoError {
public:
    using IoError::IoError;
};

class DegenerateData : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace nirmal
