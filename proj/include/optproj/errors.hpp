#pragma once

#include <stdexcept>
#include <string>

namespace optproj {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input/shape errors (a CLI maps these to exit code 2).
class InputError : public Error {
public:
    using Error::Error;
};

class ZeroVector : public InputError {
public:
    using InputError::InputError;
};

class EmptyInput : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class DimensionTooSmall : public InputError {
public:
    using InputError::InputError;
};

class InvalidShape : public InputError {
public:
    using InputError::InputError;
};

class ParseError : public InputError {
public:
    using InputError::InputError;
};

// Numeric/feasibility errors (a CLI maps these to exit code 3).
class NumericError : public Error {
public:
    using Error::Error;
};

class RankDeficient : public NumericError {
public:
    using NumericError::NumericError;
};

class TooManyDirections : public NumericError {
public:
    using NumericError::NumericError;
};

class TooManySubsets : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateB : public NumericError {
public:
    using NumericError::NumericError;
};

} // namespace optproj
