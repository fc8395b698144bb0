#pragma once

#include <stdexcept>
#include <string>

namespace gbf {

// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid inputs or violated preconditions. Maps to CLI exit code 2.
class ValidationError : public Error {
public:
    using Error::Error;
};

// Numerical failure: rank deficiency, quadrature or root-finding breakdown.
// Maps to CLI exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

class SingularDesignError : public NumericError {
public:
    using NumericError::NumericError;
};

class QuadratureError : public NumericError {
public:
    using NumericError::NumericError;
};

class RootError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace gbf
