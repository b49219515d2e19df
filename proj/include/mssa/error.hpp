#pragma once

#include <stdexcept>
#include <string>

namespace mssa {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sizes that do not fit together (filter length, process dimension, ...).
class InvalidDimension : public Error {
public:
    using Error::Error;
};

/// Bad user input detected before any computation (config, constraint, parameter range).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// The constrained problem has no solution (exterior point, infeasible correlation level).
class NoSolution : public Error {
public:
    using Error::Error;
};

/// The MSE predictor lacks weight in at least one eigen-direction of M.
class SingularSupport : public Error {
public:
    using Error::Error;
};

/// A linear system that must be inverted is (numerically) singular.
class SingularSystem : public Error {
public:
    using Error::Error;
};

/// MA inversion of a non-stationary model.
class DivergenceError : public Error {
public:
    using Error::Error;
};

/// Input data problems: parse failures, missing cells, non-positive levels.
class DataError : public Error {
public:
    using Error::Error;
};

}  // namespace mssa
