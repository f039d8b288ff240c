#pragma once

#include <stdexcept>
#include <string>

namespace convroof {

// Input validation failures (bad matrices, dimensions, parameters).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitian : public InputError {
public:
    using InputError::InputError;
};

class NotDensityMatrix : public InputError {
public:
    using InputError::InputError;
};

class BadBipartition : public InputError {
public:
    using InputError::InputError;
};

class BadDimensions : public InputError {
public:
    using InputError::InputError;
};

class RankMismatch : public InputError {
public:
    using InputError::InputError;
};

// Numerical failures during computation.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RankDeficient : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonFinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace convroof
