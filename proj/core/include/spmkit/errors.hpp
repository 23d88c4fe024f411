#pragma once

#include <stdexcept>
#include <string>

namespace spmkit {

// Base for all library errors. CLI maps subclasses to distinct exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad arguments, malformed configs, out-of-range budgets.
class ConfigError : public Error {
public:
    using Error::Error;
};

// File system / parsing failures. Carries the offending path or line.
class IoError : public Error {
public:
    using Error::Error;
};

// Numerical failures: domain errors, degenerate inputs, unstable integration.
class NumericalError : public Error {
public:
    using Error::Error;
};

// Iterative solver ran out of iterations. Carries the best estimate so the
// caller can decide whether to use it anyway.
class ConvergenceError : public NumericalError {
public:
    ConvergenceError(const std::string& msg, double best_estimate, int iterations)
        : NumericalError(msg), best_estimate(best_estimate), iterations(iterations) {}

    double best_estimate;
    int iterations;
};

}  // namespace spmkit
