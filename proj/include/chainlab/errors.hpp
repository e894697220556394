#pragma once

#include <stdexcept>
#include <string>

namespace chainlab {

/// Invalid configuration or parameters detected before any compute.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Request outside the physical/mathematical domain of an operation.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure at runtime (non-convergence, overflow, NaN).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation not supported for the given model variant.
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Euler solver detected loss of hyperbolicity / domain exit (pre-shock breakdown).
class BlowupError : public NumericalError {
public:
    BlowupError(const std::string& msg, int cell_, double time_)
        : NumericalError(msg), cell(cell_), time(time_) {}
    int cell;
    double time;
};

}  // namespace chainlab
