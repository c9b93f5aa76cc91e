#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

/// Requested operator power has no tabulated closed form.
class UnsupportedPower : public std::invalid_argument {
public:
    explicit UnsupportedPower(const std::string& what) : std::invalid_argument(what) {}
};

/// Truncated-basis eigenvalues moved by more than the doubling tolerance.
class TruncationError : public std::runtime_error {
public:
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// Jacobi sweeps exhausted before the off-diagonal norm fell below tolerance.
class ConvergenceError : public std::runtime_error {
public:
    explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qsl
