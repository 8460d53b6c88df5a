#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hrla {

/// Argument or configuration outside the documented domain.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Vector length does not match the potential's dimension.
class DimensionMismatch : public InvalidArgument {
public:
    DimensionMismatch(std::size_t expected, std::size_t actual);
};

/// A chain produced a non-finite state.
class Divergence : public std::runtime_error {
public:
    explicit Divergence(std::size_t iteration, const std::string& detail = {});
    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

/// Numerical failure while building coefficients (indicates a bug or bad input).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace hrla
