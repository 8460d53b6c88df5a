#include "hrla/errors.hpp"

namespace hrla {

DimensionMismatch::DimensionMismatch(std::size_t expected, std::size_t actual)
    : InvalidArgument("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                      std::to_string(actual)) {}

Divergence::Divergence(std::size_t iteration, const std::string& detail)
    : std::runtime_error("chain diverged at iteration " + std::to_string(iteration) +
                         (detail.empty() ? std::string{} : ": " + detail)),
      iteration_(iteration) {}

} // namespace hrla
