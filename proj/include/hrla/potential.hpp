#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hrla {

/// Metadata attached to a potential.
struct PotentialInfo {
    std::string name = "custom";
    std::optional<double> minimum;    ///< known global minimum value U*
    std::optional<double> smoothness; ///< L, an upper bound on the Hessian norm
    double integrability = 1.0;       ///< a0: exp(-aU) integrable for a >= a0
};

/// Smooth objective U: R^d -> R with its gradient.
///
/// A Potential is an immutable value; all callables must be pure functions of
/// x so that concurrent evaluation from several chains is safe. Lipschitz
/// continuity of the Hessian is assumed and not checked.
class Potential {
public:
    using ValueFn = std::function<double(std::span<const double>)>;
    using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;
    /// Writes the gradient and returns the value at the same point.
    using ValueGradientFn = std::function<double(std::span<const double>, std::span<double>)>;

    using Info = PotentialInfo;

    Potential(std::size_t dimension, ValueFn value, GradientFn gradient, Info info = {});
    Potential(std::size_t dimension, ValueGradientFn value_and_gradient, Info info = {});
    Potential(std::size_t dimension, ValueFn value, GradientFn gradient,
              ValueGradientFn value_and_gradient, Info info = {});

    std::size_t dimension() const noexcept { return dimension_; }
    const Info& info() const noexcept { return info_; }
    const std::string& name() const noexcept { return info_.name; }
    std::optional<double> minimum() const noexcept { return info_.minimum; }
    std::optional<double> smoothness() const noexcept { return info_.smoothness; }
    double integrability() const noexcept { return info_.integrability; }

    // Unchecked fast paths; callers guarantee the lengths.
    double value(std::span<const double> x) const { return value_(x); }
    void gradient(std::span<const double> x, std::span<double> grad) const { gradient_(x, grad); }
    double value_and_gradient(std::span<const double> x, std::span<double> grad) const {
        return value_and_gradient_(x, grad);
    }

private:
    std::size_t dimension_;
    ValueFn value_;
    GradientFn gradient_;
    ValueGradientFn value_and_gradient_;
    Info info_;
};

/// U(x) = d + |x|^2 - sum cos(2 pi x_i); minimum 0 at the origin.
/// The smoothness constant is set to 2 + 4 pi^2, the per-coordinate
/// supremum of |U''|.
Potential rastrigin(std::size_t dimension);

/// U(x) = curvature |x - center|^2 / 2.
Potential quadratic(double curvature, std::vector<double> center);
Potential quadratic(std::size_t dimension, double curvature = 1.0);

/// Checked evaluation: rejects wrong length and non-finite input.
double evaluate(const Potential& p, std::span<const double> x);

/// Checked gradient evaluation.
std::vector<double> gradient(const Potential& p, std::span<const double> x);

/// Builds a named built-in potential ("rastrigin" or "quadratic").
Potential make_potential(const std::string& name, std::size_t dimension, double curvature = 1.0);

} // namespace hrla
