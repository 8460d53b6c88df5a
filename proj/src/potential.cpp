#include "hrla/potential.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "hrla/errors.hpp"

namespace hrla {

Potential::Potential(std::size_t dimension, ValueFn value, GradientFn gradient, Info info)
    : dimension_(dimension), value_(std::move(value)), gradient_(std::move(gradient)),
      info_(std::move(info)) {
    if (dimension_ == 0) throw InvalidArgument("potential dimension must be positive");
    if (!value_ || !gradient_) throw InvalidArgument("potential callables must be set");
    value_and_gradient_ = [v = value_, g = gradient_](std::span<const double> x,
                                                      std::span<double> grad) {
        g(x, grad);
        return v(x);
    };
}

Potential::Potential(std::size_t dimension, ValueGradientFn value_and_gradient, Info info)
    : dimension_(dimension), value_and_gradient_(std::move(value_and_gradient)),
      info_(std::move(info)) {
    if (dimension_ == 0) throw InvalidArgument("potential dimension must be positive");
    if (!value_and_gradient_) throw InvalidArgument("potential callables must be set");
    value_ = [f = value_and_gradient_, d = dimension_](std::span<const double> x) {
        std::vector<double> scratch(d);
        return f(x, scratch);
    };
    gradient_ = [f = value_and_gradient_](std::span<const double> x, std::span<double> grad) {
        f(x, grad);
    };
}

Potential::Potential(std::size_t dimension, ValueFn value, GradientFn gradient,
                     ValueGradientFn value_and_gradient, Info info)
    : dimension_(dimension), value_(std::move(value)), gradient_(std::move(gradient)),
      value_and_gradient_(std::move(value_and_gradient)), info_(std::move(info)) {
    if (dimension_ == 0) throw InvalidArgument("potential dimension must be positive");
    if (!value_ || !gradient_ || !value_and_gradient_)
        throw InvalidArgument("potential callables must be set");
}

Potential rastrigin(std::size_t dimension) {
    if (dimension == 0) throw InvalidArgument("rastrigin: dimension must be at least 1");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double d = static_cast<double>(dimension);

    Potential::Info info;
    info.name = "rastrigin";
    info.minimum = 0.0;
    info.smoothness = 2.0 + 4.0 * std::numbers::pi * std::numbers::pi;

    auto value = [d](std::span<const double> x) {
        double u = d;
        for (double xi : x) u += xi * xi - std::cos(two_pi * xi);
        return u;
    };
    auto gradient = [](std::span<const double> x, std::span<double> grad) {
        for (std::size_t i = 0; i < x.size(); ++i)
            grad[i] = 2.0 * x[i] + two_pi * std::sin(two_pi * x[i]);
    };
    auto fused = [d](std::span<const double> x, std::span<double> grad) {
        double u = d;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double phase = two_pi * x[i];
            const double s = std::sin(phase);
            const double c = std::cos(phase);
            u += x[i] * x[i] - c;
            grad[i] = 2.0 * x[i] + two_pi * s;
        }
        return u;
    };

    return Potential(dimension, value, gradient, fused, info);
}

Potential quadratic(double curvature, std::vector<double> center) {
    if (!(curvature > 0.0) || !std::isfinite(curvature))
        throw InvalidArgument("quadratic: curvature must be positive and finite");
    if (center.empty()) throw InvalidArgument("quadratic: dimension must be at least 1");
    const std::size_t dimension = center.size();

    Potential::Info info;
    info.name = "quadratic";
    info.minimum = 0.0;
    info.smoothness = curvature;

    auto value = [curvature, center](std::span<const double> x) {
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) sq += (x[i] - center[i]) * (x[i] - center[i]);
        return 0.5 * curvature * sq;
    };
    auto gradient = [curvature, center](std::span<const double> x, std::span<double> grad) {
        for (std::size_t i = 0; i < x.size(); ++i) grad[i] = curvature * (x[i] - center[i]);
    };
    auto fused = [curvature, c = std::move(center)](std::span<const double> x,
                                                    std::span<double> grad) {
        double sq = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = x[i] - c[i];
            sq += r * r;
            grad[i] = curvature * r;
        }
        return 0.5 * curvature * sq;
    };
    return Potential(dimension, value, gradient, fused, info);
}

Potential quadratic(std::size_t dimension, double curvature) {
    if (dimension == 0) throw InvalidArgument("quadratic: dimension must be at least 1");
    return quadratic(curvature, std::vector<double>(dimension, 0.0));
}

namespace {

void check_point(const Potential& p, std::span<const double> x) {
    if (x.size() != p.dimension()) throw DimensionMismatch(p.dimension(), x.size());
    for (double xi : x)
        if (!std::isfinite(xi)) throw InvalidArgument("non-finite input component");
}

} // namespace

double evaluate(const Potential& p, std::span<const double> x) {
    check_point(p, x);
    return p.value(x);
}

std::vector<double> gradient(const Potential& p, std::span<const double> x) {
    check_point(p, x);
    std::vector<double> grad(x.size());
    p.gradient(x, grad);
    return grad;
}

Potential make_potential(const std::string& name, std::size_t dimension, double curvature) {
    if (name == "rastrigin") return rastrigin(dimension);
    if (name == "quadratic") return quadratic(dimension, curvature);
    throw InvalidArgument("unknown potential '" + name + "' (expected rastrigin or quadratic)");
}

} // namespace hrla
