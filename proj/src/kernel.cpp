#include "hrla/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hrla/errors.hpp"

namespace hrla {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kDetTol = 1e-18;

bool close_rel(double lhs, double rhs) {
    return std::abs(lhs - rhs) <= kRelTol * std::max(std::abs(lhs), std::abs(rhs));
}

void require(bool ok, const std::string& what) {
    if (!ok) throw InvalidArgument("HrlaParams: " + what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// (1 - e^{-z}) / z, with the z -> 0 limit 1.
double expm1_ratio(double z) {
    if (z == 0.0) return 1.0;
    return -std::expm1(-z) / z;
}

// (z - (1 - e^{-z})) / z^2, with the z -> 0 limit 1/2.
double second_ratio(double z) {
    if (z < 1e-2) {
        // 1/2 - z/6 + z^2/24 - z^3/120 + z^4/720 - z^5/5040
        return 0.5 + z * (-1.0 / 6 + z * (1.0 / 24 + z * (-1.0 / 120 + z * (1.0 / 720 - z / 5040))));
    }
    const long double zl = z;
    return static_cast<double>((zl + std::expm1l(-zl)) / (zl * zl));
}

// bracket(z) / z^3 without forming z^3 for small z.
double bracket_over_cube(double z) {
    if (z < kSeriesThreshold) return 2.0 / 3 + z * (-0.5 + z * (7.0 / 30 - z / 12));
    return covariance_bracket_direct(z) / (z * z * z);
}

} // namespace

std::string_view to_string(Mode mode) noexcept {
    switch (mode) {
    case Mode::full: return "full";
    case Mode::underdamped_baseline: return "underdamped-baseline";
    case Mode::overdamped_baseline: return "overdamped-baseline";
    }
    return "unknown";
}

void HrlaParams::validate() const {
    for (double v : {alpha, beta, gamma, a, b, sigma_x2, sigma_y2})
        require(finite_nonneg(v), "coefficients must be finite and non-negative");
    require(std::isfinite(h) && h > 0.0, "step size h must be positive");

    switch (mode) {
    case Mode::full:
        require(alpha > 0 && beta > 0 && gamma > 0 && a > 0 && b > 0 && sigma_x2 > 0 &&
                    sigma_y2 > 0,
                "full mode requires all coefficients strictly positive");
        require(close_rel(a, beta / sigma_x2), "a must equal beta / sigma_x^2");
        require(close_rel(b, alpha / sigma_y2), "b must equal alpha / sigma_y^2");
        require(close_rel(a / b, gamma), "a / b must equal gamma");
        break;
    case Mode::underdamped_baseline:
        require(beta == 0.0 && sigma_x2 == 0.0,
                "underdamped baseline requires beta = 0 and sigma_x^2 = 0");
        require(alpha > 0 && sigma_y2 > 0 && b > 0 && a > 0,
                "underdamped baseline requires alpha, sigma_y^2, a, b positive");
        require(close_rel(b, alpha / sigma_y2), "b must equal alpha / sigma_y^2");
        require(close_rel(a / b, gamma), "a / b must equal gamma");
        break;
    case Mode::overdamped_baseline:
        require(gamma == 0.0 && sigma_y2 == 0.0,
                "overdamped baseline requires gamma = 0 and sigma_y^2 = 0");
        require(beta > 0 && sigma_x2 > 0 && a > 0,
                "overdamped baseline requires beta, sigma_x^2, a positive");
        require(close_rel(a, beta / sigma_x2), "a must equal beta / sigma_x^2");
        break;
    }
}

HrlaParams hrla_params(double a, double h, double b, double alpha, double beta) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidArgument("inverse temperature a must be positive");
    if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("inverse temperature b must be positive");
    HrlaParams p;
    p.alpha = alpha;
    p.beta = beta;
    p.a = a;
    p.b = b;
    p.gamma = a / b;
    p.sigma_x2 = beta / a;
    p.sigma_y2 = alpha / b;
    p.h = h;
    p.mode = Mode::full;
    p.validate();
    return p;
}

bool ChainState::finite() const noexcept {
    if (x.size() != y.size()) return false;
    return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); }) &&
           std::all_of(y.begin(), y.end(), [](double v) { return std::isfinite(v); });
}

double covariance_bracket_series(double z) {
    // (2/3) z^3 - (1/2) z^4 + (7/30) z^5 - (1/12) z^6
    return z * z * z * (2.0 / 3 + z * (-0.5 + z * (7.0 / 30 - z / 12)));
}

double covariance_bracket_direct(double z) {
    // With u = e^{-z} - 1: bracket = 2z - (u^2 + 2u) + 4u = 2(z + u) - u^2.
    const long double zl = z;
    const long double u = std::expm1l(-zl);
    return static_cast<double>(2.0L * (zl + u) - u * u);
}

double covariance_bracket(double z) {
    return z < kSeriesThreshold ? covariance_bracket_series(z) : covariance_bracket_direct(z);
}

TransitionKernel build_kernel(const HrlaParams& params) {
    params.validate();
    const double h = params.h;
    const double z = params.alpha * h;

    TransitionKernel k;
    k.h = h;
    k.decay = std::exp(-z);
    k.velocity_gain = h * expm1_ratio(z);
    k.position_drift = params.beta * h;
    k.coupling_drift = params.gamma * h * h * second_ratio(z);
    k.momentum_drift = params.gamma * h * expm1_ratio(z);

    const double sy2 = params.sigma_y2;
    k.cov_yy = sy2 * 2.0 * h * expm1_ratio(2.0 * z);
    k.cov_xy = sy2 * k.velocity_gain * k.velocity_gain;
    k.cov_xx = sy2 * h * h * h * bracket_over_cube(z) + 2.0 * params.sigma_x2 * h;

    for (double v : {k.decay, k.velocity_gain, k.coupling_drift, k.momentum_drift, k.cov_xx,
                     k.cov_yy, k.cov_xy})
        if (!std::isfinite(v)) throw NumericalError("build_kernel: non-finite coefficient");
    if (k.cov_xx < 0.0 || k.cov_yy < 0.0)
        throw NumericalError("build_kernel: negative variance");

    const double det = k.cov_xx * k.cov_yy - k.cov_xy * k.cov_xy;
    if (det < -kDetTol) throw NumericalError("build_kernel: covariance not positive semidefinite");

    if (k.cov_xx > 0.0) {
        k.l11 = std::sqrt(k.cov_xx);
        k.l21 = k.cov_xy / k.l11;
        double rest = k.cov_yy - k.l21 * k.l21;
        if (rest < 0.0) {
            if (rest < -kDetTol) throw NumericalError("build_kernel: Cholesky pivot negative");
            rest = 0.0;
        }
        k.l22 = std::sqrt(rest);
    } else {
        if (k.cov_xy != 0.0) throw NumericalError("build_kernel: correlation without x variance");
        k.l22 = std::sqrt(k.cov_yy);
    }
    return k;
}

void advance(const TransitionKernel& k, std::span<const double> grad, ChainState& s,
             RandomStream& stream, std::span<double> noise) {
    const std::size_t d = s.x.size();
    stream.fill_normal(noise.first(2 * d));
    const double* xi = noise.data();
    const double* eta = noise.data() + d;
    for (std::size_t i = 0; i < d; ++i) {
        const double g = grad[i];
        const double x = s.x[i];
        const double y = s.y[i];
        const double mx = x - k.position_drift * g + k.velocity_gain * y - k.coupling_drift * g;
        const double my = k.decay * y - k.momentum_drift * g;
        s.x[i] = mx + k.l11 * xi[i];
        s.y[i] = my + k.l21 * xi[i] + k.l22 * eta[i];
    }
}

ChainState step(const TransitionKernel& kernel, const Potential& potential, const ChainState& state,
                RandomStream& stream, std::size_t iteration) {
    const std::size_t d = potential.dimension();
    if (state.x.size() != d) throw DimensionMismatch(d, state.x.size());
    if (state.y.size() != d) throw DimensionMismatch(d, state.y.size());
    if (!state.finite()) throw Divergence(iteration, "input state is not finite");

    std::vector<double> grad(d);
    std::vector<double> noise(2 * d);
    potential.gradient(state.x, grad);
    ChainState next = state;
    advance(kernel, grad, next, stream, noise);
    if (!next.finite()) throw Divergence(iteration);
    return next;
}

} // namespace hrla
