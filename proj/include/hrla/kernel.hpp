#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "hrla/potential.hpp"
#include "hrla/random.hpp"

namespace hrla {

enum class Mode {
    full,                 ///< all parameters positive, invariant law exp(-aU(x) - b|y|^2/2)
    underdamped_baseline, ///< beta = 0, sigma_x^2 = 0
    overdamped_baseline,  ///< gamma = 0, sigma_y^2 = 0
};

std::string_view to_string(Mode mode) noexcept;

/// Coefficients of the high-resolution Langevin system
///   dX = (-beta grad U(X) + Y) dt + sqrt(2 sigma_x^2) dB^x
///   dY = (-gamma grad U(X) - alpha Y) dt + sqrt(2 sigma_y^2) dB^y
/// with step size h.
struct HrlaParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.0;
    double a = 1.0; ///< inverse temperature on x
    double b = 1.0; ///< inverse temperature on y
    double sigma_x2 = 0.0;
    double sigma_y2 = 0.0;
    double h = 0.01;
    Mode mode = Mode::full;

    /// Throws InvalidArgument unless the mode's constraints hold:
    /// full requires a = beta/sigma_x^2, b = alpha/sigma_y^2, a/b = gamma
    /// (relative tolerance 1e-12); the baselines require the subset that
    /// survives zeroing their noise channel.
    void validate() const;
};

/// Parameters for inverse temperature `a` with alpha, beta, b held fixed:
/// gamma = a/b, sigma_x^2 = beta/a, sigma_y^2 = alpha/b.
/// Defaults reproduce the experimental mapping alpha = beta = 1, b = 10.
HrlaParams hrla_params(double a, double h, double b = 10.0, double alpha = 1.0,
                       double beta = 1.0);

/// Position/auxiliary pair of a chain.
struct ChainState {
    std::vector<double> x;
    std::vector<double> y;

    ChainState() = default;
    explicit ChainState(std::size_t dimension) : x(dimension, 0.0), y(dimension, 0.0) {}
    ChainState(std::vector<double> x_, std::vector<double> y_) : x(std::move(x_)), y(std::move(y_)) {}

    std::size_t dimension() const noexcept { return x.size(); }
    bool finite() const noexcept;
};

/// Per-step coefficients of the exact conditional Gaussian transition.
///
/// Given g = grad U(x):
///   m_x = x - position_drift g + velocity_gain y - coupling_drift g
///   m_y = decay y - momentum_drift g
/// and each coordinate pair (x'_i, y'_i) has covariance
///   [[cov_xx, cov_xy], [cov_xy, cov_yy]] = L L^T,  L = [[l11, 0], [l21, l22]].
struct TransitionKernel {
    double h = 0.0;
    double decay = 1.0;          ///< e^{-alpha h}
    double velocity_gain = 0.0;  ///< (1 - e^{-alpha h}) / alpha
    double position_drift = 0.0; ///< beta h
    double coupling_drift = 0.0; ///< (gamma/alpha)(h - (1 - e^{-alpha h})/alpha)
    double momentum_drift = 0.0; ///< (gamma/alpha)(1 - e^{-alpha h})
    double cov_xx = 0.0;
    double cov_yy = 0.0;
    double cov_xy = 0.0;
    double l11 = 0.0;
    double l21 = 0.0;
    double l22 = 0.0;
};

/// Threshold on alpha*h below which the cubic bracket uses its Taylor series.
inline constexpr double kSeriesThreshold = 1e-3;

/// 2z - e^{-2z} + 4e^{-z} - 3, accurate to a few ulps for z >= 0.
/// Series through z^6 for z < kSeriesThreshold, extended-precision exponentials otherwise.
double covariance_bracket(double z);
double covariance_bracket_series(double z);
double covariance_bracket_direct(double z);

TransitionKernel build_kernel(const HrlaParams& params);

/// Advances `state` in place given the gradient at state.x. The 2d standard
/// normals are drawn in a fixed order: all d position draws, then all d
/// auxiliary draws. `noise` is scratch of length 2d.
void advance(const TransitionKernel& kernel, std::span<const double> grad, ChainState& state,
             RandomStream& stream, std::span<double> noise);

/// One transition with exactly one gradient evaluation. Throws Divergence
/// (tagged with `iteration`) if the new state is not finite.
ChainState step(const TransitionKernel& kernel, const Potential& potential, const ChainState& state,
                RandomStream& stream, std::size_t iteration = 0);

} // namespace hrla
