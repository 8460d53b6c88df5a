#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "hrla/kernel.hpp"
#include "hrla/potential.hpp"
#include "hrla/random.hpp"

namespace hrla {

enum class SamplerKind { hrla, ola, ula };

std::string_view to_string(SamplerKind kind) noexcept;
SamplerKind parse_sampler_kind(std::string_view name);

/// Initial law of a chain. The auxiliary variable starts at 0 unless
/// `y_variance` is set, in which case it is drawn N(0, y_variance I).
struct InitialDistribution {
    struct Gaussian {
        std::vector<double> mean;
        double variance = 1.0;
    };
    struct Dirac {
        std::vector<double> point;
    };

    std::variant<Gaussian, Dirac> law;
    std::optional<double> y_variance;

    static InitialDistribution gaussian(std::vector<double> mean, double variance);
    static InitialDistribution gaussian(std::size_t dimension, double mean, double variance);
    static InitialDistribution dirac(std::vector<double> point);
    static InitialDistribution dirac(std::size_t dimension, double value);

    std::size_t dimension() const;
    /// Draws the x components first (d normals, gaussian only), then y.
    ChainState sample(RandomStream& stream) const;
};

/// Linear inverse-temperature ramp a_k = ((K - k) a_low + k a_high) / K.
struct AnnealingSchedule {
    double a_low = 0.1;
    double a_high = 4.0;
    std::size_t iterations = 1;

    void validate() const;
    double at(std::size_t k) const;
};

/// Baseline parameters at inverse temperature a.
///   OLA: overdamped, beta = 1, sigma_x^2 = 1/a, gamma = sigma_y^2 = 0;
///        the x-transition is Euler-Maruyama x' = x - h grad U + sqrt(2h/a) xi.
///   ULA: underdamped, beta = sigma_x^2 = 0, alpha = 1, b = 10, sigma_y^2 = alpha/b,
///        gamma = a/b; exact OU integration of the kinetic dynamics.
HrlaParams make_baseline(SamplerKind kind, double a, double h, double b = 10.0,
                         double alpha = 1.0, double min_a = 0.0);

/// Parameters for any sampler at inverse temperature a (HRLA uses hrla_params).
HrlaParams sampler_params(SamplerKind kind, double a, double h, double b = 10.0,
                          double alpha = 1.0, double beta = 1.0);

/// Outcome of a single chain.
struct ChainTrace {
    ChainState final_state;
    /// values[k] = U(x_{k+1}) for k = 0..K-1 (the iterates after each step).
    std::vector<double> values;
    std::size_t gradient_evaluations = 0;
};

/// Chain configuration. With a schedule, parameters are re-derived from a_k
/// before each iteration k (via `sampler_params`) and the kernel rebuilt.
struct ChainSpec {
    SamplerKind kind = SamplerKind::hrla;
    HrlaParams params;
    std::optional<AnnealingSchedule> schedule;
    std::size_t iterations = 1;
};

/// Called after each iteration with (k, U(x_{k+1})), k = 0..K-1.
using ValueObserver = std::function<void(std::size_t, double)>;

/// Runs K transitions from a draw of `init`. Exactly one gradient evaluation
/// per step; U at the new iterate is obtained from the next step's fused
/// value/gradient call (plus one value call after the last step).
/// Throws Divergence with the iteration index on a non-finite state.
ChainTrace run_chain(const ChainSpec& spec, const Potential& potential,
                     const InitialDistribution& init, RandomStream& stream,
                     const ValueObserver& observer = {}, bool keep_values = true);

/// Convenience overload with fixed parameters.
ChainTrace run_chain(const HrlaParams& params, const Potential& potential,
                     const InitialDistribution& init, std::size_t iterations,
                     RandomStream& stream);

} // namespace hrla
