#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hrla/kernel.hpp"
#include "hrla/potential.hpp"
#include "hrla/random.hpp"

namespace hrla {

/// Draws one sample from (an approximation of) the Gibbs measure exp(-aU).
/// Receives the sample index and a stream owned by that sample.
using SampleOracle = std::function<std::vector<double>(std::size_t, RandomStream&)>;

struct OptimizeResult {
    std::vector<double> best_point;
    double best_value = 0.0;
    std::size_t best_index = 0;
    std::vector<double> values; ///< U of every sample, in index order
};

/// An oracle call failed; carries the sample index.
class SampleFailure : public std::runtime_error {
public:
    SampleFailure(std::size_t sample, const std::string& what);
    std::size_t sample() const noexcept { return sample_; }

private:
    std::size_t sample_;
};

/// Sample-and-argmin: draws N independent samples (sample i uses
/// substream(seed, run, i)) and returns the one with the lowest potential,
/// ties going to the lowest index. Samples may be drawn concurrently.
OptimizeResult global_optimize(const SampleOracle& oracle, const Potential& potential,
                               std::size_t samples, std::uint64_t seed, std::uint64_t run = 0,
                               std::size_t workers = 1);

/// Inputs for the sample-count / temperature requirement.
struct BoundsRequest {
    double epsilon = 0.25; ///< accuracy, in (0, 1/2)
    double delta = 0.01;   ///< failure probability, in (0, 1)
    double c = 1.0;        ///< W2 concentration constant of the Gibbs family
    double l = 1.0;        ///< smoothness constant of U
    double a0 = 1.0;       ///< integrability threshold
    std::optional<double> rho;

    void validate() const;
};

struct SampleRequirement {
    std::size_t n_min = 0;
    double a_min = 0.0;
};

/// N >= 18 ln(1/delta) / eps^2 and a >= max(a0, 9 C^4 L^2 / eps^2).
SampleRequirement required_sample_count(const BoundsRequest& request);

/// Step-size and contraction constants of the discrete KL bound
///   KL(law_K || Gibbs) <= exp(-theta K h / 2) KL(law_0 || Gibbs) + 3 b_hat h / (4 theta),
/// valid for h < h_max.
struct TheoryConstants {
    double theta = 0.0;
    double tau = 0.0;
    double a_const = 0.0; ///< A
    double b_const = 0.0; ///< B
    double b_hat = 0.0;
    double h_max = 0.0;

    /// Coefficient of h in the stationary floor: 3 b_hat / (4 theta).
    double floor_coefficient() const { return 3.0 * b_hat / (4.0 * theta); }
    /// Largest h (also below h_max) making the floor term at most kl_target / 2.
    double sufficient_step(double kl_target) const;
    /// Iterations making the transient term at most kl_target / 2 at step h.
    std::size_t sufficient_iterations(double kl_target, double h, double initial_kl = 1.0) const;
};

TheoryConstants theory_constants(const HrlaParams& params, double rho, double l, std::size_t dimension);

} // namespace hrla
