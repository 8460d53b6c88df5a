#include "hrla/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hrla/errors.hpp"
#include "hrla/parallel.hpp"

namespace hrla {

SampleFailure::SampleFailure(std::size_t sample, const std::string& what)
    : std::runtime_error("sample " + std::to_string(sample) + " failed: " + what), sample_(sample) {}

OptimizeResult global_optimize(const SampleOracle& oracle, const Potential& potential,
                               std::size_t samples, std::uint64_t seed, std::uint64_t run,
                               std::size_t workers) {
    if (samples == 0) throw InvalidArgument("global_optimize: N must be at least 1");
    if (!oracle) throw InvalidArgument("global_optimize: oracle is empty");

    std::vector<std::vector<double>> points(samples);
    std::vector<double> values(samples);
    parallel_for(samples, workers, [&](std::size_t i) {
        try {
            RandomStream stream = substream(seed, run, i);
            points[i] = oracle(i, stream);
            values[i] = evaluate(potential, points[i]);
        } catch (const SampleFailure&) {
            throw;
        } catch (const std::exception& e) {
            throw SampleFailure(i, e.what());
        }
    });

    OptimizeResult result;
    result.best_index = 0;
    for (std::size_t i = 1; i < samples; ++i)
        if (values[i] < values[result.best_index]) result.best_index = i;
    result.best_value = values[result.best_index];
    result.best_point = std::move(points[result.best_index]);
    result.values = std::move(values);
    return result;
}

void BoundsRequest::validate() const {
    if (!(epsilon > 0.0 && epsilon < 0.5))
        throw InvalidArgument(
            "epsilon must lie in (0, 1/2); the 1/2 limit is an artifact of the analysis, so "
            "rescale U (e.g. divide it by 2 eps) and the tolerance accordingly");
    if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
    if (!(c > 0.0) || !std::isfinite(c)) throw InvalidArgument("C must be positive");
    if (!(l > 0.0) || !std::isfinite(l)) throw InvalidArgument("L must be positive");
    if (!(a0 > 0.0) || !std::isfinite(a0)) throw InvalidArgument("a0 must be positive");
    if (rho && (!(*rho > 0.0) || !std::isfinite(*rho))) throw InvalidArgument("rho must be positive");
}

SampleRequirement required_sample_count(const BoundsRequest& req) {
    req.validate();
    SampleRequirement out;
    const double n = 18.0 * std::log(1.0 / req.delta) / (req.epsilon * req.epsilon);
    out.n_min = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(n)));
    // 9 C^4 L^2 / eps^2 written as a square to keep round numbers exact.
    const double root = req.c * req.c * req.l / req.epsilon;
    out.a_min = std::max(req.a0, 9.0 * root * root);
    return out;
}

TheoryConstants theory_constants(const HrlaParams& p, double rho, double l, std::size_t dimension) {
    p.validate();
    if (p.mode != Mode::full)
        throw InvalidArgument("theory constants need sigma_x^2 and sigma_y^2 positive (full mode)");
    if (!(rho > 0.0) || !(l > 0.0)) throw InvalidArgument("rho and L must be positive");
    if (dimension == 0) throw InvalidArgument("dimension must be positive");

    const double min_sigma = std::min(p.sigma_x2, p.sigma_y2);
    TheoryConstants t;
    t.theta = rho * min_sigma;
    t.tau = p.a * p.a * l * l * (p.sigma_x2 * p.sigma_x2 + 1.0 / (p.b * p.b)) / (2.0 * min_sigma);
    t.a_const = 12.0 + 4.0 * p.beta * p.beta * l * l + 4.0 * p.gamma * p.gamma * l * l;
    t.b_const = 2.0 * p.sigma_x2 + 12.0 / p.b + 4.0 * p.beta * p.beta * l / p.a + 3.0 * p.sigma_y2 +
                4.0 * p.gamma * p.gamma * l / p.a;
    t.b_hat = 2.0 * t.tau * t.b_const * static_cast<double>(dimension);
    t.h_max = std::min({1.0, 1.0 / t.theta, std::sqrt(t.theta * rho / (8.0 * t.tau * t.a_const))});
    return t;
}

double TheoryConstants::sufficient_step(double kl_target) const {
    if (!(kl_target > 0.0)) throw InvalidArgument("target KL must be positive");
    // 3 b_hat h / (4 theta) <= kl_target / 2
    const double h_floor = 2.0 * theta * kl_target / (3.0 * b_hat);
    // Strict inequality on h_max: back off by one ulp.
    return std::min(h_floor, std::nextafter(h_max, 0.0));
}

std::size_t TheoryConstants::sufficient_iterations(double kl_target, double h, double initial_kl) const {
    if (!(kl_target > 0.0) || !(h > 0.0) || !(initial_kl >= 0.0))
        throw InvalidArgument("sufficient_iterations: invalid arguments");
    if (initial_kl <= kl_target / 2.0) return 1;
    // exp(-theta K h / 2) initial_kl <= kl_target / 2
    const double k = 2.0 / (theta * h) * std::log(2.0 * initial_kl / kl_target);
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(k)));
}

} // namespace hrla
