#include "hrla/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <string>

#include "hrla/errors.hpp"

namespace hrla {

std::string_view to_string(SamplerKind kind) noexcept {
    switch (kind) {
    case SamplerKind::hrla: return "hrla";
    case SamplerKind::ola: return "ola";
    case SamplerKind::ula: return "ula";
    }
    return "unknown";
}

SamplerKind parse_sampler_kind(std::string_view name) {
    if (name == "hrla") return SamplerKind::hrla;
    if (name == "ola") return SamplerKind::ola;
    if (name == "ula") return SamplerKind::ula;
    throw InvalidArgument("unknown sampler '" + std::string(name) + "' (expected hrla, ola or ula)");
}

InitialDistribution InitialDistribution::gaussian(std::vector<double> mean, double variance) {
    if (mean.empty()) throw InvalidArgument("initial distribution: empty mean");
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw InvalidArgument("initial distribution: variance must be positive");
    return {Gaussian{std::move(mean), variance}, std::nullopt};
}

InitialDistribution InitialDistribution::gaussian(std::size_t dimension, double mean, double variance) {
    return gaussian(std::vector<double>(dimension, mean), variance);
}

InitialDistribution InitialDistribution::dirac(std::vector<double> point) {
    if (point.empty()) throw InvalidArgument("initial distribution: empty point");
    return {Dirac{std::move(point)}, std::nullopt};
}

InitialDistribution InitialDistribution::dirac(std::size_t dimension, double value) {
    return dirac(std::vector<double>(dimension, value));
}

std::size_t InitialDistribution::dimension() const {
    return std::visit(
        [](const auto& l) {
            if constexpr (std::is_same_v<std::decay_t<decltype(l)>, Gaussian>)
                return l.mean.size();
            else
                return l.point.size();
        },
        law);
}

ChainState InitialDistribution::sample(RandomStream& stream) const {
    ChainState s(dimension());
    if (const auto* g = std::get_if<Gaussian>(&law)) {
        const double sd = std::sqrt(g->variance);
        for (std::size_t i = 0; i < s.x.size(); ++i) s.x[i] = g->mean[i] + sd * stream.normal();
    } else {
        s.x = std::get<Dirac>(law).point;
    }
    if (y_variance) {
        const double sd = std::sqrt(*y_variance);
        for (double& v : s.y) v = sd * stream.normal();
    }
    return s;
}

void AnnealingSchedule::validate() const {
    if (!(a_low >= 0.0) || !std::isfinite(a_low))
        throw InvalidArgument("annealing schedule: a_low must be non-negative");
    if (!(a_high > a_low) || !std::isfinite(a_high))
        throw InvalidArgument("annealing schedule: a_high must exceed a_low");
    if (iterations == 0) throw InvalidArgument("annealing schedule: K must be positive");
}

double AnnealingSchedule::at(std::size_t k) const {
    const double kk = static_cast<double>(k);
    const double total = static_cast<double>(iterations);
    return ((total - kk) * a_low + kk * a_high) / total;
}

HrlaParams make_baseline(SamplerKind kind, double a, double h, double b, double alpha, double min_a) {
    if (!(a > 0.0) || !std::isfinite(a) || a < min_a)
        throw InvalidArgument("baseline: inverse temperature a must be positive and at least a0");
    if (!(h > 0.0) || !std::isfinite(h)) throw InvalidArgument("baseline: step size must be positive");

    HrlaParams p;
    p.a = a;
    p.h = h;
    switch (kind) {
    case SamplerKind::ola:
        p.mode = Mode::overdamped_baseline;
        p.alpha = alpha;
        p.beta = 1.0;
        p.sigma_x2 = 1.0 / a;
        p.gamma = 0.0;
        p.sigma_y2 = 0.0;
        p.b = b;
        break;
    case SamplerKind::ula:
        p.mode = Mode::underdamped_baseline;
        p.alpha = alpha;
        p.beta = 0.0;
        p.sigma_x2 = 0.0;
        p.b = b;
        p.sigma_y2 = alpha / b;
        p.gamma = a / b;
        break;
    case SamplerKind::hrla:
        throw InvalidArgument("make_baseline: hrla is not a baseline");
    }
    p.validate();
    return p;
}

HrlaParams sampler_params(SamplerKind kind, double a, double h, double b, double alpha, double beta) {
    if (kind == SamplerKind::hrla) return hrla_params(a, h, b, alpha, beta);
    return make_baseline(kind, a, h, b, alpha);
}

ChainTrace run_chain(const ChainSpec& spec, const Potential& potential,
                     const InitialDistribution& init, RandomStream& stream,
                     const ValueObserver& observer, bool keep_values) {
    const std::size_t K = spec.iterations;
    if (K == 0) throw InvalidArgument("run_chain: K must be at least 1");
    if (spec.schedule) {
        spec.schedule->validate();
        if (spec.schedule->iterations != K)
            throw InvalidArgument("run_chain: schedule length differs from the iteration count");
    }
    const std::size_t d = potential.dimension();
    if (init.dimension() != d) throw DimensionMismatch(d, init.dimension());

    ChainTrace trace;
    ChainState& state = trace.final_state;
    state = init.sample(stream);
    if (spec.params.mode == Mode::overdamped_baseline)
        std::fill(state.y.begin(), state.y.end(), 0.0);
    if (!state.finite()) throw Divergence(0, "initial state is not finite");

    TransitionKernel kernel;
    if (!spec.schedule) kernel = build_kernel(spec.params);
    if (keep_values) trace.values.reserve(K);

    auto record = [&](std::size_t k, double u) {
        if (keep_values) trace.values.push_back(u);
        if (observer) observer(k, u);
    };

    std::vector<double> grad(d);
    std::vector<double> noise(2 * d);
    const HrlaParams& base = spec.params;
    for (std::size_t k = 0; k < K; ++k) {
        if (spec.schedule) {
            const double a_k = spec.schedule->at(k);
            if (!(a_k > 0.0))
                throw InvalidArgument("run_chain: annealed inverse temperature must be positive (k=" +
                                      std::to_string(k) + ")");
            kernel = build_kernel(sampler_params(spec.kind, a_k, base.h, base.b, base.alpha,
                                                 base.beta));
        }
        const double u = potential.value_and_gradient(state.x, grad);
        ++trace.gradient_evaluations;
        if (k > 0) record(k - 1, u);
        advance(kernel, grad, state, stream, noise);
        if (!state.finite()) throw Divergence(k);
    }
    record(K - 1, potential.value(state.x));
    return trace;
}

ChainTrace run_chain(const HrlaParams& params, const Potential& potential,
                     const InitialDistribution& init, std::size_t iterations,
                     RandomStream& stream) {
    ChainSpec spec;
    spec.params = params;
    spec.iterations = iterations;
    spec.kind = params.mode == Mode::full                   ? SamplerKind::hrla
                : params.mode == Mode::overdamped_baseline ? SamplerKind::ola
                                                            : SamplerKind::ula;
    return run_chain(spec, potential, init, stream);
}

} // namespace hrla
