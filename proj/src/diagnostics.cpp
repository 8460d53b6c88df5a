#include "hrla/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hrla/errors.hpp"

namespace hrla {

GaussianLaw gibbs_law(double a, double b, double curvature, std::size_t copies) {
    if (!(a > 0.0) || !(b > 0.0) || !(curvature > 0.0))
        throw InvalidArgument("gibbs_law: a, b and curvature must be positive");
    GaussianLaw g;
    g.cov = {1.0 / (a * curvature), 0.0, 1.0 / b};
    g.copies = copies;
    return g;
}

Mat2 drift_matrix(const TransitionKernel& k, double curvature) {
    return {1.0 - (k.position_drift + k.coupling_drift) * curvature, k.velocity_gain,
            -k.momentum_drift * curvature, k.decay};
}

Sym2 noise_covariance(const TransitionKernel& k) { return {k.cov_xx, k.cov_xy, k.cov_yy}; }

double spectral_radius(const Mat2& m) {
    const double half_trace = 0.5 * (m.m00 + m.m11);
    const double det = m.m00 * m.m11 - m.m01 * m.m10;
    const double disc = half_trace * half_trace - det;
    if (disc < 0.0) return std::sqrt(det);
    const double r = std::sqrt(disc);
    return std::max(std::abs(half_trace + r), std::abs(half_trace - r));
}

Sym2 propagate(const Mat2& m, const Sym2& s, const Sym2& q) {
    // T = M S
    const double t00 = m.m00 * s.xx + m.m01 * s.xy;
    const double t01 = m.m00 * s.xy + m.m01 * s.yy;
    const double t10 = m.m10 * s.xx + m.m11 * s.xy;
    const double t11 = m.m10 * s.xy + m.m11 * s.yy;
    Sym2 out;
    out.xx = t00 * m.m00 + t01 * m.m01 + q.xx;
    out.xy = t00 * m.m10 + t01 * m.m11 + q.xy;
    out.yy = t10 * m.m10 + t11 * m.m11 + q.yy;
    return out;
}

namespace {

Mat2 stable_drift(const TransitionKernel& kernel, double curvature) {
    if (!(curvature > 0.0)) throw InvalidArgument("quadratic curvature must be positive");
    const Mat2 m = drift_matrix(kernel, curvature);
    const double radius = spectral_radius(m);
    if (!(radius < 1.0))
        throw NumericalError("drift matrix spectral radius " + std::to_string(radius) +
                             " >= 1: step size unstable for this curvature");
    return m;
}

} // namespace

std::vector<GaussianLaw> law_recursion(const HrlaParams& params, double curvature,
                                       std::size_t iterations, const GaussianLaw& init) {
    return law_recursion(build_kernel(params), curvature, iterations, init);
}

std::vector<GaussianLaw> law_recursion(const TransitionKernel& kernel, double curvature,
                                       std::size_t iterations, const GaussianLaw& init) {
    const Mat2 m = stable_drift(kernel, curvature);
    const Sym2 q = noise_covariance(kernel);

    std::vector<GaussianLaw> laws;
    laws.reserve(iterations + 1);
    laws.push_back(init);
    for (std::size_t k = 0; k < iterations; ++k) {
        const GaussianLaw& prev = laws.back();
        GaussianLaw next;
        next.copies = prev.copies;
        next.mean = {m.m00 * prev.mean[0] + m.m01 * prev.mean[1],
                     m.m10 * prev.mean[0] + m.m11 * prev.mean[1]};
        next.cov = propagate(m, prev.cov, q);
        laws.push_back(next);
    }
    return laws;
}

Sym2 stationary_covariance(const HrlaParams& params, double curvature, double tolerance) {
    const TransitionKernel kernel = build_kernel(params);
    const Mat2 m = stable_drift(kernel, curvature);
    const Sym2 q = noise_covariance(kernel);

    // Smith doubling: after j passes S = sum_{i < 2^j} M^i Q (M^i)^T. Increments
    // shrink doubly exponentially, so the last one bounds the remaining error.
    constexpr int kMaxPasses = 64;
    Mat2 power = m;
    Sym2 s = q;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        const Sym2 increment = propagate(power, s, Sym2{});
        s = {s.xx + increment.xx, s.xy + increment.xy, s.yy + increment.yy};
        const double change =
            std::max({std::abs(increment.xx), std::abs(increment.xy), std::abs(increment.yy)});
        if (change <= tolerance) return s;
        power = {power.m00 * power.m00 + power.m01 * power.m10, power.m00 * power.m01 + power.m01 * power.m11,
                 power.m10 * power.m00 + power.m11 * power.m10, power.m10 * power.m01 + power.m11 * power.m11};
    }
    throw NumericalError("stationary_covariance: fixed-point iteration did not converge");
}

double gaussian_kl(const GaussianLaw& p, const GaussianLaw& q) {
    if (p.copies != q.copies) throw InvalidArgument("gaussian_kl: product dimensions differ");
    if (!p.cov.positive_definite() || !q.cov.positive_definite())
        throw NumericalError("gaussian_kl: covariance is singular or indefinite");
    const double det_q = q.cov.det();
    const double det_p = p.cov.det();
    // q^{-1} = [[yy, -xy], [-xy, xx]] / det_q
    const double trace_term = (q.cov.yy * p.cov.xx - 2.0 * q.cov.xy * p.cov.xy + q.cov.xx * p.cov.yy) / det_q;
    const double dx = q.mean[0] - p.mean[0];
    const double dy = q.mean[1] - p.mean[1];
    const double maha = (q.cov.yy * dx * dx - 2.0 * q.cov.xy * dx * dy + q.cov.xx * dy * dy) / det_q;
    const double per_block = 0.5 * (trace_term + maha - 2.0 + std::log(det_q / det_p));
    return static_cast<double>(p.copies) * per_block;
}

double gaussian_w2(const GaussianLaw& p, const GaussianLaw& q) {
    if (p.copies != q.copies) throw InvalidArgument("gaussian_w2: product dimensions differ");
    const double dx = p.mean[0] - q.mean[0];
    const double dy = p.mean[1] - q.mean[1];
    // tr((Sq^{1/2} Sp Sq^{1/2})^{1/2}) for 2x2 PSD blocks: sqrt(tr(Sq Sp) + 2 sqrt(det Sq det Sp)).
    const double tr_prod = p.cov.xx * q.cov.xx + 2.0 * p.cov.xy * q.cov.xy + p.cov.yy * q.cov.yy;
    const double det_prod = std::max(0.0, p.cov.det()) * std::max(0.0, q.cov.det());
    const double cross = std::sqrt(std::max(0.0, tr_prod + 2.0 * std::sqrt(det_prod)));
    const double bures = std::max(0.0, p.cov.trace() + q.cov.trace() - 2.0 * cross);
    return std::sqrt(static_cast<double>(p.copies) * (dx * dx + dy * dy + bures));
}

KlProfile kl_decay_profile(const HrlaParams& params, double curvature, std::size_t iterations,
                           const GaussianLaw& init) {
    const auto laws = law_recursion(params, curvature, iterations, init);
    const GaussianLaw target = gibbs_law(params.a, params.b, curvature, init.copies);

    KlProfile profile;
    profile.kl.reserve(laws.size());
    for (const auto& law : laws) profile.kl.push_back(gaussian_kl(law, target));

    GaussianLaw stationary;
    stationary.copies = init.copies;
    stationary.cov = stationary_covariance(params, curvature);
    profile.floor = gaussian_kl(stationary, target);

    // Leading segment above 10x floor.
    std::size_t n = 0;
    while (n < profile.kl.size() && profile.kl[n] >= 10.0 * profile.floor) ++n;
    profile.fit_points = n;
    if (n < 3) {
        profile.decay_rate = std::nan("");
        profile.r_squared = std::nan("");
        return profile;
    }
    double mean_k = 0.0, mean_y = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mean_k += static_cast<double>(k);
        mean_y += std::log(profile.kl[k]);
    }
    mean_k /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dk = static_cast<double>(k) - mean_k;
        const double dy = std::log(profile.kl[k]) - mean_y;
        sxx += dk * dk;
        sxy += dk * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    profile.decay_rate = -slope / params.h;
    profile.r_squared = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return profile;
}

SummaryStats summarize(std::vector<double> values) {
    if (values.empty()) throw InvalidArgument("summarize: no values");
    SummaryStats s;
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / n);
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
    return s;
}

EmpiricalProbabilityCurve empirical_probability(const std::vector<std::vector<double>>& traces,
                                                const std::vector<std::size_t>& iterations,
                                                double minimum, const std::vector<double>& epsilons) {
    if (traces.empty()) throw InvalidArgument("empirical_probability: empty run set");
    const std::size_t length = iterations.size();
    if (length == 0) throw InvalidArgument("empirical_probability: no iterations");
    for (const auto& t : traces)
        if (t.size() != length) throw InvalidArgument("empirical_probability: trace lengths differ");

    EmpiricalProbabilityCurve curve;
    curve.epsilons = epsilons;
    curve.iterations = iterations;
    curve.runs = traces.size();
    curve.p_hat.assign(length, std::vector<double>(epsilons.size(), 0.0));
    const double runs = static_cast<double>(traces.size());
    for (std::size_t j = 0; j < length; ++j) {
        for (std::size_t e = 0; e < epsilons.size(); ++e) {
            std::size_t hits = 0;
            for (const auto& t : traces)
                if (t[j] - minimum >= epsilons[e]) ++hits;
            curve.p_hat[j][e] = static_cast<double>(hits) / runs;
        }
    }
    std::vector<double> terminal;
    terminal.reserve(traces.size());
    for (const auto& t : traces) terminal.push_back(t.back());
    curve.terminal = summarize(std::move(terminal));
    return curve;
}

} // namespace hrla
