// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "hrla/diagnostics.hpp"
#include "hrla/harness.hpp"
#include "hrla/kernel.hpp"
#include "hrla/optimizer.hpp"

using namespace hrla;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(bool ok, const std::string& name, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s  %-28s %s\n", ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    std::fflush(stdout);
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

ExperimentConfig preset(const std::string& name) {
    auto cfg = load_config(std::filesystem::path(HRLA_CONFIG_DIR) / name);
    cfg.workers = 0;
    return cfg;
}

std::string summary_csv(const ExperimentResult& r) {
    std::ostringstream out;
    write_summary_csv(out, r);
    return out.str();
}

HrlaParams closed_params(double alpha, double h) {
    HrlaParams p;
    p.alpha = alpha;
    p.beta = 1.0;
    p.sigma_x2 = 0.25;
    p.sigma_y2 = 0.1;
    p.a = p.beta / p.sigma_x2;
    p.b = alpha / p.sigma_y2;
    p.gamma = p.a / p.b;
    p.h = h;
    return p;
}

void kernel_properties() {
    const auto start = Clock::now();
    bool ok = true;
    int cases = 0;
    for (double alpha : {0.1, 0.5, 1.0, 2.0, 10.0}) {
        for (double h : {1e-5, 1e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
            const HrlaParams p = closed_params(alpha, h);
            const TransitionKernel k = build_kernel(p);
            ++cases;
            const double det = k.cov_xx * k.cov_yy - k.cov_xy * k.cov_xy;
            ok &= k.cov_xx > 0.0 && k.cov_yy > 0.0 && det > 0.0;
            auto rel = [](double got, double want) { return std::abs(got - want) <= 1e-12 * std::abs(want); };
            ok &= rel(k.l11 * k.l11, k.cov_xx) && rel(k.l11 * k.l21, k.cov_xy) &&
                  rel(k.l21 * k.l21 + k.l22 * k.l22, k.cov_yy);
            if (alpha * h <= 0.1) {
                ok &= std::abs(k.cov_yy - 2.0 * p.sigma_y2 * h) <= 2.0 * p.sigma_y2 * alpha * h * h;
                ok &= std::abs(k.cov_xy - p.sigma_y2 * h * h) <= 2.0 * p.sigma_y2 * alpha * h * h * h;
            }
        }
    }
    std::array<double, 3> cubic{}, residual{};
    const std::array<double, 3> hs{1e-2, 1e-3, 1e-4};
    for (std::size_t i = 0; i < hs.size(); ++i) {
        const HrlaParams p = closed_params(1.0, hs[i]);
        const TransitionKernel k = build_kernel(p);
        cubic[i] = k.cov_xx - 2.0 * p.sigma_x2 * hs[i];
        residual[i] = cubic[i] - 2.0 / 3.0 * p.sigma_y2 * std::pow(hs[i], 3);
    }
    std::string ratios;
    for (std::size_t i = 0; i + 1 < hs.size(); ++i) {
        const double cr = cubic[i] / cubic[i + 1];
        const double rr = residual[i] / residual[i + 1];
        ok &= std::abs(cr / 1e3 - 1.0) <= 0.1 && std::abs(rr / 1e4 - 1.0) <= 0.1;
        ratios += fmt(" %.4g/%.4g", cr, rr);
    }
    const double t = seconds_since(start);
    ok &= t < 1.0;
    report(ok, "kernel-properties",
           fmt("%d (alpha,h) cases, decade ratios cubic/residual:%s, %.3fs", cases, ratios.c_str(), t));
}

void gaussian_theory() {
    const auto start = Clock::now();
    GaussianLaw init;
    init.mean = {3.0, 0.0};
    init.cov = {10.0, 0.0, 0.1};
    const double h = 0.01;
    const auto coarse = kl_decay_profile(hrla_params(4.0, h), 1.0, 4000, init);
    const auto fine = kl_decay_profile(hrla_params(4.0, h / 2), 1.0, 8000, init);
    const double ratio = coarse.floor / fine.floor;
    const double t = seconds_since(start);
    const bool fit_ok = coarse.r_squared >= 0.999 && fine.r_squared >= 0.999;
    const bool ok = fit_ok && ratio >= 1.6 && ratio <= 2.4 && t < 5.0;
    report(ok, "gaussian-kl-profile",
           fmt("R2 %.5f/%.5f, rate %.4f, floor(h)/floor(h/2) %.4f (window [1.6, 2.4]), %.3fs",
               coarse.r_squared, fine.r_squared, coarse.decay_rate, ratio, t));
}

void invariant_law() {
    const auto start = Clock::now();
    const double a = 4.0, b = 10.0;
    std::array<double, 4> bias{};
    double h = 0.02;
    for (auto& e : bias) {
        const Sym2 s = stationary_covariance(hrla_params(a, h), 1.0);
        e = std::sqrt(std::pow(s.xx - 1.0 / a, 2) + 2.0 * s.xy * s.xy + std::pow(s.yy - 1.0 / b, 2));
        h /= 2.0;
    }
    bool ok = true;
    std::string ratios;
    for (std::size_t i = 0; i + 1 < bias.size(); ++i) {
        const double r = bias[i] / bias[i + 1];
        ok &= r >= 1.5 && r <= 3.0;
        ratios += fmt(" %.4f", r);
    }
    const double t = seconds_since(start);
    ok &= t < 1.0;
    report(ok, "invariant-law", fmt("bias halving ratios:%s, %.3fs", ratios.c_str(), t));
}

void table1() {
    const auto start = Clock::now();
    const auto mid = run_experiment(preset("table1_h0.01_a4.cfg")).summary;
    const auto small = run_experiment(preset("table1_h0.001_a4.cfg")).summary;
    const auto large = run_experiment(preset("table1_h0.1_a4.cfg")).summary;
    const bool ok = mid.avg >= 0.2 && mid.avg <= 0.5 && mid.sd < 0.2 && mid.avg < small.avg && large.avg > 5.0;
    report(ok, "table1-step-sizes",
           fmt("h=0.01 avg %.3f med %.3f sd %.3f; h=0.001 avg %.3f; h=0.1 avg %.3f, %.1fs", mid.avg, mid.median,
               mid.sd, small.avg, large.avg, seconds_since(start)));
}

void table3_and_reproducibility() {
    const auto start = Clock::now();
    auto cfg = preset("table3_ahigh4.cfg");
    cfg.workers = 1;
    const auto serial = run_experiment(cfg);
    const auto low = run_experiment(preset("table3_ahigh1.cfg")).summary;
    const auto& s = serial.summary;
    report(s.avg >= 0.15 && s.avg <= 0.7 && low.avg > 1.5, "table3-annealing",
           fmt("a_high=4 avg %.3f sd %.3f; a_high=1 avg %.3f, %.1fs", s.avg, s.sd, low.avg, seconds_since(start)));

    cfg.workers = 16;
    const auto parallel = run_experiment(cfg);
    const std::string one = summary_csv(serial), sixteen = summary_csv(parallel);
    report(one == sixteen, "reproducibility", fmt("summary.csv %zu bytes, workers 1 vs 16", one.size()));
}

void bounds() {
    BoundsRequest n_req;
    n_req.epsilon = 0.499;
    n_req.delta = 0.01;
    BoundsRequest a_req;
    a_req.epsilon = 0.1;
    const auto n = required_sample_count(n_req).n_min;
    const double a = required_sample_count(a_req).a_min;
    report(n == 333 && a == 900.0, "bounds-calculator", fmt("n_min %zu, a_min %.17g", n, a));
}

void sampler_comparison() {
    const auto start = Clock::now();
    std::string detail;
    bool ok = true;
    for (auto kind : {SamplerKind::hrla, SamplerKind::ula, SamplerKind::ola}) {
        auto cfg = preset("figure2_a4.cfg");
        cfg.m = 20;
        cfg.sampler = kind;
        cfg.epsilons = {2.0};
        const auto result = run_experiment(cfg);
        const double hit = 1.0 - result.curve.p_hat.back()[0];
        if (kind == SamplerKind::hrla) ok &= hit == 1.0;
        detail += fmt("%s hit(eps=2) %.2f avg %.3f; ", std::string(to_string(kind)).c_str(), hit,
                      result.summary.avg);
    }
    detail += fmt("%.1fs", seconds_since(start));
    report(ok, "sampler-comparison", detail);
}

} // namespace

int main() {
    const auto start = Clock::now();
    try {
        kernel_properties();
        gaussian_theory();
        invariant_law();
        bounds();
        table3_and_reproducibility();
        table1();
        sampler_comparison();
    } catch (const std::exception& e) {
        report(false, "unexpected-exception", e.what());
    }
    std::printf("%d failed, %.1fs total\n", failures, seconds_since(start));
    return failures == 0 ? 0 : 1;
}
