// Command-line front end: experiment, optimize, validate-gaussian, bounds.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include "hrla/diagnostics.hpp"
#include "hrla/errors.hpp"
#include "hrla/harness.hpp"
#include "hrla/optimizer.hpp"
#include "hrla/sampler.hpp"

namespace {

int run_experiment_cmd(const std::string& config_path, const std::string& out_dir,
                       std::optional<std::size_t> workers) {
    hrla::ExperimentConfig cfg = hrla::load_config(config_path);
    if (workers) cfg.workers = *workers;
    const auto result = hrla::run_experiment(cfg);
    hrla::write_experiment(out_dir, result);
    hrla::write_summary_csv(std::cout, result);
    std::cerr << "gradient evaluations: " << result.gradient_evaluations << '\n';
    return 0;
}

struct OptimizeArgs {
    std::string potential = "rastrigin";
    std::size_t d = 10;
    double a = 4.0;
    double h = 0.01;
    std::size_t n = 10;
    std::size_t k = 14000;
    std::uint64_t seed = 1;
    std::string sampler = "hrla";
    std::string init = "gaussian";
    double init_mean = 3.0;
    double init_variance = 10.0;
    std::size_t workers = 1;
};

int run_optimize_cmd(const OptimizeArgs& args) {
    const hrla::Potential potential = hrla::make_potential(args.potential, args.d);
    const auto kind = hrla::parse_sampler_kind(args.sampler);
    hrla::ChainSpec spec;
    spec.kind = kind;
    spec.params = hrla::sampler_params(kind, args.a, args.h);
    spec.iterations = args.k;
    const auto init = args.init == "dirac"
                          ? hrla::InitialDistribution::dirac(args.d, args.init_mean)
                          : hrla::InitialDistribution::gaussian(args.d, args.init_mean, args.init_variance);

    auto oracle = [&](std::size_t, hrla::RandomStream& stream) {
        return hrla::run_chain(spec, potential, init, stream, {}, false).final_state.x;
    };
    const auto result = hrla::global_optimize(oracle, potential, args.n, args.seed, 0, args.workers);

    std::cout << "best_value = " << hrla::format_number(result.best_value) << '\n';
    std::cout << "best_index = " << result.best_index << '\n';
    std::cout << "best_point =";
    for (double v : result.best_point) std::cout << ' ' << hrla::format_number(v);
    std::cout << '\n';
    return 0;
}

int run_validate_cmd(double a, double b, double h, std::size_t k, double curvature,
                     const std::string& out_path) {
    const hrla::HrlaParams params = hrla::hrla_params(a, h, b);
    hrla::GaussianLaw init;
    init.mean = {3.0, 0.0};
    init.cov = {10.0, 0.0, 1.0 / b};
    const auto profile = hrla::kl_decay_profile(params, curvature, k, init);
    if (out_path.empty() || out_path == "-") {
        hrla::write_kl_profile_csv(std::cout, profile, h);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw hrla::InvalidArgument("cannot write " + out_path);
        hrla::write_kl_profile_csv(out, profile, h);
    }
    std::cerr << "floor = " << hrla::format_number(profile.floor)
              << ", decay rate = " << hrla::format_number(profile.decay_rate)
              << ", R^2 = " << hrla::format_number(profile.r_squared) << " over "
              << profile.fit_points << " iterations\n";
    return 0;
}

int run_bounds_cmd(const hrla::BoundsRequest& req, std::optional<double> a, double h, std::size_t d) {
    const auto need = hrla::required_sample_count(req);
    std::cout << "n_min = " << need.n_min << '\n';
    std::cout << "a_min = " << hrla::format_number(need.a_min) << '\n';
    if (req.rho) {
        const double a_used = a.value_or(need.a_min);
        const auto params = hrla::hrla_params(a_used, h);
        const auto t = hrla::theory_constants(params, *req.rho, req.l, d);
        const double kl_target = req.epsilon * req.epsilon / 18.0;
        const double h_suff = t.sufficient_step(kl_target);
        std::cout << "a = " << hrla::format_number(a_used) << '\n'
                  << "theta = " << hrla::format_number(t.theta) << '\n'
                  << "tau = " << hrla::format_number(t.tau) << '\n'
                  << "A = " << hrla::format_number(t.a_const) << '\n'
                  << "B = " << hrla::format_number(t.b_const) << '\n'
                  << "B_hat = " << hrla::format_number(t.b_hat) << '\n'
                  << "h_max = " << hrla::format_number(t.h_max) << '\n'
                  << "kl_target = " << hrla::format_number(kl_target) << '\n'
                  << "h_sufficient = " << hrla::format_number(h_suff) << '\n'
                  << "k_sufficient = " << t.sufficient_iterations(kl_target, h_suff) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"High-resolution Langevin global optimization toolkit"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::size_t> exp_workers;
    auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo protocol from a config file");
    experiment->add_option("--config", config_path, "Config file (key = value)")->required()->check(CLI::ExistingFile);
    experiment->add_option("--out", out_dir, "Output directory for CSV files")->required();
    experiment->add_option("--workers", exp_workers, "Override worker count (0 = all cores)");

    OptimizeArgs opt;
    auto* optimize = app.add_subcommand("optimize", "Sample-and-argmin on a built-in potential");
    optimize->add_option("--potential", opt.potential)->check(CLI::IsMember({"rastrigin", "quadratic"}));
    optimize->add_option("--d", opt.d)->check(CLI::PositiveNumber);
    optimize->add_option("--a", opt.a, "Inverse temperature")->check(CLI::PositiveNumber);
    optimize->add_option("--h", opt.h, "Step size")->check(CLI::PositiveNumber);
    optimize->add_option("--n", opt.n, "Number of samples")->check(CLI::PositiveNumber);
    optimize->add_option("--k", opt.k, "Iterations per sample")->check(CLI::PositiveNumber);
    optimize->add_option("--seed", opt.seed);
    optimize->add_option("--sampler", opt.sampler)->check(CLI::IsMember({"hrla", "ola", "ula"}));
    optimize->add_option("--init", opt.init)->check(CLI::IsMember({"gaussian", "dirac"}));
    optimize->add_option("--init-mean", opt.init_mean, "Initial mean (or Dirac point) per coordinate");
    optimize->add_option("--init-variance", opt.init_variance)->check(CLI::PositiveNumber);
    optimize->add_option("--workers", opt.workers);

    double va = 4.0, vb = 10.0, vh = 0.001, vcurv = 1.0;
    std::size_t vk = 20000;
    std::string vout;
    auto* validate = app.add_subcommand("validate-gaussian", "Exact KL profile on a quadratic potential");
    validate->add_option("--a", va)->check(CLI::PositiveNumber);
    validate->add_option("--b", vb)->check(CLI::PositiveNumber);
    validate->add_option("--h", vh)->check(CLI::PositiveNumber);
    validate->add_option("--k", vk)->check(CLI::PositiveNumber);
    validate->add_option("--curvature", vcurv)->check(CLI::PositiveNumber);
    validate->add_option("--out", vout, "CSV path (default stdout)");

    hrla::BoundsRequest req;
    double rho = 0.0, bh = 0.01;
    std::optional<double> ba;
    std::size_t bd = 10;
    auto* bounds = app.add_subcommand("bounds", "Sample count, inverse temperature and step-size bounds");
    bounds->add_option("--eps", req.epsilon)->required();
    bounds->add_option("--delta", req.delta)->required();
    bounds->add_option("--c", req.c, "W2 concentration constant (default 1)");
    bounds->add_option("--l", req.l, "Smoothness constant (default 1)");
    bounds->add_option("--a0", req.a0, "Integrability threshold (default 1)");
    auto* rho_opt = bounds->add_option("--rho", rho, "Log-Sobolev constant; enables step-size constants");
    bounds->add_option("--a", ba, "Inverse temperature for the constants (default a_min)");
    bounds->add_option("--h", bh, "Step size for the constants");
    bounds->add_option("--d", bd, "Dimension for the constants");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*experiment) return run_experiment_cmd(config_path, out_dir, exp_workers);
        if (*optimize) return run_optimize_cmd(opt);
        if (*validate) return run_validate_cmd(va, vb, vh, vk, vcurv, vout);
        if (*bounds) {
            if (rho_opt->count() > 0) req.rho = rho;
            return run_bounds_cmd(req, ba, bh, bd);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
