#include <doctest.h>

#include <cmath>
#include <vector>

#include "hrla/errors.hpp"
#include "hrla/sampler.hpp"

using namespace hrla;

TEST_CASE("annealing schedule interpolates linearly") {
    const AnnealingSchedule s{0.1, 4.0, 14000};
    CHECK(s.at(0) == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(s.at(7000) == doctest::Approx(2.05).epsilon(1e-15));
    CHECK(s.at(14000) == doctest::Approx(4.0).epsilon(1e-15));
    for (std::size_t k = 1; k <= 14000; ++k) CHECK(s.at(k) >= s.at(k - 1));

    CHECK_THROWS_AS((AnnealingSchedule{1.0, 1.0, 10}.validate()), InvalidArgument);
    CHECK_THROWS_AS((AnnealingSchedule{-1.0, 1.0, 10}.validate()), InvalidArgument);
    CHECK_THROWS_AS((AnnealingSchedule{0.1, 1.0, 0}.validate()), InvalidArgument);
}

TEST_CASE("annealed parameters satisfy the full-mode constraints at every k") {
    const AnnealingSchedule s{0.1, 4.0, 500};
    for (std::size_t k = 0; k <= 500; ++k) {
        const HrlaParams p = hrla_params(s.at(k), 0.01);
        CHECK_NOTHROW(p.validate());
        CHECK(p.gamma == doctest::Approx(s.at(k) / 10.0));
        CHECK(p.sigma_x2 == doctest::Approx(1.0 / s.at(k)));
        CHECK(p.sigma_y2 == doctest::Approx(0.1));
    }
}

TEST_CASE("OLA baseline is Euler-Maruyama on x") {
    const HrlaParams p = make_baseline(SamplerKind::ola, 4.0, 0.01);
    CHECK(p.mode == Mode::overdamped_baseline);
    const TransitionKernel k = build_kernel(p);
    // Mean x - h grad U(x): the total gradient coefficient equals h.
    CHECK(k.position_drift + k.coupling_drift == doctest::Approx(0.01).epsilon(1e-15));
    // Variance 2h/a.
    CHECK(k.cov_xx == doctest::Approx(2.0 * 0.01 / 4.0).epsilon(1e-15));
    CHECK(k.cov_xy == 0.0);
    CHECK(k.cov_yy == 0.0);
    CHECK(k.momentum_drift == 0.0);

    // x' = x - h grad U + sqrt(2h/a) xi when y = 0.
    const Potential pot = rastrigin(3);
    const ChainState s({0.2, -0.9, 1.4}, {0.0, 0.0, 0.0});
    RandomStream stream = substream(4, 0, 0), replica = stream;
    const ChainState next = step(k, pot, s, stream);
    std::vector<double> noise(6);
    replica.fill_normal(noise);
    const auto g = gradient(pot, s.x);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(next.x[i] == doctest::Approx(s.x[i] - 0.01 * g[i] + std::sqrt(2.0 * 0.01 / 4.0) * noise[i]).epsilon(1e-13));
        CHECK(next.y[i] == 0.0);
    }
}

TEST_CASE("ULA baseline drops the beta h term") {
    const HrlaParams p = make_baseline(SamplerKind::ula, 4.0, 0.01);
    CHECK(p.mode == Mode::underdamped_baseline);
    CHECK(p.beta == 0.0);
    CHECK(p.sigma_x2 == 0.0);
    CHECK(p.gamma == doctest::Approx(0.4));
    CHECK(p.sigma_y2 == doctest::Approx(0.1));
    const TransitionKernel k = build_kernel(p);
    CHECK(k.position_drift == 0.0);
    const TransitionKernel full = build_kernel(hrla_params(4.0, 0.01));
    CHECK(k.coupling_drift == doctest::Approx(full.coupling_drift).epsilon(1e-15));
    CHECK(k.velocity_gain == doctest::Approx(full.velocity_gain).epsilon(1e-15));
    CHECK(k.cov_xx == doctest::Approx(full.cov_xx - 2.0 * 0.25 * 0.01).epsilon(1e-12));
}

TEST_CASE("baseline argument validation") {
    CHECK_THROWS_AS(make_baseline(SamplerKind::ola, 0.0, 0.01), InvalidArgument);
    CHECK_THROWS_AS(make_baseline(SamplerKind::ula, 4.0, -0.01), InvalidArgument);
    CHECK_THROWS_AS(make_baseline(SamplerKind::ola, 0.5, 0.01, 10.0, 1.0, 1.0), InvalidArgument);
    CHECK_THROWS_AS(make_baseline(SamplerKind::hrla, 4.0, 0.01), InvalidArgument);
    CHECK(parse_sampler_kind("ula") == SamplerKind::ula);
    CHECK_THROWS_AS(parse_sampler_kind("mala"), InvalidArgument);
}

TEST_CASE("single-iteration chain equals one step from the Dirac start") {
    const Potential pot = rastrigin(10);
    const HrlaParams p = hrla_params(4.0, 0.01);
    const auto init = InitialDistribution::dirac(10, 0.0);
    RandomStream s1 = substream(8, 0, 0), s2 = s1;
    const ChainTrace trace = run_chain(p, pot, init, 1, s1);
    const ChainState expected = step(build_kernel(p), pot, ChainState(10), s2);
    CHECK(trace.final_state.x == expected.x);
    CHECK(trace.final_state.y == expected.y);
    REQUIRE(trace.values.size() == 1);
    CHECK(trace.values[0] == evaluate(pot, expected.x));
    CHECK(trace.gradient_evaluations == 1);
}

TEST_CASE("chain records U at each iterate and is reproducible") {
    const Potential pot = rastrigin(5);
    ChainSpec spec;
    spec.params = hrla_params(0.1, 0.01);
    spec.schedule = AnnealingSchedule{0.1, 4.0, 300};
    spec.iterations = 300;
    const auto init = InitialDistribution::gaussian(5, 3.0, 10.0);

    RandomStream s1 = substream(21, 2, 3), s2 = substream(21, 2, 3);
    const ChainTrace a = run_chain(spec, pot, init, s1);
    const ChainTrace b = run_chain(spec, pot, init, s2);
    CHECK(a.values == b.values);
    CHECK(a.values.size() == 300);
    CHECK(a.gradient_evaluations == 300);
    CHECK(a.values.back() == evaluate(pot, a.final_state.x));

    // Replaying by hand with per-iteration kernels reproduces the trajectory.
    RandomStream s3 = substream(21, 2, 3);
    ChainState state = init.sample(s3);
    for (std::size_t k = 0; k < 300; ++k) {
        const TransitionKernel kern = build_kernel(hrla_params(spec.schedule->at(k), 0.01));
        state = step(kern, pot, state, s3, k);
        CHECK(a.values[k] == evaluate(pot, state.x));
    }
}

TEST_CASE("run_chain argument checks") {
    const Potential pot = rastrigin(2);
    const auto init = InitialDistribution::dirac(2, 1.0);
    RandomStream s = substream(1, 0, 0);
    ChainSpec spec;
    spec.params = hrla_params(4.0, 0.01);
    spec.iterations = 0;
    CHECK_THROWS_AS(run_chain(spec, pot, init, s), InvalidArgument);

    spec.iterations = 10;
    spec.schedule = AnnealingSchedule{0.1, 4.0, 11};
    CHECK_THROWS_AS(run_chain(spec, pot, init, s), InvalidArgument);

    spec.schedule = AnnealingSchedule{0.0, 4.0, 10}; // a_0 = 0
    CHECK_THROWS_AS(run_chain(spec, pot, init, s), InvalidArgument);

    spec.schedule.reset();
    CHECK_THROWS_AS(run_chain(spec, pot, InitialDistribution::dirac(3, 0.0), s), DimensionMismatch);
}

TEST_CASE("divergent chain reports its iteration") {
    // Gradient blows up once |x| exceeds 10.
    const Potential pot(
        1, [](std::span<const double> x) { return x[0] * x[0]; },
        [](std::span<const double> x, std::span<double> g) {
            g[0] = std::abs(x[0]) > 10.0 ? std::numeric_limits<double>::infinity() : -1000.0;
        });
    const auto init = InitialDistribution::dirac(1, 0.0);
    RandomStream s = substream(1, 0, 0);
    try {
        run_chain(hrla_params(4.0, 0.01), pot, init, 1000, s);
        FAIL("expected divergence");
    } catch (const Divergence& e) {
        CHECK(e.iteration() > 0);
        CHECK(e.iteration() < 1000);
    }
}

TEST_CASE("initial distributions") {
    RandomStream s = substream(5, 0, 0);
    const auto dirac = InitialDistribution::dirac(std::vector<double>{1.0, 2.0});
    const ChainState d = dirac.sample(s);
    CHECK(d.x == std::vector<double>{1.0, 2.0});
    CHECK(d.y == std::vector<double>{0.0, 0.0});

    auto g = InitialDistribution::gaussian(1, 3.0, 10.0);
    double sum = 0, sq = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
        const double x = g.sample(s).x[0];
        sum += x;
        sq += (x - 3.0) * (x - 3.0);
    }
    CHECK(std::abs(sum / n - 3.0) < 4.0 * std::sqrt(10.0 / n));
    CHECK(std::abs(sq / n - 10.0) < 4.0 * 10.0 * std::sqrt(2.0 / n));

    g.y_variance = 0.1;
    const ChainState withy = g.sample(s);
    CHECK(withy.y[0] != 0.0);
    CHECK_THROWS_AS(InitialDistribution::gaussian(2, 0.0, 0.0), InvalidArgument);
}
