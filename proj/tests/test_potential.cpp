#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hrla/errors.hpp"
#include "hrla/potential.hpp"

using namespace hrla;

namespace {

std::vector<double> random_point(std::mt19937_64& rng, std::size_t d, double scale) {
    std::uniform_real_distribution<double> dist(-scale, scale);
    std::vector<double> x(d);
    for (auto& v : x) v = dist(rng);
    return x;
}

// Central differences, step 1e-5 of the coordinate scale.
std::vector<double> fd_gradient(const Potential& p, std::vector<double> x) {
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double step = 1e-5 * std::max(1.0, std::abs(x[i]));
        const double orig = x[i];
        x[i] = orig + step;
        const double up = p.value(x);
        x[i] = orig - step;
        const double down = p.value(x);
        x[i] = orig;
        g[i] = (up - down) / (2.0 * step);
    }
    return g;
}

void check_gradient(const Potential& p, double scale) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = random_point(rng, p.dimension(), scale);
        const auto g = gradient(p, x);
        const auto fd = fd_gradient(p, x);
        double err = 0.0, norm = 0.0;
        for (std::size_t i = 0; i < g.size(); ++i) {
            err += (g[i] - fd[i]) * (g[i] - fd[i]);
            norm += g[i] * g[i];
        }
        CHECK(std::sqrt(err) <= 1e-5 * std::max(1.0, std::sqrt(norm)));

        std::vector<double> fused(p.dimension());
        CHECK(p.value_and_gradient(x, fused) == doctest::Approx(p.value(x)).epsilon(1e-14));
        for (std::size_t i = 0; i < g.size(); ++i) CHECK(fused[i] == doctest::Approx(g[i]).epsilon(1e-14));
    }
}

} // namespace

TEST_CASE("rastrigin reference values") {
    const Potential p = rastrigin(10);
    CHECK(p.dimension() == 10);
    REQUIRE(p.minimum());
    CHECK(*p.minimum() == 0.0);
    CHECK(*p.smoothness() == doctest::Approx(2.0 + 4.0 * M_PI * M_PI));

    std::vector<double> zero(10, 0.0);
    CHECK(evaluate(p, zero) == 0.0);
    for (double gi : gradient(p, zero)) CHECK(gi == 0.0);

    std::vector<double> ones(10, 1.0);
    CHECK(evaluate(p, ones) == doctest::Approx(10.0).epsilon(1e-14));

    std::vector<double> half(10, 0.0);
    half[0] = 0.5;
    CHECK(evaluate(p, half) == doctest::Approx(2.25).epsilon(1e-14));

    CHECK(evaluate(rastrigin(1), std::vector<double>{0.25}) == doctest::Approx(1.0625).epsilon(1e-14));
}

TEST_CASE("rastrigin rejects zero dimension") {
    CHECK_THROWS_AS(rastrigin(0), InvalidArgument);
}

TEST_CASE("quadratic values and exact gradient") {
    const Potential p = quadratic(2, 1.0);
    CHECK(evaluate(p, std::vector<double>{0.0, 0.0}) == 0.0);
    CHECK(evaluate(p, std::vector<double>{3.0, 4.0}) == 12.5);

    const Potential shifted = quadratic(2.5, {1.0, -2.0, 0.5});
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        const auto x = random_point(rng, 3, 5.0);
        const auto g = gradient(shifted, x);
        CHECK(g[0] == 2.5 * (x[0] - 1.0));
        CHECK(g[1] == 2.5 * (x[1] + 2.0));
        CHECK(g[2] == 2.5 * (x[2] - 0.5));
    }
    CHECK(evaluate(shifted, std::vector<double>{1.0, -2.0, 0.5}) == 0.0);
    CHECK_THROWS_AS(quadratic(0.0, std::vector<double>{0.0}), InvalidArgument);
    CHECK_THROWS_AS(quadratic(std::size_t{0}, 1.0), InvalidArgument);
}

TEST_CASE("evaluate validates its input") {
    const Potential p = rastrigin(3);
    CHECK_THROWS_AS(evaluate(p, std::vector<double>{1.0, 2.0}), DimensionMismatch);
    CHECK_THROWS_AS(evaluate(p, std::vector<double>{1.0, std::nan(""), 0.0}), InvalidArgument);
    CHECK_THROWS_AS(evaluate(p, std::vector<double>{1.0, std::numeric_limits<double>::infinity(), 0.0}),
                    InvalidArgument);
    CHECK_THROWS_AS(gradient(p, std::vector<double>{1.0}), DimensionMismatch);
}

TEST_CASE("gradients agree with central differences") {
    check_gradient(rastrigin(10), 3.0);
    check_gradient(rastrigin(1), 5.0);
    check_gradient(quadratic(1.7, {0.3, -0.2, 1.0, 4.0}), 4.0);
}

TEST_CASE("rastrigin symmetry and lower bounds") {
    const Potential p = rastrigin(7);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 1000; ++t) {
        auto x = random_point(rng, 7, 6.0);
        const double u = evaluate(p, x);
        double sq = 0.0;
        for (double v : x) sq += v * v;
        CHECK(u >= sq - 7.0);
        CHECK(u >= -1e-9);
        for (auto& v : x) v = -v;
        CHECK(evaluate(p, x) == u);
    }
}

TEST_CASE("built-in potentials by name") {
    CHECK(make_potential("rastrigin", 4).name() == "rastrigin");
    CHECK(make_potential("quadratic", 4, 2.0).name() == "quadratic");
    CHECK(*make_potential("quadratic", 4, 2.0).smoothness() == 2.0);
    CHECK_THROWS_AS(make_potential("ackley", 4), InvalidArgument);
}
