#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pidloop/control.hpp"
#include "pidloop/numerics.hpp"

using pidloop::SampledSignal;
namespace control = pidloop::control;

TEST_CASE("error_at") {
    const auto unit_ref = control::ReferenceSignal::constant(1.0);
    CHECK(control::error_at(unit_ref, 0.3, 0.0) == doctest::Approx(0.7));
    CHECK(control::error_at(unit_ref, 1.0, 5.0) == 0.0);

    std::vector<double> table(101);
    for (std::size_t k = 0; k < table.size(); ++k) {
        table[k] = std::sin(0.01 * static_cast<double>(k));
    }
    const auto sin_ref = control::ReferenceSignal::tabulated(SampledSignal(0.0, 0.01, table));
    CHECK(control::error_at(sin_ref, 0.0, 0.0) == 0.0);
    // Nearest-sample lookup off the grid.
    CHECK(sin_ref.value_at(0.014) == table[1]);
    CHECK(sin_ref.value_at(0.016) == table[2]);
    CHECK_THROWS_AS(sin_ref.value_at(1.5), std::invalid_argument);
    CHECK_THROWS_AS(sin_ref.value_at(-0.2), std::invalid_argument);
}

TEST_CASE("pid_output worked examples") {
    SUBCASE("zero history gives zero output") {
        SampledSignal zeros(0, 0.1, {0.0, 0.0, 0.0, 0.0});
        CHECK(control::pid_output(zeros, {3.0, 5.0, 7.0}) == 0.0);
    }
    SUBCASE("constant history, unit gains") {
        SampledSignal ones(0, 0.1, {1.0, 1.0, 1.0});
        CHECK(control::pid_output(ones, {1.0, 1.0, 1.0}) == doctest::Approx(1.2).epsilon(1e-13));
        CHECK(control::pid_output(ones, {2.0, 2.0, 2.0}) == doctest::Approx(2.4).epsilon(1e-13));
    }
}

TEST_CASE("pid_output gain linearity and decomposition") {
    std::mt19937 rng(40);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + rng() % 12;
        std::vector<double> vals(n);
        for (auto& v : vals) {
            v = dist(rng);
        }
        SampledSignal hist(0, 0.05, vals);
        const control::Gains g{dist(rng), dist(rng), dist(rng)};
        const double scale = dist(rng);

        const double whole = control::pid_output(hist, g);
        const double scaled =
            control::pid_output(hist, {scale * g.kp, scale * g.ki, scale * g.kd});
        CHECK(oracles::close_rel(scaled, scale * whole, 1e-12));

        const double parts = control::pid_output(hist, {g.kp, 0, 0}) +
                             control::pid_output(hist, {0, g.ki, 0}) +
                             control::pid_output(hist, {0, 0, g.kd});
        CHECK(oracles::close_rel(parts, whole, 1e-12));
    }
}

TEST_CASE("pid_output proportional-only path is exact") {
    SampledSignal hist(0, 0.01, {0.4, -0.8, 0.3});
    const double kp = 11.7;
    CHECK(control::pid_output(hist, {kp, 0.0, 0.0}) == kp * 0.3);
}

TEST_CASE("appending a zero sample to a zero history keeps output zero") {
    SampledSignal hist(0, 0.1, {0.0});
    control::Gains g{4.0, 3.0, 2.0};
    for (int k = 0; k < 5; ++k) {
        hist.push_back(0.0);
        CHECK(control::pid_output(hist, g) == 0.0);
    }
}

TEST_CASE("pid_output with a caller-supplied integral") {
    SampledSignal hist(0, 0.1, {1.0, 2.0, 4.0});
    const control::Gains g{1.0, 10.0, 0.5};
    const double deriv = pidloop::numerics::differentiate_latest(hist);
    CHECK(control::pid_output(hist, g, 0.25) ==
          doctest::Approx(1.0 * 4.0 + 10.0 * 0.25 + 0.5 * deriv));
    // Supplying the recomputed integral reproduces the two-argument form.
    const double full = pidloop::numerics::integrate_history(hist);
    CHECK(control::pid_output(hist, g, full) == control::pid_output(hist, g));
}
