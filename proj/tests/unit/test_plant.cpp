#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "pidloop/plant.hpp"

namespace plant = pidloop::plant;

TEST_CASE("DiffDriveParams invariants") {
    CHECK_THROWS_AS(plant::DiffDriveParams(0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(plant::DiffDriveParams(0.05, -1.0), std::invalid_argument);
    CHECK_NOTHROW(plant::DiffDriveParams(0.05, 0.1));
}

TEST_CASE("body_rates worked examples") {
    const plant::DiffDriveParams params(0.05, 0.12);
    SUBCASE("equal rates drive straight along x") {
        const double w = 3.0;
        const auto r = plant::body_rates({0, 0, 0}, {w, w}, params);
        CHECK(r.x_dot == doctest::Approx(params.wheel_radius * w).epsilon(1e-14));
        CHECK(r.y_dot == 0.0);
        CHECK(r.heading_dot == 0.0);
    }
    SUBCASE("opposite rates spin in place") {
        const double w = 2.0;
        const auto r = plant::body_rates({0, 0, 0}, {w, -w}, params);
        CHECK(r.x_dot == 0.0);
        CHECK(r.y_dot == 0.0);
        CHECK(r.heading_dot ==
              doctest::Approx(params.wheel_radius * w / params.half_track).epsilon(1e-12));
    }
    SUBCASE("at rest") {
        const auto r = plant::body_rates({1.0, -2.0, 0.4}, {0, 0}, params);
        CHECK(r.x_dot == 0.0);
        CHECK(r.y_dot == 0.0);
        CHECK(r.heading_dot == 0.0);
    }
}

TEST_CASE("body_rates is linear in wheel rates") {
    const plant::DiffDriveParams params(0.07, 0.15);
    const plant::Pose pose{0.3, -0.2, 0.9};
    std::mt19937 rng(8);
    std::uniform_real_distribution<double> dist(-4.0, 4.0);
    for (int trial = 0; trial < 20; ++trial) {
        const plant::WheelRates a{dist(rng), dist(rng)};
        const plant::WheelRates b{dist(rng), dist(rng)};
        const double s = dist(rng);
        const auto ra = plant::body_rates(pose, a, params);
        const auto rb = plant::body_rates(pose, b, params);
        const auto rsum =
            plant::body_rates(pose, {a.right + s * b.right, a.left + s * b.left}, params);
        CHECK(oracles::close_rel(rsum.x_dot, ra.x_dot + s * rb.x_dot, 1e-12));
        CHECK(oracles::close_rel(rsum.y_dot, ra.y_dot + s * rb.y_dot, 1e-12));
        CHECK(oracles::close_rel(rsum.heading_dot, ra.heading_dot + s * rb.heading_dot, 1e-12));
    }
}

TEST_CASE("step_pose basics") {
    const plant::DiffDriveParams params(0.05, 0.1);
    SUBCASE("rest pose with idle wheels is unchanged") {
        const plant::Pose p{0.7, 0.2, -0.3};
        const auto next = plant::step_pose(p, {0, 0}, params, 0.1);
        CHECK(next.x == p.x);
        CHECK(next.y == p.y);
        CHECK(next.heading == p.heading);
    }
    SUBCASE("straight advance") {
        const auto next = plant::step_pose({0, 0, 0}, {1.0, 1.0}, params, 0.1);
        CHECK(next.x == doctest::Approx(0.005).epsilon(1e-14));
        CHECK(next.y == 0.0);
        CHECK(next.heading == 0.0);
    }
    SUBCASE("rejects a non-positive step") {
        CHECK_THROWS_AS(plant::step_pose({0, 0, 0}, {1, 1}, params, 0.0), std::invalid_argument);
    }
}

TEST_CASE("step_1d basics") {
    CHECK(plant::step_1d(0.0, 1.0, 0.01) == doctest::Approx(0.01));
    CHECK(plant::step_1d(2.0, 0.0, 0.5) == 2.0);
    CHECK(plant::step_1d(1.0, -0.5, 0.2) == doctest::Approx(0.9));
    CHECK_THROWS_AS(plant::step_1d(0.0, 1.0, -0.1), std::invalid_argument);
}

TEST_CASE("straight-line reduction matches the full pose update bit for bit") {
    // Equal wheel rates from zero heading: the 3-DOF model must collapse to
    // x <- x + (r w) h with y and heading pinned at zero.
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> dist(0.02, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        const plant::DiffDriveParams params(dist(rng) / 10.0, dist(rng) / 10.0);
        const double w = (trial % 2 == 0 ? 1.0 : -1.0) * dist(rng);
        const double h = dist(rng) / 50.0;
        const double v = params.wheel_radius * w;

        plant::Pose pose{0.0, 0.0, 0.0};
        double x = 0.0;
        for (int k = 0; k < 1000; ++k) {
            pose = plant::step_pose(pose, {w, w}, params, h);
            x = plant::step_1d(x, v, h);
            REQUIRE(pose.x == x);
            REQUIRE(pose.y == 0.0);
            REQUIRE(pose.heading == 0.0);
        }
    }
}

TEST_CASE("one Euler step vs two half steps") {
    const plant::DiffDriveParams params(0.05, 0.1);
    SUBCASE("constant-rate straight line: no curvature, exact agreement") {
        // Dyadic inputs keep every intermediate value exact.
        const plant::DiffDriveParams dyadic(0.0625, 0.125);
        const plant::Pose p{0.25, 0.0, 0.0};
        const plant::WheelRates w{2.0, 2.0};
        const double h = 0.125;
        const auto one = plant::step_pose(p, w, dyadic, h);
        const auto two = plant::step_pose(plant::step_pose(p, w, dyadic, h / 2), w, dyadic, h / 2);
        CHECK(one.x == two.x);
        CHECK(one.y == two.y);
        CHECK(one.heading == two.heading);
    }
    SUBCASE("turning: disagreement shrinks as O(h^2)") {
        const plant::Pose p{0.0, 0.0, 0.3};
        const plant::WheelRates w{2.0, 1.0};
        auto gap = [&](double h) {
            const auto one = plant::step_pose(p, w, params, h);
            const auto two =
                plant::step_pose(plant::step_pose(p, w, params, h / 2), w, params, h / 2);
            return std::max({std::abs(one.x - two.x), std::abs(one.y - two.y),
                             std::abs(one.heading - two.heading)});
        };
        const double g1 = gap(0.2);
        const double g2 = gap(0.1);
        const double g3 = gap(0.05);
        CHECK(g1 / g2 == doctest::Approx(4.0).epsilon(0.2));
        CHECK(g2 / g3 == doctest::Approx(4.0).epsilon(0.2));
    }
}
