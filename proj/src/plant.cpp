#include "pidloop/plant.hpp"

#include <cmath>
#include <stdexcept>

namespace pidloop::plant {

DiffDriveParams::DiffDriveParams(double wheel_radius_, double half_track_)
    : wheel_radius(wheel_radius_), half_track(half_track_) {
    if (!(wheel_radius > 0.0) || !std::isfinite(wheel_radius)) {
        throw std::invalid_argument("DiffDriveParams: wheel radius must be positive and finite");
    }
    if (!(half_track > 0.0) || !std::isfinite(half_track)) {
        throw std::invalid_argument("DiffDriveParams: half track must be positive and finite");
    }
}

BodyRates body_rates(const Pose& pose, const WheelRates& wheels, const DiffDriveParams& params) {
    const double forward = 0.5 * params.wheel_radius * (wheels.right + wheels.left);
    BodyRates rates;
    rates.x_dot = forward * std::cos(pose.heading);
    rates.y_dot = forward * std::sin(pose.heading);
    rates.heading_dot = 0.5 * params.wheel_radius / params.half_track * (wheels.right - wheels.left);
    return rates;
}

Pose step_pose(const Pose& pose, const WheelRates& wheels, const DiffDriveParams& params, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("step_pose: step size must be positive and finite");
    }
    const BodyRates rates = body_rates(pose, wheels, params);
    Pose next;
    next.x = pose.x + rates.x_dot * h;
    next.y = pose.y + rates.y_dot * h;
    next.heading = pose.heading + rates.heading_dot * h;
    return next;
}

double step_1d(double x, double v, double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("step_1d: step size must be positive and finite");
    }
    return x + v * h;
}

}  // namespace pidloop::plant
