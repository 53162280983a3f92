#pragma once

namespace pidloop::plant {

/// Differential-drive geometry. half_track is half the distance between
/// the two wheels.
struct DiffDriveParams {
    DiffDriveParams(double wheel_radius, double half_track);
    double wheel_radius;  // m
    double half_track;    // m
};

struct Pose {
    double x = 0.0;        // m
    double y = 0.0;        // m
    double heading = 0.0;  // rad, from the x-axis
};

struct WheelRates {
    double right = 0.0;  // rad/s
    double left = 0.0;   // rad/s
};

struct BodyRates {
    double x_dot = 0.0;        // m/s
    double y_dot = 0.0;        // m/s
    double heading_dot = 0.0;  // rad/s
};

/// Kinematic map from wheel rates to body-frame velocities:
///   x_dot = (r/2) cos(heading) (w_r + w_l)
///   y_dot = (r/2) sin(heading) (w_r + w_l)
///   heading_dot = (r / 2b) (w_r - w_l)
BodyRates body_rates(const Pose& pose, const WheelRates& wheels, const DiffDriveParams& params);

/// One explicit-Euler step of the full pose. Requires h > 0.
Pose step_pose(const Pose& pose, const WheelRates& wheels, const DiffDriveParams& params, double h);

/// One explicit-Euler step of the straight-line reduction: x + v * h.
/// With equal wheel rates and zero initial heading this reproduces the full
/// pose update exactly (the robot only moves forward and backward).
double step_1d(double x, double v, double h);

}  // namespace pidloop::plant
