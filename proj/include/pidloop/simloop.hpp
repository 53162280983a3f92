#pragma once

#include <optional>
#include <vector>

#include "pidloop/control.hpp"

namespace pidloop::sim {

/// How the integral term is obtained each step: recomputed over the whole
/// history with the Simpson/trapezoid parity rule, or maintained as a
/// running trapezoid accumulator.
enum class IntegralMode {
    full_recompute,
    incremental_trapezoid,
};

/// Closed-loop run description. Defaults give a 1 m step command tracked
/// over 10 s at 100 Hz.
///
/// The controller output is a wheel angular rate; the plant advances by
/// wheel_radius * output * h per step. With wheel_radius = 1 the output is
/// applied directly as a linear velocity. The default 0.1 m radius places
/// the reference tuning (kp 10.8, ki 17.7, kd 3.2) in its converging regime
/// and puts the derivative-gain stability boundary near kd = 5, where
/// sustained oscillation sets in.
struct SimConfig {
    double h = 0.01;       // s, step size; must satisfy 0 < h < t_end
    double t_end = 10.0;   // s, horizon; t_end / h <= 1e7
    double x0 = 0.0;       // m, initial position
    control::ReferenceSignal reference = control::ReferenceSignal::constant(1.0);
    control::Gains gains{};
    double wheel_radius = 0.1;          // m, actuator gain from controller output to linear speed
    std::optional<double> v_max{};      // m/s, symmetric clamp |v| <= v_max when set
    IntegralMode integral_mode = IntegralMode::full_recompute;
};

/// Aligned closed-loop records: times, positions, tracking errors, applied
/// linear velocities. e[k] = R(t[k]) - x[k] and x[k+1] = x[k] + v[k] * h
/// hold by construction; all four sequences have equal length.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> x;
    std::vector<double> e;
    std::vector<double> v;
};

enum class Classification {
    converged,
    oscillating,
    diverged,
};

const char* to_string(Classification c);

/// Step-response quality measures. settling_time and rise_time are NaN when
/// undefined (diverged run, or the 90% level is never reached).
struct ResponseMetrics {
    double overshoot_pct = 0.0;        // peak excursion beyond R, % of the commanded step
    double settling_time = 0.0;        // s, first time after which |e| stays inside the band
    double steady_state_error = 0.0;   // m, mean |e| over the final 10% of the horizon
    double rise_time = 0.0;            // s, 10% -> 90% of the step
    Classification classification = Classification::converged;
};

/// Runs the closed loop: at each step the newest error is appended to the
/// history, the PID output is computed from the full history, converted to a
/// linear velocity through wheel_radius, optionally clamped, and the plant
/// advances one Euler step. The final sample's e and v are computed for
/// completeness. If the state stops being finite the trajectory is truncated
/// at the offending step (metrics then classify the run as diverged).
Trajectory simulate(const SimConfig& config);

/// Extracts step-response metrics against a constant reference.
/// band_pct sets the settling band as a percentage of the step magnitude.
/// Throws for non-constant references and for a degenerate step (R == x0).
ResponseMetrics compute_metrics(const Trajectory& traj, const control::ReferenceSignal& reference,
                                double band_pct = 2.0);

enum class GainAxis { kp, ki, kd };

struct SweepRow {
    double value = 0.0;
    ResponseMetrics metrics;
};

/// One simulate + compute_metrics per value, varying only the chosen gain.
/// Rows come back in input order; a row that fails to run is reported as
/// diverged rather than aborting the sweep.
std::vector<SweepRow> gain_sweep(const SimConfig& base, GainAxis axis,
                                 const std::vector<double>& values);

}  // namespace pidloop::sim
