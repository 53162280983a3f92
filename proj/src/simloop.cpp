#include "pidloop/simloop.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "pidloop/numerics.hpp"
#include "pidloop/plant.hpp"

namespace pidloop::sim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDivergenceFactor = 1e3;  // |e| beyond this multiple of the step is divergence

void validate(const SimConfig& c) {
    if (!std::isfinite(c.h) || !std::isfinite(c.t_end) || !(c.h > 0.0) || !(c.h < c.t_end)) {
        throw std::invalid_argument("SimConfig: need 0 < h < t_end, both finite");
    }
    if (c.t_end / c.h > 1e7) {
        throw std::invalid_argument("SimConfig: t_end / h exceeds the 1e7 resource bound");
    }
    if (!std::isfinite(c.x0)) {
        throw std::invalid_argument("SimConfig: x0 must be finite");
    }
    if (!std::isfinite(c.gains.kp) || !std::isfinite(c.gains.ki) || !std::isfinite(c.gains.kd)) {
        throw std::invalid_argument("SimConfig: gains must be finite");
    }
    if (!(c.wheel_radius > 0.0) || !std::isfinite(c.wheel_radius)) {
        throw std::invalid_argument("SimConfig: wheel_radius must be positive and finite");
    }
    if (c.v_max && (!(*c.v_max > 0.0) || !std::isfinite(*c.v_max))) {
        throw std::invalid_argument("SimConfig: v_max must be positive and finite");
    }
    if (!c.reference.is_constant()) {
        const SampledSignal& tab = c.reference.table();
        if (tab.start_time() != 0.0 || tab.step() != c.h) {
            throw std::invalid_argument(
                "SimConfig: tabulated reference grid must match the simulation grid");
        }
        if (tab.time_at(tab.size() - 1) < c.t_end - c.h * 1e-9) {
            throw std::invalid_argument("SimConfig: tabulated reference does not cover t_end");
        }
    }
}

}  // namespace

const char* to_string(Classification c) {
    switch (c) {
        case Classification::converged:
            return "converged";
        case Classification::oscillating:
            return "oscillating";
        default:
            return "diverged";
    }
}

Trajectory simulate(const SimConfig& config) {
    validate(config);

    const double h = config.h;
    const auto steps = static_cast<std::size_t>(std::llround(config.t_end / h));

    Trajectory traj;
    traj.t.reserve(steps + 1);
    traj.x.reserve(steps + 1);
    traj.e.reserve(steps + 1);
    traj.v.reserve(steps + 1);

    traj.t.push_back(0.0);
    traj.x.push_back(config.x0);

    SampledSignal history(0.0, h, {control::error_at(config.reference, config.x0, 0.0)});
    history.reserve(steps + 1);
    double trapezoid_acc = 0.0;

    for (std::size_t k = 1; k <= steps; ++k) {
        const double rate =
            config.integral_mode == IntegralMode::full_recompute
                ? control::pid_output(history, config.gains)
                : control::pid_output(history, config.gains, trapezoid_acc);
        double v = config.wheel_radius * rate;
        if (config.v_max) {
            v = std::clamp(v, -*config.v_max, *config.v_max);
        }
        traj.e.push_back(history.back());
        traj.v.push_back(v);

        const double t = static_cast<double>(k) * h;
        const double x = plant::step_1d(traj.x.back(), v, h);
        if (!std::isfinite(x)) {
            break;  // truncated; compute_metrics will classify the run as diverged
        }
        traj.t.push_back(t);
        traj.x.push_back(x);

        const double e = control::error_at(config.reference, x, t);
        trapezoid_acc += (e + history.back()) * h / 2.0;
        history.push_back(e);
    }

    if (traj.e.size() < traj.x.size()) {
        // Completed horizon: record the final sample's error and command.
        const double rate =
            config.integral_mode == IntegralMode::full_recompute
                ? control::pid_output(history, config.gains)
                : control::pid_output(history, config.gains, trapezoid_acc);
        double v = config.wheel_radius * rate;
        if (config.v_max) {
            v = std::clamp(v, -*config.v_max, *config.v_max);
        }
        traj.e.push_back(history.back());
        traj.v.push_back(v);
    }
    return traj;
}

ResponseMetrics compute_metrics(const Trajectory& traj, const control::ReferenceSignal& reference,
                                double band_pct) {
    if (!reference.is_constant()) {
        throw std::invalid_argument("compute_metrics: only constant references are supported");
    }
    if (traj.t.size() < 2 || traj.t.size() != traj.x.size() || traj.t.size() != traj.e.size()) {
        throw std::invalid_argument("compute_metrics: malformed trajectory");
    }
    if (!(band_pct > 0.0) || !std::isfinite(band_pct)) {
        throw std::invalid_argument("compute_metrics: band_pct must be positive and finite");
    }

    const double target = reference.constant_value();
    const double x0 = traj.x.front();
    const double step = target - x0;
    if (step == 0.0) {
        throw std::invalid_argument("compute_metrics: degenerate step (reference equals x0)");
    }
    const double step_mag = std::abs(step);
    const std::size_t n = traj.x.size();

    ResponseMetrics m;

    bool finite = true;
    double worst_err = 0.0;
    double peak = x0;  // most extreme excursion in the step direction
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(traj.x[k]) || !std::isfinite(traj.e[k])) {
            finite = false;
            continue;
        }
        worst_err = std::max(worst_err, std::abs(traj.e[k]));
        peak = step > 0.0 ? std::max(peak, traj.x[k]) : std::min(peak, traj.x[k]);
    }
    const bool diverged = !finite || worst_err > kDivergenceFactor * step_mag;

    const double beyond = step > 0.0 ? peak - target : target - peak;
    m.overshoot_pct = std::max(0.0, beyond / step_mag * 100.0);

    // Settling: earliest sample from which |e| stays inside the band.
    const double band = band_pct / 100.0 * step_mag;
    std::size_t settled_from = n;
    for (std::size_t k = n; k-- > 0;) {
        if (std::isfinite(traj.e[k]) && std::abs(traj.e[k]) <= band) {
            settled_from = k;
        } else {
            break;
        }
    }
    const bool settled = settled_from < n;

    // Steady-state error: mean |e| over the final 10% of the horizon.
    const double horizon_start = traj.t.front() + 0.9 * (traj.t.back() - traj.t.front());
    double abs_sum = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < n; ++k) {
        if (traj.t[k] >= horizon_start) {
            abs_sum += std::abs(traj.e[k]);
            ++count;
        }
    }
    m.steady_state_error = count > 0 ? abs_sum / static_cast<double>(count) : kNaN;

    // Rise: first times the response covers 10% and 90% of the step.
    double t10 = kNaN;
    double t90 = kNaN;
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(traj.x[k])) {
            continue;
        }
        const double progress = (traj.x[k] - x0) / step;
        if (std::isnan(t10) && progress >= 0.1) {
            t10 = traj.t[k];
        }
        if (progress >= 0.9) {
            t90 = traj.t[k];
            break;
        }
    }
    m.rise_time = t90 - t10;  // NaN when either level is never reached

    if (diverged) {
        m.classification = Classification::diverged;
        m.settling_time = kNaN;
    } else if (settled) {
        m.classification = Classification::converged;
        m.settling_time = traj.t[settled_from];
    } else {
        m.classification = Classification::oscillating;
        m.settling_time = traj.t.back();
    }
    return m;
}

std::vector<SweepRow> gain_sweep(const SimConfig& base, GainAxis axis,
                                 const std::vector<double>& values) {
    if (values.empty()) {
        throw std::invalid_argument("gain_sweep: value list must be non-empty");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("gain_sweep: gain values must be finite");
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (double value : values) {
        SimConfig config = base;
        switch (axis) {
            case GainAxis::kp:
                config.gains.kp = value;
                break;
            case GainAxis::ki:
                config.gains.ki = value;
                break;
            case GainAxis::kd:
                config.gains.kd = value;
                break;
        }
        SweepRow row;
        row.value = value;
        try {
            row.metrics = compute_metrics(simulate(config), config.reference);
        } catch (const std::exception&) {
            row.metrics = ResponseMetrics{};
            row.metrics.classification = Classification::diverged;
            row.metrics.overshoot_pct = kNaN;
            row.metrics.settling_time = kNaN;
            row.metrics.steady_state_error = kNaN;
            row.metrics.rise_time = kNaN;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace pidloop::sim
