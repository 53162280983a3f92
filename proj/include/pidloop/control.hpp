#pragma once

#include <optional>

#include "pidloop/sampled_signal.hpp"

namespace pidloop::control {

/// PID gain triple. Negative gains are permitted for experiments.
struct Gains {
    double kp = 0.0;
    double ki = 0.0;
    double kd = 0.0;
};

/// Setpoint the loop tracks: a constant, or a table sampled on the
/// simulation grid. Tabulated lookup snaps to the nearest grid sample and
/// rejects queries outside the table's span.
class ReferenceSignal {
public:
    static ReferenceSignal constant(double value);
    static ReferenceSignal tabulated(SampledSignal table);

    bool is_constant() const { return !table_.has_value(); }
    double constant_value() const;
    const SampledSignal& table() const;

    /// R(t): the constant, or the nearest table sample. Throws when a
    /// tabulated reference is queried outside its grid.
    double value_at(double t) const;

private:
    explicit ReferenceSignal(double value) : value_(value) {}
    explicit ReferenceSignal(SampledSignal table);

    double value_ = 0.0;
    std::optional<SampledSignal> table_;
};

/// Tracking error R(t) - x.
double error_at(const ReferenceSignal& reference, double position, double t);

/// PID law over the full error history:
///   kp * e_newest + ki * integrate_history(e) + kd * differentiate_latest(e)
double pid_output(const SampledSignal& error_history, const Gains& gains);

/// Same law with a caller-maintained integral (incremental accumulator mode).
double pid_output(const SampledSignal& error_history, const Gains& gains, double integral);

}  // namespace pidloop::control
