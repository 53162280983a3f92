#include "pidloop/control.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "pidloop/numerics.hpp"

namespace pidloop::control {

ReferenceSignal::ReferenceSignal(SampledSignal table) : table_(std::move(table)) {}

ReferenceSignal ReferenceSignal::constant(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("ReferenceSignal: constant value must be finite");
    }
    return ReferenceSignal(value);
}

ReferenceSignal ReferenceSignal::tabulated(SampledSignal table) {
    return ReferenceSignal(std::move(table));
}

double ReferenceSignal::constant_value() const {
    if (!is_constant()) {
        throw std::logic_error("ReferenceSignal: not a constant reference");
    }
    return value_;
}

const SampledSignal& ReferenceSignal::table() const {
    if (is_constant()) {
        throw std::logic_error("ReferenceSignal: not a tabulated reference");
    }
    return *table_;
}

double ReferenceSignal::value_at(double t) const {
    if (is_constant()) {
        return value_;
    }
    const SampledSignal& tab = *table_;
    const double last = tab.time_at(tab.size() - 1);
    // Tolerate grid-level roundoff at the ends, nothing more.
    const double slack = tab.step() * 1e-9;
    if (t < tab.start_time() - slack || t > last + slack) {
        throw std::invalid_argument("ReferenceSignal: query outside the tabulated domain");
    }
    auto k = static_cast<long long>(std::llround((t - tab.start_time()) / tab.step()));
    if (k < 0) {
        k = 0;
    }
    if (k >= static_cast<long long>(tab.size())) {
        k = static_cast<long long>(tab.size()) - 1;
    }
    return tab[static_cast<std::size_t>(k)];
}

double error_at(const ReferenceSignal& reference, double position, double t) {
    return reference.value_at(t) - position;
}

double pid_output(const SampledSignal& error_history, const Gains& gains) {
    return pid_output(error_history, gains, numerics::integrate_history(error_history));
}

double pid_output(const SampledSignal& error_history, const Gains& gains, double integral) {
    return gains.kp * error_history.back() + gains.ki * integral +
           gains.kd * numerics::differentiate_latest(error_history);
}

}  // namespace pidloop::control
