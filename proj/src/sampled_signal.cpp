#include "pidloop/sampled_signal.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pidloop {

SampledSignal::SampledSignal(double start_time, double step, std::vector<double> samples)
    : start_time_(start_time), step_(step), samples_(std::move(samples)) {
    if (!std::isfinite(start_time_)) {
        throw std::invalid_argument("SampledSignal: start time must be finite");
    }
    if (!(step_ > 0.0) || !std::isfinite(step_)) {
        throw std::invalid_argument("SampledSignal: step must be positive and finite");
    }
    if (samples_.empty()) {
        throw std::invalid_argument("SampledSignal: at least one sample required");
    }
    for (double v : samples_) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("SampledSignal: samples must be finite");
        }
    }
}

void SampledSignal::push_back(double value) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument("SampledSignal: samples must be finite");
    }
    samples_.push_back(value);
}

}  // namespace pidloop
