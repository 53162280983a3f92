#pragma once

#include <cstddef>
#include <vector>

namespace pidloop {

/// A uniformly sampled time series: sample k lives at start_time + k * step.
///
/// The controller's error history and all quadrature/differencing inputs use
/// this type. Invariants (step > 0 and finite, at least one sample, every
/// sample finite) are enforced on construction and on push_back.
class SampledSignal {
public:
    SampledSignal(double start_time, double step, std::vector<double> samples);

    double start_time() const { return start_time_; }
    double step() const { return step_; }
    std::size_t size() const { return samples_.size(); }

    double operator[](std::size_t k) const { return samples_[k]; }
    double time_at(std::size_t k) const { return start_time_ + static_cast<double>(k) * step_; }

    /// Newest sample; from_back(1) is the one before it.
    double back(std::size_t from_back = 0) const { return samples_[samples_.size() - 1 - from_back]; }

    const std::vector<double>& samples() const { return samples_; }

    /// Appends one sample at the next grid point. Rejects non-finite values.
    void push_back(double value);

    /// Pre-allocates capacity for a growing history.
    void reserve(std::size_t n) { samples_.reserve(n); }

private:
    double start_time_;
    double step_;
    std::vector<double> samples_;
};

}  // namespace pidloop
