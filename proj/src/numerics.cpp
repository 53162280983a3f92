#include "pidloop/numerics.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>

namespace pidloop::numerics {

namespace {

// Simpson 1/3 over an odd-length prefix; count must be odd and >= 3.
double simpson_over(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    double sum = f[0] + f[n - 1];
    double odd = 0.0;
    for (std::size_t k = 1; k + 1 < n; k += 2) {
        odd += f[k];
    }
    double even = 0.0;
    for (std::size_t k = 2; k + 1 < n; k += 2) {
        even += f[k];
    }
    sum += 4.0 * odd + 2.0 * even;
    return sum * h / 3.0;
}

double trapezoid_tail(std::span<const double> f, double h) {
    const std::size_t n = f.size();
    return (f[n - 1] + f[n - 2]) * h / 2.0;
}

}  // namespace

double simpson_composite(const SampledSignal& signal) {
    const std::size_t n = signal.size();
    if (n < 3) {
        throw std::invalid_argument("simpson_composite: need at least 3 points");
    }
    if (n % 2 == 0) {
        throw std::invalid_argument(
            "simpson_composite: even point count; use integrate_history");
    }
    return simpson_over(signal.samples(), signal.step());
}

double trapezoid_last(const SampledSignal& signal) {
    if (signal.size() < 2) {
        throw std::invalid_argument("trapezoid_last: need at least 2 points");
    }
    return trapezoid_tail(signal.samples(), signal.step());
}

double integrate_history(const SampledSignal& signal) {
    const std::size_t n = signal.size();
    const double h = signal.step();
    std::span<const double> f{signal.samples()};
    if (n == 1) {
        return 0.0;
    }
    if (n == 2) {
        return trapezoid_tail(f, h);
    }
    if (n % 2 == 1) {
        return simpson_over(f, h);
    }
    return simpson_over(f.first(n - 1), h) + trapezoid_tail(f, h);
}

double backward_diff_2pt(const SampledSignal& signal) {
    if (signal.size() < 2) {
        throw std::invalid_argument("backward_diff_2pt: need at least 2 points");
    }
    return (signal.back(0) - signal.back(1)) / signal.step();
}

double backward_diff_3pt(const SampledSignal& signal) {
    if (signal.size() < 3) {
        throw std::invalid_argument("backward_diff_3pt: need at least 3 points");
    }
    return (signal.back(2) - 4.0 * signal.back(1) + 3.0 * signal.back(0)) /
           (2.0 * signal.step());
}

double differentiate_latest(const SampledSignal& signal) {
    switch (signal.size()) {
        case 1:
            return 0.0;
        case 2:
            return backward_diff_2pt(signal);
        default:
            return backward_diff_3pt(signal);
    }
}

}  // namespace pidloop::numerics
