#pragma once

#include "pidloop/sampled_signal.hpp"

namespace pidloop::numerics {

/// Composite Simpson 1/3 rule over the whole signal, weights 1,4,2,4,...,4,1.
/// Requires an odd point count n >= 3 (an even number of intervals).
/// Exact for polynomials up to degree 3; global truncation error O(h^4).
double simpson_composite(const SampledSignal& signal);

/// Trapezoid area of the last interval only: (f_{n-1} + f_{n-2}) * h / 2.
/// Requires n >= 2.
double trapezoid_last(const SampledSignal& signal);

/// Integral of the full history with the parity rule used by the controller:
///   n == 1        -> 0 (no accumulated area yet)
///   n == 2        -> trapezoid_last
///   n odd,  >= 3  -> simpson_composite
///   n even, >= 4  -> simpson_composite over the first n-1 points
///                    plus trapezoid_last for the final interval
double integrate_history(const SampledSignal& signal);

/// Two-point backward difference (f_{n-1} - f_{n-2}) / h at the newest
/// sample. Requires n >= 2. Truncation error O(h).
double backward_diff_2pt(const SampledSignal& signal);

/// Three-point backward difference (f_{n-3} - 4 f_{n-2} + 3 f_{n-1}) / (2h)
/// at the newest sample. Requires n >= 3. Exact for quadratics; O(h^2).
double backward_diff_3pt(const SampledSignal& signal);

/// Derivative at the newest sample with warm-up dispatch:
///   n == 1 -> 0, n == 2 -> backward_diff_2pt, n >= 3 -> backward_diff_3pt.
/// Never reads samples older than the last three.
double differentiate_latest(const SampledSignal& signal);

}  // namespace pidloop::numerics
