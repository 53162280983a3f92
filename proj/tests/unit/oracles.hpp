#pragma once

// Test-only reference implementations, kept independent of the library code
// they check: a per-interval-pair quadrature for the parity rule, and exact
// polynomial calculus for the exactness suites.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

namespace oracles {

// Integral of uniform samples using the same parity rule as the library but
// accumulated interval-pair by interval-pair instead of by weight groups.
inline double parity_integral(const std::vector<double>& f, double h) {
    const std::size_t n = f.size();
    if (n <= 1) {
        return 0.0;
    }
    if (n == 2) {
        return 0.5 * h * (f[0] + f[1]);
    }
    const std::size_t simpson_points = (n % 2 == 1) ? n : n - 1;
    double total = 0.0;
    for (std::size_t k = 0; k + 2 < simpson_points + 1; k += 2) {
        total += h / 3.0 * (f[k] + 4.0 * f[k + 1] + f[k + 2]);
    }
    if (n % 2 == 0) {
        total += 0.5 * h * (f[n - 2] + f[n - 1]);
    }
    return total;
}

// Dense polynomial c0 + c1 t + c2 t^2 + ...
struct Poly {
    std::vector<double> coeffs;

    double eval(double t) const {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            acc = acc * t + coeffs[i];
        }
        return acc;
    }

    double derivative_at(double t) const {
        double acc = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 1;) {
            acc = acc * t + static_cast<double>(i) * coeffs[i];
        }
        return acc;
    }

    // Antiderivative evaluated by the power rule.
    double integral(double a, double b) const {
        double fa = 0.0;
        double fb = 0.0;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            const double c = coeffs[i] / static_cast<double>(i + 1);
            fa = fa * a + c;
            fb = fb * b + c;
        }
        return fb * b - fa * a;
    }
};

inline Poly random_poly(std::mt19937& rng, int degree) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Poly p;
    p.coeffs.resize(static_cast<std::size_t>(degree) + 1);
    for (auto& c : p.coeffs) {
        c = coef(rng);
    }
    return p;
}

inline std::vector<double> sample_poly(const Poly& p, double t0, double h, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = p.eval(t0 + static_cast<double>(k) * h);
    }
    return out;
}

// |actual - expected| <= tol * max(1, |expected|)
inline bool close_rel(double actual, double expected, double tol) {
    return std::abs(actual - expected) <= tol * std::max(1.0, std::abs(expected));
}

}  // namespace oracles
