// quadrature.hpp — Adaptive Gauss-Kronrod integration on finite intervals
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>

namespace deco::quad {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    // Hard budget on panel subdivisions; exceeding it with the error estimate
    // still above tolerance is reported as a failure, never returned silently.
    std::size_t max_panels = 20000;
    // Initial uniform subdivision of [a, b]. Oscillatory integrands should be
    // seeded with at least one panel per half period.
    std::size_t initial_panels = 1;
};

struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Result {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panels = 0;
};

struct ComplexResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    std::size_t panels = 0;
};

// 15-point Gauss-Kronrod panels with greedy bisection of the worst panel.
// Throws ConvergenceError if the panel budget is exhausted above tolerance.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts = {});

ComplexResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                double a, double b, const Options& opts = {});

} // namespace deco::quad
