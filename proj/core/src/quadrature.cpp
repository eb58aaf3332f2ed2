#include "deco/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace deco::quad {
namespace {

// 15-point Kronrod abscissae on [-1, 1] and weights, with the embedded
// 7-point Gauss weights on the odd-indexed nodes (QUADPACK dqk15 constants).
constexpr double kNodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kKronrodWeights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kGaussWeights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class T>
double norm_of(const T& v) {
    if constexpr (std::is_same_v<T, double>) {
        return std::abs(v);
    } else {
        return std::abs(v);
    }
}

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    std::size_t order; // insertion index, deterministic tie break
};

template <class T, class F>
Panel<T> evaluate_panel(const F& f, double a, double b, std::size_t order) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T kronrod{};
    T gauss{};
    for (int i = 0; i < 8; ++i) {
        const double dx = half * kNodes[i];
        T fsum = f(mid + dx);
        if (i < 7) fsum += f(mid - dx);
        kronrod += kKronrodWeights[i] * fsum;
        if (i % 2 == 1) gauss += kGaussWeights[i / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return Panel<T>{a, b, kronrod, norm_of<T>(kronrod - gauss), order};
}

template <class T, class F>
std::pair<T, double> integrate_impl(const F& f, double a, double b, const Options& opts,
                                    std::size_t& panels_used) {
    struct WorseError {
        bool operator()(const Panel<T>& lhs, const Panel<T>& rhs) const {
            if (lhs.error != rhs.error) return lhs.error < rhs.error;
            return lhs.order > rhs.order;
        }
    };
    std::priority_queue<Panel<T>, std::vector<Panel<T>>, WorseError> queue;

    const std::size_t n0 = std::max<std::size_t>(1, opts.initial_panels);
    std::size_t order = 0;
    T total{};
    double total_error = 0.0;
    for (std::size_t i = 0; i < n0; ++i) {
        const double pa = a + (b - a) * static_cast<double>(i) / static_cast<double>(n0);
        const double pb = a + (b - a) * static_cast<double>(i + 1) / static_cast<double>(n0);
        auto panel = evaluate_panel<T>(f, pa, pb, order++);
        total += panel.value;
        total_error += panel.error;
        queue.push(std::move(panel));
    }

    const auto tolerance = [&](double scale) {
        return std::max(opts.abs_tol, opts.rel_tol * scale);
    };

    while (total_error > tolerance(norm_of<T>(total)) && order < opts.max_panels) {
        Panel<T> worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = evaluate_panel<T>(f, worst.a, mid, order++);
        auto right = evaluate_panel<T>(f, mid, worst.b, order++);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(std::move(left));
        queue.push(std::move(right));
    }

    panels_used = order;
    if (total_error > tolerance(norm_of<T>(total))) {
        throw ConvergenceError("quadrature did not converge: error estimate " +
                               std::to_string(total_error) + " above tolerance after " +
                               std::to_string(order) + " panels");
    }
    return {total, total_error};
}

} // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& opts) {
    Result r;
    auto [value, err] = integrate_impl<double>(f, a, b, opts, r.panels);
    r.value = value;
    r.error_estimate = err;
    return r;
}

ComplexResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                double a, double b, const Options& opts) {
    ComplexResult r;
    auto [value, err] = integrate_impl<std::complex<double>>(f, a, b, opts, r.panels);
    r.value = value;
    r.error_estimate = err;
    return r;
}

} // namespace deco::quad
