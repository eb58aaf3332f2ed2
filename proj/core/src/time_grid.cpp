#include "deco/time_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace deco {

TimeGrid::TimeGrid(double dt, std::size_t size) : dt_(dt), size_(size) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("TimeGrid: dt must be positive and finite");
    if (size == 0)
        throw std::invalid_argument("TimeGrid: size must be at least 1");
}

TimeGrid TimeGrid::from_duration(double t_final, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("TimeGrid: dt must be positive and finite");
    if (!(t_final >= dt))
        throw std::invalid_argument("TimeGrid: t_final must be at least dt");
    const auto steps = static_cast<std::size_t>(std::llround(t_final / dt));
    return TimeGrid(dt, steps + 1);
}

TimeGrid TimeGrid::from_times(std::span<const double> times, double rel_tol) {
    if (times.size() < 2)
        throw std::invalid_argument("TimeGrid: need at least two samples");
    if (std::abs(times.front()) > 0.0)
        throw std::invalid_argument("TimeGrid: grid must start at t = 0");
    const double dt = times[1] - times[0];
    if (!(dt > 0.0))
        throw std::invalid_argument("TimeGrid: grid must be strictly increasing");
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double step = times[i] - times[i - 1];
        if (std::abs(step - dt) > rel_tol * dt)
            throw std::invalid_argument("TimeGrid: non-uniform grid rejected");
    }
    return TimeGrid(dt, times.size());
}

std::vector<double> TimeGrid::times() const {
    std::vector<double> t(size_);
    for (std::size_t i = 0; i < size_; ++i) t[i] = time(i);
    return t;
}

} // namespace deco
