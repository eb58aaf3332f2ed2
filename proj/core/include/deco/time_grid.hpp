// time_grid.hpp — Uniform simulation time grids
#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace deco {

// Uniform grid t_i = i*dt, i = 0 .. size-1. Uniformity is structural: grids
// built from raw sample vectors are validated on construction, so downstream
// cumulative-trapezoid accumulation never has to handle variable spacing.
class TimeGrid {
public:
    TimeGrid(double dt, std::size_t size);

    static TimeGrid from_duration(double t_final, double dt);
    // Validates that `times` starts at 0 and is uniformly spaced.
    static TimeGrid from_times(std::span<const double> times, double rel_tol = 1e-9);

    double dt() const noexcept { return dt_; }
    std::size_t size() const noexcept { return size_; }
    double time(std::size_t i) const noexcept { return dt_ * static_cast<double>(i); }
    double t_final() const noexcept { return time(size_ - 1); }
    std::vector<double> times() const;

    bool operator==(const TimeGrid&) const = default;

private:
    double dt_;
    std::size_t size_;
};

} // namespace deco
