// decoherence_trace.hpp — Time series of a complex decoherence function
#pragma once

#include <complex>
#include <vector>

#include "deco/time_grid.hpp"

namespace deco {

enum class Provenance { exact_cumulant, ensemble, fock_oracle };

// Φ(t) on a uniform grid with its origin. Construction enforces Φ(0) = 1
// exactly and |Φ(t)| <= 1 up to floating-point slack; per-point standard
// errors accompany ensemble estimates.
class DecoherenceTrace {
public:
    DecoherenceTrace(TimeGrid grid, std::vector<std::complex<double>> values,
                     Provenance provenance, std::vector<double> std_errors = {});

    const TimeGrid& grid() const noexcept { return grid_; }
    const std::vector<std::complex<double>>& values() const noexcept { return values_; }
    Provenance provenance() const noexcept { return provenance_; }
    bool has_std_errors() const noexcept { return !std_errors_.empty(); }
    const std::vector<double>& std_errors() const noexcept { return std_errors_; }

    // Loschmidt echo L(t) = |Φ(t)|².
    double loschmidt(std::size_t i) const { return std::norm(values_[i]); }

private:
    TimeGrid grid_;
    std::vector<std::complex<double>> values_;
    Provenance provenance_;
    std::vector<double> std_errors_;
};

} // namespace deco
