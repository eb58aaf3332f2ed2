#include "deco/decoherence_trace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace deco {

DecoherenceTrace::DecoherenceTrace(TimeGrid grid, std::vector<std::complex<double>> values,
                                   Provenance provenance, std::vector<double> std_errors)
    : grid_(grid), values_(std::move(values)), provenance_(provenance),
      std_errors_(std::move(std_errors)) {
    if (values_.size() != grid_.size())
        throw std::invalid_argument("DecoherenceTrace: value count does not match grid");
    if (!std_errors_.empty() && std_errors_.size() != grid_.size())
        throw std::invalid_argument("DecoherenceTrace: std error count does not match grid");
    if (values_[0] != std::complex<double>(1.0, 0.0))
        throw std::invalid_argument("DecoherenceTrace: must start at exactly 1");
    const double slack = provenance_ == Provenance::fock_oracle ? 1e-10 : 1e-12;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (std::abs(values_[i]) > 1.0 + slack)
            throw std::invalid_argument("DecoherenceTrace: |Phi| exceeds 1 at index " +
                                        std::to_string(i));
    }
}

} // namespace deco
