#include "deco/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace deco::bath {
namespace {

void validate_lorentz_drude(const LorentzDrudeDensity& p) {
    if (!(p.lambda > 0.0) || !std::isfinite(p.lambda))
        throw std::invalid_argument("SpectralDensity: lambda must be positive");
    if (!(p.omega_c > 0.0) || !std::isfinite(p.omega_c))
        throw std::invalid_argument("SpectralDensity: omega_c must be positive");
}

void validate_discrete(const DiscreteDensity& p) {
    if (p.modes.empty())
        throw std::invalid_argument("SpectralDensity: discrete density needs at least one mode");
    for (const auto& m : p.modes) {
        if (!(m.omega > 0.0) || !std::isfinite(m.omega))
            throw std::invalid_argument("SpectralDensity: mode frequencies must be positive");
        if (!std::isfinite(m.coupling))
            throw std::invalid_argument("SpectralDensity: mode couplings must be finite");
    }
    for (std::size_t i = 0; i < p.modes.size(); ++i)
        for (std::size_t j = i + 1; j < p.modes.size(); ++j)
            if (p.modes[i].omega == p.modes[j].omega)
                throw std::invalid_argument("SpectralDensity: mode frequencies must be distinct");
}

void validate_tabulated(const TabulatedDensity& p) {
    if (p.omega.size() != p.value.size() || p.omega.size() < 2)
        throw std::invalid_argument("SpectralDensity: tabulated density needs >= 2 (omega, J) rows");
    double prev = 0.0;
    for (std::size_t i = 0; i < p.omega.size(); ++i) {
        if (!(p.omega[i] > prev))
            throw std::invalid_argument(
                "SpectralDensity: tabulated frequencies must be positive and strictly ascending");
        if (!(p.value[i] >= 0.0) || !std::isfinite(p.value[i]))
            throw std::invalid_argument("SpectralDensity: tabulated J values must be >= 0");
        prev = p.omega[i];
    }
}

double tabulated_positive(const TabulatedDensity& p, double omega) {
    // omega > 0 here. Linear interpolation with an implicit (0, 0) anchor.
    if (omega > p.omega.back())
        throw std::out_of_range("SpectralDensity: frequency beyond the tabulated grid");
    if (omega <= p.omega.front())
        return p.value.front() * omega / p.omega.front();
    const auto it = std::lower_bound(p.omega.begin(), p.omega.end(), omega);
    const std::size_t hi = static_cast<std::size_t>(it - p.omega.begin());
    const std::size_t lo = hi - 1;
    const double w = (omega - p.omega[lo]) / (p.omega[hi] - p.omega[lo]);
    return p.value[lo] + w * (p.value[hi] - p.value[lo]);
}

} // namespace

SpectralDensity SpectralDensity::lorentz_drude(double lambda, double omega_c) {
    LorentzDrudeDensity p{lambda, omega_c};
    validate_lorentz_drude(p);
    return SpectralDensity(p);
}

SpectralDensity SpectralDensity::discrete(std::vector<DiscreteMode> modes) {
    DiscreteDensity p{std::move(modes)};
    validate_discrete(p);
    return SpectralDensity(std::move(p));
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> omega, std::vector<double> value) {
    TabulatedDensity p{std::move(omega), std::move(value)};
    validate_tabulated(p);
    return SpectralDensity(std::move(p));
}

SpectralDensity SpectralDensity::tabulated_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("SpectralDensity: cannot open " + path);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("SpectralDensity: " + path + " is empty");
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    if (strip(line) != "omega,J")
        throw std::runtime_error("SpectralDensity: " + path + " must start with header `omega,J`");
    std::vector<double> omega, value;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string trimmed = strip(line);
        if (trimmed.empty()) continue;
        std::istringstream row(trimmed);
        double w = 0.0, j = 0.0;
        char comma = 0;
        if (!(row >> w >> comma >> j) || comma != ',')
            throw std::runtime_error("SpectralDensity: " + path + ": malformed row at line " +
                                     std::to_string(line_no));
        omega.push_back(w);
        value.push_back(j);
    }
    return tabulated(std::move(omega), std::move(value));
}

SpectralDensity::Kind SpectralDensity::kind() const noexcept {
    if (std::holds_alternative<LorentzDrudeDensity>(v_)) return Kind::lorentz_drude;
    if (std::holds_alternative<DiscreteDensity>(v_)) return Kind::discrete;
    return Kind::tabulated;
}

double SpectralDensity::evaluate(double omega) const {
    if (omega == 0.0) return 0.0;
    const double sign = omega > 0.0 ? 1.0 : -1.0;
    const double w = std::abs(omega);
    double j = 0.0;
    switch (kind()) {
        case Kind::lorentz_drude: {
            const auto& p = std::get<LorentzDrudeDensity>(v_);
            j = 2.0 * p.lambda * p.omega_c * w / (w * w + p.omega_c * p.omega_c);
            break;
        }
        case Kind::discrete:
            j = 0.0;
            break;
        case Kind::tabulated:
            j = tabulated_positive(std::get<TabulatedDensity>(v_), w);
            break;
    }
    return sign * j;
}

double SpectralDensity::evaluate_over_omega(double omega) const {
    const double w = std::abs(omega);
    switch (kind()) {
        case Kind::lorentz_drude: {
            const auto& p = std::get<LorentzDrudeDensity>(v_);
            return 2.0 * p.lambda * p.omega_c / (w * w + p.omega_c * p.omega_c);
        }
        case Kind::discrete:
            return 0.0;
        case Kind::tabulated: {
            const auto& p = std::get<TabulatedDensity>(v_);
            if (w <= p.omega.front()) return p.value.front() / p.omega.front();
            return tabulated_positive(p, w) / w;
        }
    }
    return 0.0;
}

const LorentzDrudeDensity& SpectralDensity::lorentz_drude_params() const {
    if (kind() != Kind::lorentz_drude)
        throw std::logic_error("SpectralDensity: not a Lorentz-Drude density");
    return std::get<LorentzDrudeDensity>(v_);
}

const DiscreteDensity& SpectralDensity::discrete_params() const {
    if (kind() != Kind::discrete)
        throw std::logic_error("SpectralDensity: not a discrete density");
    return std::get<DiscreteDensity>(v_);
}

const TabulatedDensity& SpectralDensity::tabulated_params() const {
    if (kind() != Kind::tabulated)
        throw std::logic_error("SpectralDensity: not a tabulated density");
    return std::get<TabulatedDensity>(v_);
}

double evaluate_spectral_density(const SpectralDensity& sd, double omega) {
    return sd.evaluate(omega);
}

} // namespace deco::bath
