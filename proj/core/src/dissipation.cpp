#include "deco/dissipation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "deco/noise.hpp"
#include "deco/parallel.hpp"

namespace deco::dissipation {
namespace {

const Eigen::Matrix2cd kSigmaMinus = [] {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1.0; // |g><e|
    return m;
}();
const Eigen::Matrix2cd kSigmaPlus = kSigmaMinus.adjoint().eval();

Eigen::Matrix2cd system_hamiltonian(double omega_0) {
    Eigen::Matrix2cd h = Eigen::Matrix2cd::Zero();
    h(0, 0) = -0.5 * omega_0; // -ω_0 σ_z / 2 with σ_z = diag(+1, -1)
    h(1, 1) = 0.5 * omega_0;
    return h;
}

Eigen::Matrix2cd dissipator(const Eigen::Matrix2cd& jump, const Eigen::Matrix2cd& rho) {
    const Eigen::Matrix2cd jdagj = jump.adjoint() * jump;
    return jump * rho * jump.adjoint() - 0.5 * (jdagj * rho + rho * jdagj);
}

template <class Rhs>
DensityMatrixSeries propagate_rk4(const QubitDensityMatrix& rho0, double dt, double t_final,
                                  double max_rate, const Rhs& rhs) {
    if (!(dt > 0.0)) throw std::invalid_argument("propagate: dt must be positive");
    if (!(dt * max_rate < 0.1))
        throw std::invalid_argument("propagate: dt too large for the given rates "
                                    "(require dt * max rate < 0.1)");
    const TimeGrid grid = TimeGrid::from_duration(t_final, dt);

    DensityMatrixSeries series{grid, {}};
    series.states.reserve(grid.size());
    series.states.push_back(rho0);

    Eigen::Matrix2cd rho = rho0.matrix();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const Eigen::Matrix2cd k1 = rhs(rho);
        const Eigen::Matrix2cd k2 = rhs(rho + 0.5 * dt * k1);
        const Eigen::Matrix2cd k3 = rhs(rho + 0.5 * dt * k2);
        const Eigen::Matrix2cd k4 = rhs(rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double drift = std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
        if (drift > 1e-8)
            throw std::runtime_error("propagate: trace drift " + std::to_string(drift) +
                                     " at t = " + std::to_string(grid.time(i)));
        series.states.emplace_back(QubitDensityMatrix(rho));
    }
    return series;
}

// exp(-i H dt) |psi> for Hermitian H = a0 I + a·σ, in closed form.
void apply_unitary(const Eigen::Matrix2cd& h, double dt, Eigen::Vector2cd& psi) {
    const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const std::complex<double> b = h(0, 1); // a_x - i a_y
    const double r = std::sqrt(az * az + std::norm(b));
    const double c = std::cos(r * dt);
    const double s = r > 1e-300 ? std::sin(r * dt) / r : dt;
    const std::complex<double> phase = std::polar(1.0, -a0 * dt);
    const std::complex<double> i_s(0.0, s);

    const Eigen::Vector2cd old = psi;
    psi(0) = phase * ((c - i_s * az) * old(0) - i_s * b * old(1));
    psi(1) = phase * (-i_s * std::conj(b) * old(0) + (c + i_s * az) * old(1));
}

} // namespace

QubitDensityMatrix::QubitDensityMatrix(const Eigen::Matrix2cd& rho) : rho_(rho) {
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("QubitDensityMatrix: matrix must be Hermitian");
    if (std::abs(rho_.trace().real() - 1.0) > 1e-12 || std::abs(rho_.trace().imag()) > 1e-12)
        throw std::invalid_argument("QubitDensityMatrix: trace must equal 1");
    if (min_eigenvalue() < -1e-10)
        throw std::invalid_argument("QubitDensityMatrix: negative eigenvalue");
}

QubitDensityMatrix QubitDensityMatrix::from_amplitudes(const dephasing::TwoLevelInitialState& psi) {
    Eigen::Vector2cd v;
    v << psi.c0, psi.c1;
    return QubitDensityMatrix((v * v.adjoint()).eval());
}

QubitDensityMatrix QubitDensityMatrix::maximally_mixed() {
    return QubitDensityMatrix(0.5 * Eigen::Matrix2cd::Identity());
}

double QubitDensityMatrix::min_eigenvalue() const noexcept {
    // Closed form for a 2x2 Hermitian matrix.
    const double half_trace = 0.5 * rho_.trace().real();
    const double det = (rho_(0, 0) * rho_(1, 1) - rho_(0, 1) * rho_(1, 0)).real();
    const double gap = std::sqrt(std::max(0.0, half_trace * half_trace - det));
    return half_trace - gap;
}

DissipationRates::DissipationRates(double gamma_a, double gamma_0, double omega_0_in)
    : gamma_absorption(gamma_a), gamma_spontaneous(gamma_0), omega_0(omega_0_in) {
    if (gamma_absorption < 0.0 || gamma_spontaneous < 0.0)
        throw std::invalid_argument("DissipationRates: rates must be non-negative");
}

DensityMatrixSeries propagate_lindblad(const QubitDensityMatrix& rho0,
                                       const DissipationRates& rates, double dt, double t_final) {
    const Eigen::Matrix2cd h = system_hamiltonian(rates.omega_0);
    const double gamma_e = rates.gamma_emission();
    const double gamma_a = rates.gamma_absorption;
    const double max_rate =
        std::max({gamma_e, gamma_a, std::abs(rates.omega_0)});
    const std::complex<double> img(0.0, 1.0);
    return propagate_rk4(rho0, dt, t_final, max_rate, [&](const Eigen::Matrix2cd& rho) {
        Eigen::Matrix2cd d = -img * (h * rho - rho * h);
        d += gamma_e * dissipator(kSigmaMinus, rho);
        d += gamma_a * dissipator(kSigmaPlus, rho);
        return d;
    });
}

DensityMatrixSeries propagate_noise_master_equation(const QubitDensityMatrix& rho0, double gamma,
                                                    double omega_0, double dt, double t_final) {
    if (gamma < 0.0)
        throw std::invalid_argument("propagate_noise_master_equation: gamma must be >= 0");
    const Eigen::Matrix2cd h = system_hamiltonian(omega_0);
    const double max_rate = std::max(gamma, std::abs(omega_0));
    const std::complex<double> img(0.0, 1.0);
    return propagate_rk4(rho0, dt, t_final, max_rate, [&](const Eigen::Matrix2cd& rho) {
        Eigen::Matrix2cd d = -img * (h * rho - rho * h);
        d += gamma * dissipator(kSigmaMinus, rho);
        d += gamma * dissipator(kSigmaPlus, rho);
        return d;
    });
}

DissipativeEnsembleSeries run_dissipative_noise_ensemble(
    const dephasing::TwoLevelInitialState& psi0, double gamma, double omega_0,
    const DissipativeEnsembleConfig& cfg) {
    if (cfg.n_traj < 1) throw std::invalid_argument("ensemble: n_traj must be >= 1");
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("ensemble: dt must be positive");
    if (!(cfg.t_final >= cfg.dt)) throw std::invalid_argument("ensemble: t_final must be >= dt");
    if (cfg.threads < 1) throw std::invalid_argument("ensemble: threads must be >= 1");

    const TimeGrid grid = TimeGrid::from_duration(cfg.t_final, cfg.dt);
    const std::size_t nt = grid.size();
    const auto white = noise::NoiseProcessSpec::complex_white(gamma);
    const Eigen::Matrix2cd h_s = system_hamiltonian(omega_0);
    const std::size_t blocks = util::block_count(cfg.n_traj, util::kTrajectoryBlock);

    struct BlockSums {
        std::vector<double> gg, ee, eg_re, eg_im, gg2, eg_re2, eg_im2;
    };
    std::vector<BlockSums> partial(blocks);

    util::for_each_block(cfg.n_traj, util::kTrajectoryBlock, cfg.threads,
                         [&](std::size_t b, std::size_t begin, std::size_t end) {
        BlockSums sums;
        for (auto* v : {&sums.gg, &sums.ee, &sums.eg_re, &sums.eg_im, &sums.gg2, &sums.eg_re2,
                        &sums.eg_im2})
            v->assign(nt, 0.0);
        for (std::size_t j = begin; j < end; ++j) {
            noise::NoiseStream stream(white, cfg.master_seed, j, cfg.dt);
            Eigen::Vector2cd psi;
            psi << psi0.c0, psi0.c1;
            for (std::size_t i = 0; i < nt; ++i) {
                if (i > 0) {
                    const std::complex<double> eta = stream.next_complex();
                    Eigen::Matrix2cd h = h_s;
                    h(0, 1) += eta; // η σ_- + η* σ_+
                    h(1, 0) += std::conj(eta);
                    apply_unitary(h, cfg.dt, psi);
                }
                const double gg = std::norm(psi(0));
                const double ee = std::norm(psi(1));
                const std::complex<double> eg = psi(1) * std::conj(psi(0));
                sums.gg[i] += gg;
                sums.ee[i] += ee;
                sums.eg_re[i] += eg.real();
                sums.eg_im[i] += eg.imag();
                sums.gg2[i] += gg * gg;
                sums.eg_re2[i] += eg.real() * eg.real();
                sums.eg_im2[i] += eg.imag() * eg.imag();
            }
        }
        partial[b] = std::move(sums);
    });

    const double n = static_cast<double>(cfg.n_traj);
    DissipativeEnsembleSeries series{grid,
                                     std::vector<Eigen::Matrix2cd>(nt),
                                     std::vector<double>(nt, 0.0),
                                     std::vector<double>(nt, 0.0),
                                     std::vector<double>(nt, 0.0)};
    for (std::size_t i = 0; i < nt; ++i) {
        double gg = 0.0, ee = 0.0, eg_re = 0.0, eg_im = 0.0, gg2 = 0.0, eg_re2 = 0.0,
               eg_im2 = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            gg += partial[b].gg[i];
            ee += partial[b].ee[i];
            eg_re += partial[b].eg_re[i];
            eg_im += partial[b].eg_im[i];
            gg2 += partial[b].gg2[i];
            eg_re2 += partial[b].eg_re2[i];
            eg_im2 += partial[b].eg_im2[i];
        }
        Eigen::Matrix2cd rho;
        const std::complex<double> eg(eg_re / n, eg_im / n);
        rho(0, 0) = gg / n;
        rho(1, 1) = ee / n;
        rho(1, 0) = eg;
        rho(0, 1) = std::conj(eg);
        series.rho[i] = rho;
        if (cfg.n_traj > 1) {
            const auto stderr_of = [&](double sum, double sum2) {
                const double var = std::max(0.0, (sum2 - sum * sum / n) / (n - 1.0));
                return std::sqrt(var / n);
            };
            series.stderr_population[i] = stderr_of(gg, gg2);
            series.stderr_coherence_re[i] = stderr_of(eg_re, eg_re2);
            series.stderr_coherence_im[i] = stderr_of(eg_im, eg_im2);
        }
    }
    return series;
}

RateFit extract_rates(std::span<const std::complex<double>> coherence,
                      std::span<const double> excited_population, const TimeGrid& grid) {
    if (coherence.size() != grid.size() || excited_population.size() != grid.size())
        throw std::invalid_argument("extract_rates: series length does not match grid");
    const double initial = std::abs(coherence[0]);
    if (!(initial > 0.0))
        throw std::invalid_argument("extract_rates: initial coherence must be non-zero");

    const double floor = initial * std::exp(-2.0);
    std::size_t window_end = 0;
    for (std::size_t i = 0; i < coherence.size(); ++i) {
        window_end = i;
        if (std::abs(coherence[i]) <= floor) break;
    }
    if (std::abs(coherence[window_end]) > floor)
        throw std::runtime_error("extract_rates: coherence never decays by a factor e^2; "
                                 "extend t_final");

    // Least squares on ln|ρ_eg| over [0, window_end].
    const std::size_t m = window_end + 1;
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double t = grid.time(i);
        const double y = std::log(std::abs(coherence[i]));
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double denom = static_cast<double>(m) * stt - st * st;
    const double slope = (static_cast<double>(m) * sty - st * sy) / denom;
    const double intercept = (sy - slope * st) / static_cast<double>(m);

    double residual2 = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = std::log(std::abs(coherence[i])) - (intercept + slope * grid.time(i));
        residual2 += r * r;
    }
    const double residual_rms = std::sqrt(residual2 / static_cast<double>(m));
    if (residual_rms > 0.3)
        throw std::runtime_error("extract_rates: poor exponential fit (RMS residual " +
                                 std::to_string(residual_rms) + "); input may not be decaying");

    const std::size_t tail_begin = grid.size() - std::max<std::size_t>(1, grid.size() / 5);
    double tail = 0.0;
    for (std::size_t i = tail_begin; i < grid.size(); ++i) tail += excited_population[i];
    tail /= static_cast<double>(grid.size() - tail_begin);

    return RateFit{-slope, tail, residual_rms};
}

} // namespace deco::dissipation
