#include "deco/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "deco/parallel.hpp"

namespace deco::dephasing {
namespace {

// Per-mode data for the factorized trace: Φ_k(t) = Σ_ab M_ab e^{i(ε^β_a - ε^α_b) t}
// with M_ab = [Vβᵀ Vα]_ab [Vαᵀ ρ Vβ]_ba and ε the eigenvalues of the two
// displaced-oscillator Hamiltonians. M is real for real symmetric modes.
struct ModeTrace {
    std::vector<double> frequency; // ε^β_a - ε^α_b, flattened
    std::vector<double> weight;

    std::complex<double> evaluate(double t) const {
        double sum_re = 0.0;
        double sum_im = 0.0;
        for (std::size_t i = 0; i < frequency.size(); ++i) {
            sum_re += weight[i] * std::cos(frequency[i] * t);
            sum_im += weight[i] * std::sin(frequency[i] * t);
        }
        return {sum_re, sum_im};
    }
};

Eigen::MatrixXd displaced_oscillator(double omega, double g, int cutoff) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) {
        h(n, n) = omega * n;
        if (n + 1 < cutoff) {
            const double ladder = g * std::sqrt(static_cast<double>(n + 1));
            h(n, n + 1) = ladder;
            h(n + 1, n) = ladder;
        }
    }
    return h;
}

std::vector<double> thermal_weights(double beta, double omega, int cutoff) {
    std::vector<double> p(cutoff, 0.0);
    if (std::isinf(beta)) {
        p[0] = 1.0;
        return p;
    }
    double z = 0.0;
    for (int n = 0; n < cutoff; ++n) {
        p[n] = std::exp(-beta * omega * n);
        z += p[n];
    }
    for (auto& w : p) w /= z;
    return p;
}

ModeTrace build_mode_trace(const FockMode& mode, double beta, int sign_alpha, int sign_beta) {
    const int c = mode.cutoff;
    const Eigen::MatrixXd h_alpha =
        displaced_oscillator(mode.omega, sign_alpha * mode.coupling, c);
    const Eigen::MatrixXd h_beta = displaced_oscillator(mode.omega, sign_beta * mode.coupling, c);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_alpha(h_alpha);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_beta(h_beta);
    const Eigen::MatrixXd& va = es_alpha.eigenvectors();
    const Eigen::MatrixXd& vb = es_beta.eigenvectors();

    const auto p = thermal_weights(beta, mode.omega, c);
    const Eigen::VectorXd pv = Eigen::Map<const Eigen::VectorXd>(p.data(), c);
    const Eigen::MatrixXd rho_cross = va.transpose() * pv.asDiagonal() * vb; // [Vαᵀ ρ Vβ]
    const Eigen::MatrixXd overlap = vb.transpose() * va;                     // [Vβᵀ Vα]

    ModeTrace trace;
    trace.frequency.reserve(static_cast<std::size_t>(c) * c);
    for (int a = 0; a < c; ++a)
        for (int b = 0; b < c; ++b) {
            const double w = overlap(a, b) * rho_cross(b, a);
            if (std::abs(w) < 1e-18) continue;
            trace.frequency.push_back(es_beta.eigenvalues()(a) - es_alpha.eigenvalues()(b));
            trace.weight.push_back(w);
        }
    return trace;
}

std::vector<std::complex<double>> fock_qdf_values(const FockBathSpec& bath, const TimeGrid& grid,
                                                  int alpha, int beta) {
    if ((alpha != 0 && alpha != 1) || (beta != 0 && beta != 1))
        throw std::invalid_argument("fock_qdf_element: level indices must be 0 or 1");

    std::vector<std::complex<double>> phi(grid.size(), {1.0, 0.0});
    if (alpha == beta) return phi; // <V†_α V_α> = 1, populations untouched

    const int sign_alpha = alpha == 0 ? 1 : -1;
    const int sign_beta = beta == 0 ? 1 : -1;
    std::vector<ModeTrace> traces;
    traces.reserve(bath.modes().size());
    for (const auto& mode : bath.modes())
        traces.push_back(build_mode_trace(mode, bath.beta(), sign_alpha, sign_beta));

    for (std::size_t i = 1; i < grid.size(); ++i) {
        std::complex<double> value{1.0, 0.0};
        for (const auto& trace : traces) value *= trace.evaluate(grid.time(i));
        phi[i] = value;
    }
    return phi;
}

int thermal_cutoff_floor(double beta, double omega) {
    if (std::isinf(beta)) return 2;
    // Geometric tail weight beyond level c is e^{-βωc}; require < 1e-8.
    return std::max(2, static_cast<int>(std::ceil(std::log(1e8) / (beta * omega))) + 1);
}

} // namespace

TwoLevelInitialState::TwoLevelInitialState(std::complex<double> c0_in, std::complex<double> c1_in)
    : c0(c0_in), c1(c1_in) {
    const double norm = std::norm(c0) + std::norm(c1);
    if (std::abs(norm - 1.0) > 1e-10)
        throw std::invalid_argument("TwoLevelInitialState: |c0|² + |c1|² must equal 1");
}

TwoLevelInitialState TwoLevelInitialState::equal_superposition() {
    const double amp = 1.0 / std::sqrt(2.0);
    return TwoLevelInitialState({amp, 0.0}, {amp, 0.0});
}

void EnsembleConfig::validate() const {
    if (n_traj < 1) throw std::invalid_argument("EnsembleConfig: n_traj must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("EnsembleConfig: dt must be positive");
    if (!(t_final >= dt)) throw std::invalid_argument("EnsembleConfig: t_final must be >= dt");
    if (threads < 1) throw std::invalid_argument("EnsembleConfig: threads must be >= 1");
}

std::vector<double> trajectory_phase(const EnsembleConfig& cfg, std::uint64_t trajectory_index) {
    cfg.validate();
    if (!cfg.noise.is_real())
        throw std::invalid_argument("trajectory_phase: dephasing noise must be real-valued");
    const TimeGrid grid = cfg.grid();
    noise::NoiseStream stream(cfg.noise, cfg.master_seed, trajectory_index, cfg.dt);

    std::vector<double> phase(grid.size());
    phase[0] = 0.0;
    double delta_prev = 2.0 * stream.next_real();
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double delta = 2.0 * stream.next_real();
        phase[i] = phase[i - 1] + 0.5 * cfg.dt * (delta_prev + delta);
        delta_prev = delta;
    }
    return phase;
}

DecoherenceTrace run_dephasing_ensemble(const TwoLevelInitialState& init,
                                        const EnsembleConfig& cfg) {
    (void)init; // the decoherence function is independent of the amplitudes
    cfg.validate();
    if (!cfg.noise.is_real())
        throw std::invalid_argument("run_dephasing_ensemble: dephasing noise must be real-valued");

    const TimeGrid grid = cfg.grid();
    const std::size_t nt = grid.size();
    const std::size_t blocks = util::block_count(cfg.n_traj, util::kTrajectoryBlock);

    struct BlockSums {
        std::vector<double> re, im, re2, im2;
    };
    std::vector<BlockSums> partial(blocks);

    util::for_each_block(cfg.n_traj, util::kTrajectoryBlock, cfg.threads,
                         [&](std::size_t b, std::size_t begin, std::size_t end) {
        BlockSums sums{std::vector<double>(nt, 0.0), std::vector<double>(nt, 0.0),
                       std::vector<double>(nt, 0.0), std::vector<double>(nt, 0.0)};
        for (std::size_t j = begin; j < end; ++j) {
            noise::NoiseStream stream(cfg.noise, cfg.master_seed, j, cfg.dt);
            double phase = 0.0;
            double delta_prev = 2.0 * stream.next_real();
            sums.re[0] += 1.0;
            for (std::size_t i = 1; i < nt; ++i) {
                const double delta = 2.0 * stream.next_real();
                phase += 0.5 * cfg.dt * (delta_prev + delta);
                delta_prev = delta;
                const double re = std::cos(phase);
                const double im = -std::sin(phase);
                sums.re[i] += re;
                sums.im[i] += im;
                sums.re2[i] += re * re;
                sums.im2[i] += im * im;
            }
        }
        partial[b] = std::move(sums);
    });

    const double n = static_cast<double>(cfg.n_traj);
    std::vector<std::complex<double>> phi(nt);
    std::vector<double> std_errors(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        double sum_re = 0.0, sum_im = 0.0, sum_re2 = 0.0, sum_im2 = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
            sum_re += partial[b].re[i];
            sum_im += partial[b].im[i];
            sum_re2 += partial[b].re2[i];
            sum_im2 += partial[b].im2[i];
        }
        phi[i] = {sum_re / n, sum_im / n};
        if (cfg.n_traj > 1) {
            const double var_re =
                std::max(0.0, (sum_re2 - sum_re * sum_re / n) / (n - 1.0));
            const double var_im =
                std::max(0.0, (sum_im2 - sum_im * sum_im / n) / (n - 1.0));
            std_errors[i] = std::sqrt((var_re + var_im) / n);
        } else {
            std_errors[i] = 0.0;
        }
    }
    return DecoherenceTrace(grid, std::move(phi), Provenance::ensemble, std::move(std_errors));
}

double purity_from_loschmidt(const TwoLevelInitialState& init, double loschmidt) {
    if (!(loschmidt >= 0.0 && loschmidt <= 1.0))
        throw std::out_of_range("purity_from_loschmidt: Loschmidt echo must lie in [0, 1]");
    const double weight = std::norm(init.c0) * std::norm(init.c1);
    return 1.0 + 2.0 * weight * (loschmidt - 1.0);
}

noise::NoiseProcessSpec matched_ou_noise(double lambda, double k_b_t, double omega_c) {
    return noise::NoiseProcessSpec::ou(2.0 * lambda * k_b_t, 1.0 / omega_c);
}

FockBathSpec::FockBathSpec(std::vector<FockMode> modes, double beta)
    : modes_(std::move(modes)), beta_(beta) {
    if (modes_.empty()) throw std::invalid_argument("FockBathSpec: need at least one mode");
    if (!(beta_ > 0.0))
        throw std::invalid_argument("FockBathSpec: beta must be positive (use +inf for T = 0)");
    for (const auto& m : modes_) {
        if (!(m.omega > 0.0))
            throw std::invalid_argument("FockBathSpec: mode frequencies must be positive");
        if (m.cutoff < 2) throw std::invalid_argument("FockBathSpec: cutoff must be >= 2");
        if (!std::isinf(beta_) && std::exp(-beta_ * m.omega * m.cutoff) >= 1e-8)
            throw std::invalid_argument(
                "FockBathSpec: thermal weight beyond the cutoff exceeds 1e-8; raise the cutoff");
    }
}

FockBathSpec FockBathSpec::with_auto_cutoff(const std::vector<bath::DiscreteMode>& modes,
                                            double beta, const TimeGrid& grid) {
    // Probe times for the stability check: a coarse sweep over the grid.
    std::vector<double> probe;
    const std::size_t stride = std::max<std::size_t>(1, grid.size() / 32);
    for (std::size_t i = 0; i < grid.size(); i += stride) probe.push_back(grid.time(i));
    probe.push_back(grid.t_final());

    std::vector<FockMode> chosen;
    chosen.reserve(modes.size());
    for (const auto& m : modes) {
        const double displacement = m.coupling / m.omega;
        int cutoff = std::max(thermal_cutoff_floor(beta, m.omega),
                              4 + static_cast<int>(std::ceil(8.0 * displacement * displacement)));
        for (;; cutoff += 4) {
            if (cutoff > 512)
                throw std::runtime_error("FockBathSpec: no stable cutoff below 512 levels");
            const FockMode trial{m.omega, m.coupling, cutoff};
            const FockMode wider{m.omega, m.coupling, cutoff + 4};
            const auto t1 = build_mode_trace(trial, beta, 1, -1);
            const auto t2 = build_mode_trace(wider, beta, 1, -1);
            double max_diff = 0.0;
            for (const double t : probe)
                max_diff = std::max(max_diff, std::abs(t1.evaluate(t) - t2.evaluate(t)));
            if (max_diff < 1e-8) break;
        }
        chosen.push_back(FockMode{m.omega, m.coupling, cutoff});
    }
    return FockBathSpec(std::move(chosen), beta);
}

DecoherenceTrace fock_oracle_qdf(const FockBathSpec& bath, const TimeGrid& grid) {
    auto values = fock_qdf_values(bath, grid, 0, 1);
    return DecoherenceTrace(grid, std::move(values), Provenance::fock_oracle);
}

std::vector<std::complex<double>> fock_qdf_element(const FockBathSpec& bath, const TimeGrid& grid,
                                                   int alpha, int beta) {
    return fock_qdf_values(bath, grid, alpha, beta);
}

noise::NoiseProcessSpec Fig2Preset::noise() const {
    return matched_ou_noise(lambda, 1.0 / beta, omega_c);
}

EnsembleConfig Fig2Preset::ensemble(int threads) const {
    return EnsembleConfig{n_traj, dt, t_final, master_seed, noise(), threads};
}

Fig2Preset fig2_preset() { return Fig2Preset{}; }

} // namespace deco::dephasing
