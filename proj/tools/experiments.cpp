#include "experiments.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>

#include "deco/bath.hpp"
#include "deco/csv.hpp"
#include "deco/cumulants.hpp"
#include "deco/dephasing.hpp"
#include "deco/dissipation.hpp"
#include "deco/noise.hpp"
#include "deco/time_grid.hpp"

namespace decotool {
namespace {

using deco::TimeGrid;
namespace bath = deco::bath;
namespace cumulants = deco::cumulants;
namespace dephasing = deco::dephasing;
namespace dissipation = deco::dissipation;
namespace noise = deco::noise;

void require_positive(const RunConfig& cfg, const std::string& key) {
    if (!(cfg.get_real(key) > 0.0))
        throw CliError("key '" + key + "': value must be positive");
}

TimeGrid grid_from(const RunConfig& cfg) {
    require_positive(cfg, "dt");
    const double dt = cfg.get_real("dt");
    const double t_final = cfg.get_real("t_final");
    if (!(t_final >= dt)) throw CliError("key 't_final': must be at least dt");
    return TimeGrid::from_duration(t_final, dt);
}

dephasing::TwoLevelInitialState initial_state(const RunConfig& cfg) {
    const std::complex<double> c0(cfg.get_real("init_c0_re"), cfg.get_real("init_c0_im"));
    const std::complex<double> c1(cfg.get_real("init_c1_re"), cfg.get_real("init_c1_im"));
    try {
        return dephasing::TwoLevelInitialState(c0, c1);
    } catch (const std::invalid_argument& err) {
        throw CliError(std::string("key 'init_c0_re': ") + err.what());
    }
}

double checked_beta(const RunConfig& cfg) {
    const double beta = cfg.get_real("beta");
    if (!(beta > 0.0)) throw CliError("key 'beta': value must be positive");
    return beta;
}

std::size_t checked_count(const RunConfig& cfg, const std::string& key) {
    const long long n = cfg.get_int(key);
    if (n < 1) throw CliError("key '" + key + "': value must be >= 1");
    return static_cast<std::size_t>(n);
}

int checked_threads(const RunConfig& cfg) {
    const long long threads = cfg.get_int("threads");
    if (threads < 1) throw CliError("key 'threads': value must be >= 1");
    return static_cast<int>(threads);
}

void print_kv(const char* key, double value) {
    std::printf("%s=%s\n", key, deco::csv::format_double(value).c_str());
}

// Exact second cumulant used by qdf-exact and dephasing-compare.
cumulants::SecondCumulant exact_cumulant(const RunConfig& cfg, const TimeGrid& grid) {
    const double beta = checked_beta(cfg);
    const bool high_t = cfg.get_bool("high_temperature");

    if (cfg.has("spectral_csv")) {
        if (cfg.has("lambda") || cfg.has("omega_c"))
            throw CliError("key 'spectral_csv': conflicts with lambda/omega_c");
        if (high_t)
            throw CliError("key 'high_temperature': not available for tabulated densities");
        auto sd = bath::SpectralDensity::tabulated_from_csv(cfg.get_text("spectral_csv"));
        return cumulants::quantum_second_cumulant_spin_boson(
            bath::BathParameters::thermal(std::move(sd), beta), grid);
    }

    if (!cfg.has("lambda")) throw CliError("missing required key 'lambda'");
    if (!cfg.has("omega_c")) throw CliError("missing required key 'omega_c'");
    require_positive(cfg, "lambda");
    require_positive(cfg, "omega_c");
    const double lambda = cfg.get_real("lambda");
    const double omega_c = cfg.get_real("omega_c");
    if (high_t)
        return cumulants::lorentz_drude_high_t_second_cumulant(lambda, 1.0 / beta, omega_c, grid);
    return cumulants::quantum_second_cumulant_spin_boson(
        bath::BathParameters::thermal(bath::SpectralDensity::lorentz_drude(lambda, omega_c), beta),
        grid);
}

void run_qdf_exact(const RunConfig& cfg, deco::csv::Writer& out) {
    const TimeGrid grid = grid_from(cfg);
    const auto kappa = exact_cumulant(cfg, grid);
    const auto phi = cumulants::decoherence_from_second_cumulant(kappa);

    const std::string_view columns[] = {"t", "kappa", "phi_re", "phi_im"};
    out.header(columns);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double row[] = {grid.time(i), kappa.values()[i].real(), phi.values()[i].real(),
                              phi.values()[i].imag()};
        out.row(row);
    }
}

void run_dephasing_compare(const RunConfig& cfg, deco::csv::Writer& out) {
    const TimeGrid grid = grid_from(cfg);
    require_positive(cfg, "lambda");
    require_positive(cfg, "omega_c");
    const double beta = checked_beta(cfg);
    const auto init = initial_state(cfg);

    const dephasing::EnsembleConfig ensemble{
        checked_count(cfg, "n_traj"),
        cfg.get_real("dt"),
        cfg.get_real("t_final"),
        cfg.get_seed("master_seed"),
        dephasing::matched_ou_noise(cfg.get_real("lambda"), 1.0 / beta, cfg.get_real("omega_c")),
        checked_threads(cfg)};
    const auto noise_trace = dephasing::run_dephasing_ensemble(init, ensemble);

    const auto kappa = exact_cumulant(cfg, grid);
    const auto exact = cumulants::decoherence_from_second_cumulant(kappa);

    const std::string_view columns[] = {"t",      "phi_noise_re", "phi_noise_im",
                                        "stderr", "phi_exact",    "purity"};
    out.header(columns);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double phi_exact = exact.values()[i].real();
        const double purity = dephasing::purity_from_loschmidt(init, exact.loschmidt(i));
        const double row[] = {grid.time(i),
                              noise_trace.values()[i].real(),
                              noise_trace.values()[i].imag(),
                              noise_trace.std_errors()[i],
                              phi_exact,
                              purity};
        out.row(row);
        max_dev = std::max(max_dev, std::abs(noise_trace.values()[i] - exact.values()[i]));
    }
    print_kv("max_abs_deviation", max_dev);
}

noise::NoiseProcessSpec noise_spec_from(const RunConfig& cfg) {
    const std::string kind = cfg.get_text("noise");
    if (kind == "ou") {
        if (!cfg.has("ou_variance")) throw CliError("missing required key 'ou_variance'");
        if (!cfg.has("ou_corr_time")) throw CliError("missing required key 'ou_corr_time'");
        return noise::NoiseProcessSpec::ou(cfg.get_real("ou_variance"),
                                           cfg.get_real("ou_corr_time"));
    }
    if (kind == "sum-exp") {
        if (!cfg.has("noise_weights")) throw CliError("missing required key 'noise_weights'");
        if (!cfg.has("noise_taus")) throw CliError("missing required key 'noise_taus'");
        const auto weights = cfg.get_real_list("noise_weights");
        const auto taus = cfg.get_real_list("noise_taus");
        if (weights.size() != taus.size())
            throw CliError("key 'noise_taus': needs as many entries as noise_weights");
        std::vector<noise::ExponentialTerm> terms;
        terms.reserve(weights.size());
        for (std::size_t i = 0; i < weights.size(); ++i)
            terms.push_back({weights[i], taus[i]});
        return noise::NoiseProcessSpec::sum_of_exponentials(std::move(terms));
    }
    if (kind == "complex-white") {
        if (!cfg.has("gamma")) throw CliError("missing required key 'gamma'");
        return noise::NoiseProcessSpec::complex_white(cfg.get_real("gamma"));
    }
    throw CliError("key 'noise': expected ou, sum-exp or complex-white, got '" + kind + "'");
}

void run_noise_validate(const RunConfig& cfg, deco::csv::Writer& out) {
    require_positive(cfg, "dt");
    const double dt = cfg.get_real("dt");
    const std::size_t n_samples = checked_count(cfg, "n_samples");
    const std::size_t max_lag = checked_count(cfg, "max_lag");
    if (max_lag >= n_samples) throw CliError("key 'max_lag': must be below n_samples");

    const auto spec = noise_spec_from(cfg);
    noise::NoiseStream stream(spec, cfg.get_seed("master_seed"),
                              cfg.get_seed("trajectory_index"), dt);

    bath::CorrelationFunction acf = [&] {
        if (spec.is_real()) {
            std::vector<double> samples(n_samples);
            for (auto& s : samples) s = stream.next_real();
            return noise::estimate_autocorrelation(std::span<const double>(samples), max_lag, dt);
        }
        std::vector<std::complex<double>> samples(n_samples);
        for (auto& s : samples) s = stream.next_complex();
        return noise::estimate_autocorrelation(std::span<const std::complex<double>>(samples),
                                               max_lag, dt);
    }();

    const std::string_view columns[] = {"lag", "empirical", "target", "stderr"};
    out.header(columns);
    for (std::size_t k = 0; k <= max_lag; ++k) {
        const double lag = static_cast<double>(k) * dt;
        const double row[] = {lag, acf.values()[k].real(), spec.target_autocorrelation(lag, dt),
                              acf.std_errors()[k]};
        out.row(row);
    }
}

void run_dissipation_compare(const RunConfig& cfg, deco::csv::Writer& out) {
    const TimeGrid grid = grid_from(cfg);
    const double gamma_a = cfg.get_real("gamma_a");
    const double gamma_0 = cfg.get_real("gamma_0");
    if (gamma_a < 0.0) throw CliError("key 'gamma_a': value must be >= 0");
    if (gamma_0 < 0.0) throw CliError("key 'gamma_0': value must be >= 0");
    const double omega_0 = cfg.get_real("omega_0");
    const double gamma = cfg.has("gamma") ? cfg.get_real("gamma") : gamma_a;
    if (gamma < 0.0) throw CliError("key 'gamma': value must be >= 0");

    const auto init = initial_state(cfg);
    const auto rho0 = dissipation::QubitDensityMatrix::from_amplitudes(init);
    const dissipation::DissipationRates rates(gamma_a, gamma_0, omega_0);

    const auto lindblad =
        dissipation::propagate_lindblad(rho0, rates, grid.dt(), grid.t_final());
    const auto master_eq = dissipation::propagate_noise_master_equation(
        rho0, gamma, omega_0, grid.dt(), grid.t_final());
    const dissipation::DissipativeEnsembleConfig ensemble_cfg{
        checked_count(cfg, "n_traj"), grid.dt(), grid.t_final(), cfg.get_seed("master_seed"),
        checked_threads(cfg)};
    const auto ensemble =
        dissipation::run_dissipative_noise_ensemble(init, gamma, omega_0, ensemble_cfg);

    // Fit both pictures before any output so failures leave no partial files.
    const auto fit_series = [&](const std::vector<dissipation::QubitDensityMatrix>& states) {
        std::vector<std::complex<double>> coherence(states.size());
        std::vector<double> excited(states.size());
        for (std::size_t i = 0; i < states.size(); ++i) {
            coherence[i] = states[i].coherence_eg();
            excited[i] = states[i].population_excited();
        }
        return dissipation::extract_rates(coherence, excited, grid);
    };
    const auto lindblad_fit = fit_series(lindblad.states);

    std::vector<std::complex<double>> ens_coherence(grid.size());
    std::vector<double> ens_excited(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ens_coherence[i] = ensemble.rho[i](1, 0);
        ens_excited[i] = ensemble.rho[i](1, 1).real();
    }
    const auto ensemble_fit = dissipation::extract_rates(ens_coherence, ens_excited, grid);

    const std::string_view columns[] = {
        "t",
        "lind_rho_gg", "lind_rho_ee", "lind_rho_eg_re", "lind_rho_eg_im", "lind_purity",
        "meq_rho_gg",  "meq_rho_ee",  "meq_rho_eg_re",  "meq_rho_eg_im",  "meq_purity",
        "ens_rho_gg",  "ens_rho_ee",  "ens_rho_eg_re",  "ens_rho_eg_im",  "ens_purity"};
    out.header(columns);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& lq = lindblad.states[i];
        const auto& mq = master_eq.states[i];
        const Eigen::Matrix2cd& er = ensemble.rho[i];
        const double ens_purity = (er * er).trace().real();
        const double row[] = {grid.time(i),
                              lq.population_ground(), lq.population_excited(),
                              lq.coherence_eg().real(), lq.coherence_eg().imag(), lq.purity(),
                              mq.population_ground(), mq.population_excited(),
                              mq.coherence_eg().real(), mq.coherence_eg().imag(), mq.purity(),
                              er(0, 0).real(), er(1, 1).real(),
                              er(1, 0).real(), er(1, 0).imag(), ens_purity};
        out.row(row);
    }

    print_kv("lindblad_gamma_d_fit", lindblad_fit.gamma_d);
    print_kv("lindblad_rho_ee_stationary", lindblad_fit.stationary_excited);
    print_kv("lindblad_gamma_d_expected", rates.gamma_decoherence());
    print_kv("ensemble_gamma_d_fit", ensemble_fit.gamma_d);
    print_kv("ensemble_rho_ee_stationary", ensemble_fit.stationary_excited);
    print_kv("rate_gap", lindblad_fit.gamma_d - ensemble_fit.gamma_d);
    print_kv("spontaneous_half_rate", 0.5 * gamma_0);
}

void run_oracle_check(const RunConfig& cfg, deco::csv::Writer& out) {
    const TimeGrid grid = grid_from(cfg);
    const auto omegas = cfg.get_real_list("mode_omegas");
    const auto couplings = cfg.get_real_list("mode_couplings");
    if (omegas.size() != couplings.size())
        throw CliError("key 'mode_couplings': needs as many entries as mode_omegas");
    const double beta = checked_beta(cfg);

    std::vector<bath::DiscreteMode> modes;
    modes.reserve(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i)
        modes.push_back({omegas[i], couplings[i]});

    const long long requested_cutoff = cfg.get_int("fock_cutoff");
    const auto fock = [&] {
        if (requested_cutoff == 0)
            return dephasing::FockBathSpec::with_auto_cutoff(modes, beta, grid);
        std::vector<dephasing::FockMode> fixed;
        fixed.reserve(modes.size());
        for (const auto& m : modes)
            fixed.push_back({m.omega, m.coupling, static_cast<int>(requested_cutoff)});
        return dephasing::FockBathSpec(std::move(fixed), beta);
    }();

    const auto oracle = dephasing::fock_oracle_qdf(fock, grid);
    const auto kappa = cumulants::quantum_second_cumulant_spin_boson(
        bath::BathParameters::thermal(bath::SpectralDensity::discrete(modes), beta), grid);
    const auto cumulant = cumulants::decoherence_from_second_cumulant(kappa);

    const std::string_view columns[] = {"t", "phi_fock_re", "phi_fock_im", "phi_cumulant_re",
                                        "phi_cumulant_im", "abs_diff"};
    out.header(columns);
    double max_diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double diff = std::abs(oracle.values()[i] - cumulant.values()[i]);
        max_diff = std::max(max_diff, diff);
        const double row[] = {grid.time(i),
                              oracle.values()[i].real(), oracle.values()[i].imag(),
                              cumulant.values()[i].real(), cumulant.values()[i].imag(), diff};
        out.row(row);
    }
    print_kv("max_abs_diff", max_diff);
}

} // namespace

void run_experiment(const RunConfig& cfg, std::vector<std::string>& created) {
    const auto start = std::chrono::steady_clock::now();

    const std::string output = cfg.output_path();
    deco::csv::Writer out(output);
    created.push_back(output);

    if (cfg.experiment() == "qdf-exact")
        run_qdf_exact(cfg, out);
    else if (cfg.experiment() == "dephasing-compare")
        run_dephasing_compare(cfg, out);
    else if (cfg.experiment() == "noise-validate")
        run_noise_validate(cfg, out);
    else if (cfg.experiment() == "dissipation-compare")
        run_dissipation_compare(cfg, out);
    else if (cfg.experiment() == "oracle-check")
        run_oracle_check(cfg, out);
    else
        throw CliError("unknown experiment '" + cfg.experiment() + "'");
    out.close();

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const std::string manifest_path = output + ".manifest";
    std::ofstream manifest(manifest_path, std::ios::trunc);
    if (!manifest) throw std::runtime_error("cannot write manifest " + manifest_path);
    created.push_back(manifest_path);
    manifest << cfg.manifest(wall);
}

} // namespace decotool
