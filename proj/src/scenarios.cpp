#include "iontrap/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>

#include "iontrap/apparatus.hpp"
#include "iontrap/chain.hpp"
#include "iontrap/constants.hpp"
#include "iontrap/cooling.hpp"
#include "iontrap/csv.hpp"
#include "iontrap/dynamics.hpp"
#include "iontrap/fock.hpp"
#include "iontrap/liouville.hpp"
#include "iontrap/motion.hpp"

namespace iontrap::cli {

namespace {

namespace fs = std::filesystem;
using core::constants::pi;
using core::constants::two_pi;

struct ScenarioContext {
    const Config& cfg;
    std::string out_dir;
    std::uint64_t seed;
    std::vector<std::string>* csv_paths;
    std::vector<std::string>* warnings;

    std::string emit(const CsvWriter& csv, const std::string& filename) const {
        const std::string path = (fs::path(out_dir) / filename).string();
        csv.write(path);
        csv_paths->push_back(path);
        return path;
    }
    void warn(const std::string& msg) const { warnings->push_back(msg); }
};

using ScenarioFn = std::function<void(const ScenarioContext&)>;

struct ScenarioEntry {
    std::string description;
    std::set<std::string> keys;
    ScenarioFn fn;
};

// ---------------------------------------------------------------------------
// shared parameter helpers

core::SpeciesConstants species() { return core::calcium_40(); }

double qubit_eta(const ScenarioContext& c, double mode_freq_hz) {
    const double lambda = c.cfg.get_double("laser.wavelength_nm", 729.0) * 1e-9;
    const double angle = c.cfg.get_double("laser.projection_angle_rad", 0.0);
    return core::lamb_dicke_parameter(species(), lambda, angle, mode_freq_hz);
}

// bare Rabi frequency that realizes the configured blue-sideband pi time
double omega0_from_pi_time(const ScenarioContext& c, double eta) {
    const double t_pi = c.cfg.get_double("pulse.pi_time_us", 20.0) * 1e-6;
    if (t_pi <= 0) throw DomainError("pulse.pi_time_us must be positive");
    // Omega_blue(0) = omega0 e^(-eta^2/2) eta
    return pi / (t_pi * std::exp(-eta * eta / 2.0) * eta);
}

liouville::EitBeams eit_beams_from_config(const ScenarioContext& c, double default_stark_hz,
                                          double default_probe_frac) {
    liouville::EitBeams b;
    b.delta_sigma = two_pi * c.cfg.get_double("eit.delta_sigma_hz", 60e6);
    const double omega_sigma_hz = c.cfg.get_double("eit.omega_sigma_hz", 0.0);
    const double stark_hz = c.cfg.get_double("eit.stark_shift_hz", default_stark_hz);
    if (omega_sigma_hz > 0.0)
        b.omega_sigma = two_pi * omega_sigma_hz;
    else
        b.omega_sigma = liouville::omega_sigma_for_stark_shift(b.delta_sigma, two_pi * stark_hz);
    b.omega_pi = b.omega_sigma * c.cfg.get_double("eit.probe_frac", default_probe_frac);
    b.b_field = c.cfg.get_double("eit.b_field_gauss", 4.0) * 1e-4;
    b.ss_dephasing = two_pi * c.cfg.get_double("eit.ss_dephasing_hz", 0.0);
    return b;
}

bool eit_use_zeeman(const ScenarioContext& c, const std::string& default_manifold) {
    const std::string m = c.cfg.get_string("eit.manifold", default_manifold);
    if (m == "zeeman4") return true;
    if (m == "lambda3") return false;
    throw ConfigError("config: eit.manifold must be 'zeeman4' or 'lambda3', got '" + m + "'");
}

// ---------------------------------------------------------------------------
// scenarios

void run_chain_geometry(const ScenarioContext& c) {
    const int n_ions = c.cfg.get_int("chain.n_ions", 4);
    const double nu = c.cfg.get_double("trap.axial_freq_hz", 700e3);
    const double d_min = c.cfg.get_double("chain.d_min_um", 5.0) * 1e-6;
    const auto sp = species();

    const auto geometry = chain::make_chain(sp, n_ions, nu);
    CsvWriter positions({"ion_index", "u_dimensionless", "position_m"});
    for (int i = 0; i < n_ions; ++i)
        positions.add_row({static_cast<long long>(i),
                           geometry.dimensionless_positions[static_cast<std::size_t>(i)],
                           geometry.positions[static_cast<std::size_t>(i)]});
    c.emit(positions, "chain_positions.csv");

    const auto modes = chain::axial_modes(geometry);
    std::vector<std::string> header = {"mode_index", "frequency_hz"};
    for (int i = 0; i < n_ions; ++i)
        header.push_back("eigvec_ion_" + std::to_string(i));
    CsvWriter mode_csv(header);
    for (int m = 0; m < n_ions; ++m) {
        std::vector<CsvWriter::Cell> row{static_cast<long long>(m), modes.frequencies[static_cast<std::size_t>(m)]};
        for (int i = 0; i < n_ions; ++i)
            row.emplace_back(modes.eigenvectors[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)]);
        mode_csv.add_row(std::move(row));
    }
    c.emit(mode_csv, "chain_modes.csv");

    CsvWriter summary({"n_ions", "axial_freq_hz", "length_scale_m", "min_spacing_m",
                       "d_min_m", "max_com_frequency_hz"});
    summary.add_row({static_cast<long long>(n_ions), nu, geometry.length_scale,
                     n_ions >= 2 ? chain::min_spacing(n_ions, nu, sp) : 0.0, d_min,
                     n_ions >= 2 ? chain::max_com_frequency(n_ions, d_min, sp) : 0.0});
    c.emit(summary, "chain_summary.csv");
}

void run_sideband_scan(const ScenarioContext& c) {
    const double nu = c.cfg.get_double("mode.freq_hz", 4.51e6);
    const double eta = qubit_eta(c, nu);
    const double omega0 = omega0_from_pi_time(c, eta);
    const auto grid = c.cfg.get_grid("scan.detuning_hz", parse_range("-30e3:30e3:121", "scan.detuning_hz"));
    const double nbar_doppler = c.cfg.get_double("scan.doppler_nbar", 2.0);
    const double cooled_p0 = c.cfg.get_double("scan.cooled_p0", 0.999);
    if (cooled_p0 <= 0.0 || cooled_p0 > 1.0)
        throw DomainError("scan.cooled_p0 must lie in (0,1]");
    const double nbar_cooled = 1.0 / cooled_p0 - 1.0;

    dynamics::Pulse red{dynamics::Sideband::red, 1, omega0, 0.0, 0.0, 0};
    dynamics::Pulse blue{dynamics::Sideband::blue, 1, omega0, 0.0, 0.0, 0};
    red.duration = blue.duration = pi / (omega0 * std::exp(-eta * eta / 2.0) * eta);

    const struct {
        const char* file;
        double nbar;
    } regimes[] = {{"sideband_scan_doppler.csv", nbar_doppler},
                   {"sideband_scan_cooled.csv", nbar_cooled}};
    for (const auto& regime : regimes) {
        const auto dist = core::thermal_distribution(regime.nbar);
        CsvWriter csv({"detuning_hz", "p_excite_red", "p_excite_blue"});
        for (double det_hz : grid) {
            const double det = two_pi * det_hz;
            csv.add_row({det_hz, dynamics::detuned_excitation(dist, red, eta, det),
                         dynamics::detuned_excitation(dist, blue, eta, det)});
        }
        c.emit(csv, regime.file);
    }
}

void run_rabi_flops(const ScenarioContext& c) {
    const double nu = c.cfg.get_double("mode.freq_hz", 4.51e6);
    const double eta = qubit_eta(c, nu);
    const double omega0 = omega0_from_pi_time(c, eta);
    const double t_end = c.cfg.get_double("flops.t_end_s", 1.4e-3);
    const int n_points = c.cfg.get_int("flops.n_points", 701);
    if (n_points < 2) throw DomainError("flops.n_points must be >= 2");
    const double thermal_nbar = c.cfg.get_double("flops.thermal_nbar", 2.0);
    dynamics::DecoherenceModel dec;
    dec.tau_c = c.cfg.get_double("decoherence.tau_c_s", 1.44e-3);

    std::vector<double> t_grid;
    t_grid.reserve(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i)
        t_grid.push_back(t_end * static_cast<double>(i) / (n_points - 1));

    dynamics::Pulse blue{dynamics::Sideband::blue, 1, omega0, t_end, 0.0, 0};
    const struct {
        const char* file;
        core::FockDistribution dist;
    } series[] = {{"rabi_flops_n0.csv", core::fock_state(0, 60)},
                  {"rabi_flops_n1.csv", core::fock_state(1, 60)},
                  {"rabi_flops_thermal.csv", core::thermal_distribution(thermal_nbar)}};
    for (const auto& s : series) {
        CsvWriter csv({"time_s", "p_excited"});
        for (const auto& [t, p] : dynamics::simulate_flops(s.dist, blue, eta, dec, t_grid))
            csv.add_row({t, p});
        c.emit(csv, s.file);
    }
}

void run_cooling_sim(const ScenarioContext& c) {
    const double nu_hz = c.cfg.get_double("mode.freq_hz", 4.51e6);
    cooling::SidebandCoolingParams p;
    p.eta = c.cfg.get_double("cooling.eta", 0.046);
    p.omega = two_pi * c.cfg.get_double("cooling.omega_hz", 123e3);
    p.gamma_eff = two_pi * c.cfg.get_double("cooling.gamma_eff_hz", 50e3);
    p.nu = two_pi * nu_hz;
    p.detuning = two_pi * c.cfg.get_double("cooling.detuning_hz", -nu_hz);
    p.alpha = c.cfg.get_double("cooling.alpha", 0.4);
    const double nbar0 = c.cfg.get_double("cooling.initial_nbar", 2.0);
    const double heating = c.cfg.get_double("heating.rate_phonons_per_s", 1.0 / 0.19);
    const double t_end = c.cfg.get_double("cooling.t_end_s", 6e-3);
    const int n_samples = c.cfg.get_int("cooling.n_samples", 241);

    const auto initial = core::thermal_distribution(nbar0);
    const auto traj = cooling::sideband_cooling_simulate(p, initial, heating, t_end, n_samples);
    if (!traj.has_steady_state)
        c.warn("cooling: A- <= A+ + heating rate, no steady state (heating regime)");

    CsvWriter csv({"time_s", "nbar", "p0"});
    for (std::size_t i = 0; i < traj.times.size(); ++i)
        csv.add_row({traj.times[i], traj.nbar[i], traj.p0[i]});
    c.emit(csv, "cooling_trajectory.csv");

    CsvWriter summary({"a_minus_per_s", "a_plus_per_s", "heating_rate_per_s",
                       "nbar_ss_analytic", "nbar_final", "p0_final", "doppler_limit_nbar"});
    summary.add_row({traj.a_minus, traj.a_plus, heating, traj.nbar_ss, traj.nbar.back(),
                     traj.p0.back(), cooling::doppler_limit(species().gamma_p, p.nu)});
    c.emit(summary, "cooling_summary.csv");
}

void run_eit_spectrum(const ScenarioContext& c) {
    const auto beams = eit_beams_from_config(c, 3.34e6, 0.01);
    const bool zeeman = eit_use_zeeman(c, "lambda3");
    const auto grid_hz = c.cfg.get_grid("eit.two_photon_detuning_hz",
                                        parse_range("-6.68e6:6.68e6:1337", "eit.two_photon_detuning_hz"));

    std::vector<double> delta_pi_grid;
    delta_pi_grid.reserve(grid_hz.size());
    for (double x : grid_hz)
        delta_pi_grid.push_back(beams.delta_sigma + two_pi * x);

    const auto spectrum = liouville::probe_spectrum(beams, species(), delta_pi_grid, zeeman);
    if (!spectrum.perturbative)
        c.warn("eit: probe too strong for perturbative interpretation (omega_pi > omega_sigma/10)");

    CsvWriter csv({"two_photon_detuning_hz", "probe_detuning_hz", "scattering_rate_per_s"});
    double peak_rate = 0.0, peak_detuning = 0.0, null_rate = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid_hz.size(); ++i) {
        const double rate = spectrum.points[i].scattering_rate;
        csv.add_row({grid_hz[i], spectrum.points[i].probe_detuning / two_pi, rate});
        if (rate > peak_rate) {
            peak_rate = rate;
            peak_detuning = grid_hz[i];
        }
        null_rate = std::min(null_rate, rate);
    }
    c.emit(csv, "eit_spectrum.csv");

    CsvWriter summary({"delta_sigma_hz", "omega_sigma_hz", "omega_pi_hz", "stark_shift_hz",
                       "peak_detuning_hz", "peak_rate_per_s", "min_rate_per_s", "null_to_peak"});
    summary.add_row({beams.delta_sigma / two_pi, beams.omega_sigma / two_pi,
                     beams.omega_pi / two_pi,
                     liouville::ac_stark_shift(beams.delta_sigma, beams.omega_sigma) / two_pi,
                     peak_detuning, peak_rate, null_rate, null_rate / peak_rate});
    c.emit(summary, "eit_spectrum_summary.csv");
}

void run_eit_cooling(const ScenarioContext& c) {
    const auto beams = eit_beams_from_config(c, 2.5e6, 0.30);
    const bool zeeman = eit_use_zeeman(c, "zeeman4");
    const auto mode_freqs = c.cfg.get_list("eit.mode_freqs_hz", {1.61e6, 3.34e6});
    const double lambda = c.cfg.get_double("eit.wavelength_nm", 397.0) * 1e-9;
    const double angle = c.cfg.get_double("laser.projection_angle_rad", 0.0);
    const auto sp = species();

    bool warned = false;
    CsvWriter modes({"mode_freq_hz", "eta", "nbar_ss", "doppler_limit_nbar",
                     "s_plus_per_s", "s_minus_per_s", "cooling_rate_scale_per_s"});
    for (double nu_hz : mode_freqs) {
        const double eta = core::lamb_dicke_parameter(sp, lambda, angle, nu_hz);
        const auto r = cooling::eit_cooling_steady_state(beams, sp, nu_hz, eta, zeeman);
        if (!r.cooling)
            c.warn("eit: heating regime at mode " + std::to_string(nu_hz) + " Hz");
        if (!r.perturbative && !warned) {
            c.warn("eit: probe too strong for perturbative interpretation (omega_pi > omega_sigma/10)");
            warned = true;
        }
        modes.add_row({nu_hz, eta, r.nbar_ss,
                       cooling::doppler_limit(sp.gamma_p, two_pi * nu_hz), r.s_plus,
                       r.s_minus, r.rate_scale});
    }
    c.emit(modes, "eit_cooling_modes.csv");

    // light-shift sweep at a reference mode: optimal cooling sits at delta = nu
    const double scan_nu_hz = c.cfg.get_double("eit.scan_mode_freq_hz", 3.34e6);
    const double scan_frac = c.cfg.get_double("eit.scan_probe_frac", 0.01);
    const auto stark_grid = c.cfg.get_grid("eit.stark_scan_hz",
                                           parse_range("2.0e6:5.0e6:61", "eit.stark_scan_hz"));
    const double scan_eta = core::lamb_dicke_parameter(sp, lambda, angle, scan_nu_hz);
    CsvWriter scan({"stark_shift_hz", "omega_sigma_hz", "nbar_ss"});
    for (double stark_hz : stark_grid) {
        liouville::EitBeams b = beams;
        b.omega_sigma = liouville::omega_sigma_for_stark_shift(b.delta_sigma, two_pi * stark_hz);
        b.omega_pi = b.omega_sigma * scan_frac;
        const auto r = cooling::eit_cooling_steady_state(b, sp, scan_nu_hz, scan_eta, zeeman);
        scan.add_row({stark_hz, b.omega_sigma / two_pi, r.nbar_ss});
    }
    c.emit(scan, "eit_cooling_stark_scan.csv");
}

void run_detection_histogram(const ScenarioContext& c) {
    apparatus::DetectionConfig cfg;
    cfg.collection_fraction = c.cfg.get_double("detection.collection_fraction", 1e-2);
    cfg.quantum_efficiency = c.cfg.get_double("detection.quantum_efficiency", 0.10);
    cfg.scattering_rate_bright = c.cfg.get_double("detection.scattering_rate_bright_per_s", 3e7);
    cfg.background_rate = c.cfg.get_double("detection.background_rate_per_s", 1000.0);
    cfg.window = c.cfg.get_double("detection.window_s", 2e-3);
    cfg.d_lifetime = c.cfg.get_double("detection.d_lifetime_s", 1.0);
    cfg.validate();
    const int threshold_cfg = c.cfg.get_int("detection.threshold_counts", 0);
    const auto shots = static_cast<std::uint64_t>(
        c.cfg.get_int("detection.mc_shots_per_state", 500000));

    const int t_opt = apparatus::optimal_threshold(cfg);
    const int t_used = threshold_cfg > 0 ? threshold_cfg : t_opt;

    const auto mc = apparatus::detection_monte_carlo(cfg, shots, c.seed);

    const int k_max = static_cast<int>(
        std::max(mc.bright_hist.size(), mc.dark_hist.size())) - 1;
    CsvWriter hist({"counts", "pmf_bright_exact", "pmf_dark_exact", "freq_bright_mc",
                    "freq_dark_mc"});
    const double lam_b = cfg.lambda_bright();
    for (int k = 0; k <= k_max; ++k) {
        const double fb = k < static_cast<int>(mc.bright_hist.size())
                              ? static_cast<double>(mc.bright_hist[static_cast<std::size_t>(k)]) /
                                    static_cast<double>(mc.shots_bright)
                              : 0.0;
        const double fd = k < static_cast<int>(mc.dark_hist.size())
                              ? static_cast<double>(mc.dark_hist[static_cast<std::size_t>(k)]) /
                                    static_cast<double>(mc.shots_dark)
                              : 0.0;
        hist.add_row({static_cast<long long>(k), apparatus::poisson_pmf(k, lam_b),
                      apparatus::dark_count_pmf(cfg, k), fb, fd});
    }
    c.emit(hist, "detection_histogram.csv");

    const int t_max = static_cast<int>(std::ceil(lam_b + 10.0 * std::sqrt(lam_b)));
    CsvWriter errors({"threshold", "eps_bright", "eps_dark", "total"});
    for (int t = 1; t <= t_max; ++t) {
        const auto e = apparatus::detection_error(cfg, t);
        errors.add_row({static_cast<long long>(t), e.eps_bright, e.eps_dark, e.total()});
    }
    c.emit(errors, "detection_errors.csv");

    const auto e_used = apparatus::detection_error(cfg, t_used);
    CsvWriter summary({"lambda_bright", "lambda_background", "threshold_used",
                       "optimal_threshold", "eps_bright", "eps_dark", "total",
                       "mc_eps_bright", "mc_eps_dark"});
    summary.add_row({lam_b, cfg.lambda_background(), static_cast<long long>(t_used),
                     static_cast<long long>(t_opt), e_used.eps_bright, e_used.eps_dark,
                     e_used.total(), mc.eps_bright(t_used), mc.eps_dark(t_used)});
    c.emit(summary, "detection_summary.csv");
}

void run_addressability(const ScenarioContext& c) {
    const int n_ions = c.cfg.get_int("chain.n_ions", 4);
    const double nu = c.cfg.get_double("trap.axial_freq_hz", 700e3);
    const double d_min = c.cfg.get_double("chain.d_min_um", 5.0) * 1e-6;
    apparatus::BeamProfile beam;
    beam.width_1e = c.cfg.get_double("beam.width_1e_um", 3.7) * 1e-6;
    const double max_v = c.cfg.get_double("deflector.max_voltage_v", 2000.0);
    const auto sp = species();

    const auto geometry = chain::make_chain(sp, n_ions, nu);
    const auto rows = apparatus::addressability_report(geometry, beam);
    CsvWriter csv({"ion_a", "ion_b", "spacing_m", "resolvable", "pi_pulse_crosstalk"});
    for (const auto& r : rows)
        csv.add_row({static_cast<long long>(r.ion_a), static_cast<long long>(r.ion_b),
                     r.spacing, static_cast<long long>(r.resolvable ? 1 : 0),
                     r.pi_pulse_crosstalk});
    c.emit(csv, "addressability.csv");

    const double spacing = n_ions >= 2 ? chain::min_spacing(n_ions, nu, sp) : 0.0;
    const double hop_voltage = spacing / 23e-6 * 1000.0; // invert 23 um/kV
    if (std::abs(hop_voltage) > max_v)
        c.warn("deflector: adjacent-ion hop needs " + std::to_string(hop_voltage) +
               " V, beyond the configured range");
    CsvWriter summary({"n_ions", "axial_freq_hz", "min_spacing_m", "d_min_m",
                       "max_com_frequency_hz", "beam_width_1e_m", "crosstalk_at_d_min",
                       "deflector_hop_voltage_v"});
    summary.add_row({static_cast<long long>(n_ions), nu, spacing, d_min,
                     n_ions >= 2 ? chain::max_com_frequency(n_ions, d_min, sp) : 0.0,
                     beam.width_1e, apparatus::crosstalk_probability(beam, d_min, pi),
                     hop_voltage});
    c.emit(summary, "addressability_summary.csv");
}

void run_timescales(const ScenarioContext& c) {
    const double trap_freq = c.cfg.get_double("timescales.trap_freq_hz", 1e6);
    if (trap_freq <= 0) throw DomainError("timescales.trap_freq_hz must be positive");
    const std::vector<std::pair<std::string, double>> entries = {
        {"trap_oscillation_period", 1.0 / trap_freq},
        {"sideband_pi_pulse", c.cfg.get_double("timescales.pi_time_s", 20e-6)},
        {"cnot_gate_budget", c.cfg.get_double("timescales.cnot_budget_s", 200e-6)},
        {"qubit_coherence", c.cfg.get_double("timescales.qubit_coherence_s", 1e-3)},
        {"laser_coherence", c.cfg.get_double("timescales.laser_coherence_s", 15e-3)},
        {"heating_one_phonon", c.cfg.get_double("timescales.heating_time_per_phonon_s", 0.19)},
        {"d_state_lifetime", c.cfg.get_double("timescales.d_lifetime_s", 1.0)},
    };
    auto sorted = entries;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const auto& a, const auto& b) { return a.second < b.second; });
    CsvWriter csv({"rank", "label", "time_s"});
    for (std::size_t i = 0; i < sorted.size(); ++i)
        csv.add_row({static_cast<long long>(i), sorted[i].first, sorted[i].second});
    c.emit(csv, "timescales.csv");
}

// ---------------------------------------------------------------------------
// registry

const std::map<std::string, ScenarioEntry>& registry() {
    static const std::map<std::string, ScenarioEntry> reg = [] {
        std::map<std::string, ScenarioEntry> r;
        r["chain-geometry"] = {
            "equilibrium positions, normal modes and spacing limits of an ion chain",
            {"chain.n_ions", "trap.axial_freq_hz", "chain.d_min_um"},
            run_chain_geometry};
        r["sideband-scan"] = {
            "red/blue sideband excitation spectra before and after ground-state cooling",
            {"mode.freq_hz", "laser.wavelength_nm", "laser.projection_angle_rad",
             "pulse.pi_time_us", "scan.detuning_hz", "scan.doppler_nbar", "scan.cooled_p0"},
            run_sideband_scan};
        r["rabi-flops"] = {
            "blue-sideband Rabi oscillations for |n=0>, |n=1> and a thermal state",
            {"mode.freq_hz", "laser.wavelength_nm", "laser.projection_angle_rad",
             "pulse.pi_time_us", "flops.t_end_s", "flops.n_points", "flops.thermal_nbar",
             "decoherence.tau_c_s"},
            run_rabi_flops};
        r["cooling-sim"] = {
            "resolved-sideband cooling rate equations from the Doppler plateau to the ground state",
            {"mode.freq_hz", "cooling.eta", "cooling.omega_hz", "cooling.gamma_eff_hz",
             "cooling.detuning_hz", "cooling.alpha", "cooling.initial_nbar",
             "heating.rate_phonons_per_s", "cooling.t_end_s", "cooling.n_samples"},
            run_cooling_sim};
        r["eit-spectrum"] = {
            "dark-resonance absorption profile of the dressed S-P manifold",
            {"eit.delta_sigma_hz", "eit.omega_sigma_hz", "eit.stark_shift_hz",
             "eit.probe_frac", "eit.b_field_gauss", "eit.ss_dephasing_hz", "eit.manifold",
             "eit.two_photon_detuning_hz"},
            run_eit_spectrum};
        r["eit-cooling"] = {
            "dark-resonance cooling limits per motional mode plus a light-shift sweep",
            {"eit.delta_sigma_hz", "eit.omega_sigma_hz", "eit.stark_shift_hz",
             "eit.probe_frac", "eit.b_field_gauss", "eit.ss_dephasing_hz", "eit.manifold",
             "eit.mode_freqs_hz", "eit.wavelength_nm", "laser.projection_angle_rad",
             "eit.scan_mode_freq_hz", "eit.scan_probe_frac", "eit.stark_scan_hz"},
            run_eit_cooling};
        r["detection-histogram"] = {
            "photon-count statistics and misclassification errors of quantum-jump readout",
            {"detection.collection_fraction", "detection.quantum_efficiency",
             "detection.scattering_rate_bright_per_s", "detection.background_rate_per_s",
             "detection.window_s", "detection.d_lifetime_s", "detection.threshold_counts",
             "detection.mc_shots_per_state"},
            run_detection_histogram};
        r["addressability"] = {
            "per-pair spacing, resolvability and crosstalk of an addressed chain",
            {"chain.n_ions", "trap.axial_freq_hz", "chain.d_min_um", "beam.width_1e_um",
             "deflector.max_voltage_v"},
            run_addressability};
        r["timescales"] = {
            "ladder of characteristic experiment timescales, sorted ascending",
            {"timescales.trap_freq_hz", "timescales.pi_time_s", "timescales.cnot_budget_s",
             "timescales.qubit_coherence_s", "timescales.laser_coherence_s",
             "timescales.heating_time_per_phonon_s", "timescales.d_lifetime_s"},
            run_timescales};
        return r;
    }();
    return reg;
}

std::set<std::string> all_keys() {
    std::set<std::string> keys;
    for (const auto& [_, entry] : registry())
        keys.insert(entry.keys.begin(), entry.keys.end());
    return keys;
}

void write_manifest(const RunRecord& rec) {
    const std::string path = (fs::path(rec.out_dir) / "run_manifest.txt").string();
    std::ofstream out(path);
    if (!out)
        throw IoError("manifest: cannot open '" + path + "' for writing");
    out << "scenario = " << rec.scenario << "\n";
    out << "seed = " << rec.seed << "\n";
    out << "wall_time_s = " << rec.wall_time_s << "\n";
    for (const auto& p : rec.csv_paths)
        out << "output = " << fs::path(p).filename().string() << "\n";
    for (const auto& w : rec.warnings)
        out << "warning = " << w << "\n";
    for (const auto& r : rec.parameters)
        out << "param " << r.key << " = " << r.value << "  (" << r.source << ")\n";
    if (!out)
        throw IoError("manifest: short write to '" + path + "'");
}

} // namespace

std::vector<ScenarioInfo> list_scenarios() {
    std::vector<ScenarioInfo> out;
    for (const auto& [name, entry] : registry())
        out.push_back({name, entry.description});
    return out;
}

std::set<std::string> allowed_keys(const std::string& scenario) {
    const auto it = registry().find(scenario);
    if (it == registry().end())
        throw ConfigError("unknown scenario '" + scenario + "'");
    return it->second.keys;
}

RunRecord run_scenario(const std::string& config_path, const std::string& scenario,
                       const std::string& out_dir, std::uint64_t seed) {
    const auto it = registry().find(scenario);
    if (it == registry().end()) {
        std::string names;
        for (const auto& [name, _] : registry())
            names += (names.empty() ? "" : ", ") + name;
        throw ConfigError("unknown scenario '" + scenario + "' (expected one of: " + names + ")");
    }

    const Config cfg = Config::from_file(config_path);
    // a config file may carry keys for several scenarios; reject only keys no
    // scenario understands
    cfg.require_known_keys(all_keys());

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("run: cannot create output directory '" + out_dir + "': " + ec.message());

    RunRecord rec;
    rec.scenario = scenario;
    rec.out_dir = out_dir;
    rec.seed = seed;

    const auto t0 = std::chrono::steady_clock::now();
    ScenarioContext ctx{cfg, out_dir, seed, &rec.csv_paths, &rec.warnings};
    it->second.fn(ctx);
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    rec.parameters = cfg.resolved();
    write_manifest(rec);
    return rec;
}

} // namespace iontrap::cli
