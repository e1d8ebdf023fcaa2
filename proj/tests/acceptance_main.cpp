// Acceptance suite: ten end-to-end checks of the library's documented
// behavior, one line of output per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <utility>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "iontrap/apparatus.hpp"
#include "iontrap/chain.hpp"
#include "iontrap/constants.hpp"
#include "iontrap/cooling.hpp"
#include "iontrap/csv.hpp"
#include "iontrap/dynamics.hpp"
#include "iontrap/fock.hpp"
#include "iontrap/liouville.hpp"
#include "iontrap/motion.hpp"
#include "iontrap/scenarios.hpp"
#include "oracle_helpers.hpp"

using namespace iontrap;
using core::constants::pi;
using core::constants::two_pi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
    va_list args;
    va_start(args, format);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// 1. Four ions can be held above 700 kHz only at the cost of sub-5-um
//    spacing; the inverse bound evaluates fast.
Outcome chain_constraint() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto ca = core::calcium_40();
    const double f_max = chain::max_com_frequency(4, 5e-6, ca);
    const double spacing = chain::min_spacing(4, 700e3, ca);
    const double wall = seconds_since(t0);

    const bool freq_ok = std::abs(f_max - 700e3) / 700e3 <= 0.05;
    const bool spacing_ok = spacing > 5e-6;
    const bool time_ok = wall < 1.0;
    return {freq_ok && spacing_ok && time_ok,
            fmt("max COM frequency %.1f kHz (700 +- 5%%), min spacing %.3f um (> 5), %.3f s",
                f_max / 1e3, spacing * 1e6, wall)};
}

// 2. Newton equilibria against an independent gradient-descent minimization.
Outcome equilibria_oracle() {
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        const auto newton = chain::equilibrium_positions(n);
        const auto descent = oracle::bruteforce_equilibrium(n);
        for (int i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(newton[static_cast<std::size_t>(i)] -
                                             descent[static_cast<std::size_t>(i)]));
    }
    const auto two = chain::equilibrium_positions(2);
    const double analytic_err = std::max(std::abs(two[0] + std::cbrt(0.25)),
                                         std::abs(two[1] - std::cbrt(0.25)));
    return {worst <= 1e-8 && analytic_err <= 1e-10,
            fmt("N=2..8 worst deviation %.2e (<= 1e-8), N=2 analytic error %.2e (<= 1e-10)",
                worst, analytic_err)};
}

// 3. Fitted |0> vs |1> blue-sideband flop frequencies obey the sqrt(2) law.
Outcome sqrt2_law() {
    const double eta = 0.046;
    const double omega0 = two_pi * 100e3;
    dynamics::Pulse blue{dynamics::Sideband::blue, 1, omega0, 0.0, 0.0, 0};

    auto fit_flop_frequency = [&](int n_start) {
        const auto dist = core::fock_state(n_start, 30);
        auto p_of_t = [&](double t) {
            return dynamics::simulate_flops(dist, blue, eta, {}, {t})[0].second;
        };
        // first population maximum is half a flop period
        const double t_guess = pi / (omega0 * eta); // ~pi pulse scale
        const double t_star = oracle::first_maximum(p_of_t, 0.2 * t_guess, 1.6 * t_guess);
        return pi / t_star;
    };

    const double ratio = fit_flop_frequency(1) / fit_flop_frequency(0);
    const double closed_form = std::sqrt(2.0) * (1.0 - eta * eta / 2.0);
    const double vs_closed = std::abs(ratio - closed_form) / closed_form;
    const double vs_sqrt2 = std::abs(ratio - std::sqrt(2.0)) / std::sqrt(2.0);
    return {vs_closed <= 1e-6 && vs_sqrt2 <= 0.01,
            fmt("fitted ratio %.9f, vs sqrt(2)(1-eta^2/2) %.2e (<= 1e-6), vs sqrt(2) %.4f%% (<= 1%%)",
                ratio, vs_closed, vs_sqrt2 * 100)};
}

// 4. Sideband thermometry round-trips the temperature.
Outcome thermometry() {
    const double eta = 0.046;
    const double omega0 = two_pi * 100e3;
    const double t = 13e-6;
    dynamics::Pulse red{dynamics::Sideband::red, 1, omega0, t, 0.0, 0};
    dynamics::Pulse blue{dynamics::Sideband::blue, 1, omega0, t, 0.0, 0};

    double worst = 0.0;
    for (double nbar : {0.01, 0.1, 1.0, 5.0}) {
        const auto dist = core::thermal_distribution(nbar);
        const double p_red = dynamics::simulate_flops(dist, red, eta, {}, {t})[0].second;
        const double p_blue = dynamics::simulate_flops(dist, blue, eta, {}, {t})[0].second;
        const auto rec = dynamics::sideband_ratio_to_nbar(p_red, p_blue);
        worst = std::max(worst, std::abs(rec.nbar - nbar) / nbar);
    }

    const double p0 = 0.999;
    const auto dist = core::thermal_distribution((1 - p0) / p0);
    const double p_red = dynamics::simulate_flops(dist, red, eta, {}, {t})[0].second;
    const double p_blue = dynamics::simulate_flops(dist, blue, eta, {}, {t})[0].second;
    const double ratio = p_red / p_blue;
    return {worst <= 0.05 && std::abs(ratio - 1e-3) <= 1e-5,
            fmt("worst round-trip error %.2e (<= 5%%), p0=0.999 -> R=%.6e (1e-3 +- 1e-5)",
                worst, ratio)};
}

// 5. The documented working point cools nbar=2 to the ground state in 6 ms.
Outcome sideband_cooling() {
    const auto t0 = std::chrono::steady_clock::now();
    cooling::SidebandCoolingParams p;
    p.eta = 0.046;
    p.omega = two_pi * 123e3;
    p.gamma_eff = two_pi * 50e3;
    p.nu = two_pi * 4.51e6;
    p.detuning = -p.nu;
    p.alpha = 0.4;
    const auto traj = cooling::sideband_cooling_simulate(
        p, core::thermal_distribution(2.0), 1.0 / 0.19, 6e-3, 241);
    const double wall = seconds_since(t0);

    const double ss_err = std::abs(traj.nbar.back() - traj.nbar_ss) / traj.nbar_ss;
    return {traj.p0.back() >= 0.999 && ss_err <= 1e-6 && wall < 5.0,
            fmt("p0(6 ms) = %.6f (>= 0.999), steady-state mismatch %.2e (<= 1e-6), %.3f s",
                traj.p0.back(), ss_err, wall)};
}

// 6. Three-level dark resonance: perfect null on two-photon resonance, bright
//    peak one light shift above it.
Outcome eit_dark_resonance() {
    const auto ca = core::calcium_40();
    liouville::EitBeams beams;
    beams.delta_sigma = two_pi * 60e6;
    beams.omega_sigma =
        liouville::omega_sigma_for_stark_shift(beams.delta_sigma, two_pi * 3.34e6);
    beams.omega_pi = beams.omega_sigma / 100.0;

    const double step = 10e3;
    std::vector<double> grid; // two-photon detunings, 0 and +-delta on-grid
    for (double x = -6.68e6; x <= 6.68e6 + step / 2; x += step)
        grid.push_back(beams.delta_sigma + two_pi * x);
    const auto spec = liouville::probe_spectrum(beams, ca, grid, false);

    double peak = 0.0, peak_x = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        if (spec.points[i].scattering_rate > peak) {
            peak = spec.points[i].scattering_rate;
            peak_x = (grid[i] - beams.delta_sigma) / two_pi;
        }
    const std::size_t i_res = grid.size() / 2; // x = 0
    const double null_ratio = spec.points[i_res].scattering_rate / peak;
    const double delta =
        liouville::ac_stark_shift(beams.delta_sigma, beams.omega_sigma) / two_pi;
    const bool peak_on_shift = std::abs(peak_x - delta) <= step;
    return {std::abs(null_ratio) < 1e-8 && peak_on_shift,
            fmt("null/peak %.2e (< 1e-8), peak at %.4f MHz vs delta %.4f MHz (grid 10 kHz)",
                null_ratio, peak_x / 1e6, delta / 1e6)};
}

// 7. Dual-mode EIT cooling ordering and magnitude.
Outcome eit_dual_mode() {
    const auto ca = core::calcium_40();
    liouville::EitBeams beams;
    beams.delta_sigma = two_pi * 60e6;
    beams.omega_sigma =
        liouville::omega_sigma_for_stark_shift(beams.delta_sigma, two_pi * 2.5e6);
    beams.omega_pi = 0.3 * beams.omega_sigma;

    const double eta1 = core::lamb_dicke_parameter(ca, 397e-9, 0.0, 1.61e6);
    const double eta2 = core::lamb_dicke_parameter(ca, 397e-9, 0.0, 3.34e6);
    const auto r1 = cooling::eit_cooling_steady_state(beams, ca, 1.61e6, eta1, true);
    const auto r2 = cooling::eit_cooling_steady_state(beams, ca, 3.34e6, eta2, true);
    const double dop1 = cooling::doppler_limit(ca.gamma_p, two_pi * 1.61e6);
    const double dop2 = cooling::doppler_limit(ca.gamma_p, two_pi * 3.34e6);

    const bool ordered = r1.nbar_ss > r2.nbar_ss;
    const bool sub_doppler = r1.nbar_ss < dop1 && r2.nbar_ss < dop2;
    const bool near_reported = r1.nbar_ss > 0.85 / 3 && r1.nbar_ss < 0.85 * 3 &&
                               r2.nbar_ss > 0.35 / 3 && r2.nbar_ss < 0.35 * 3;
    return {ordered && sub_doppler && near_reported,
            fmt("nbar(1.61) = %.4f, nbar(3.34) = %.4f (ordered, sub-Doppler %.2f/%.2f, "
                "within 3x of 0.85/0.35)",
                r1.nbar_ss, r2.nbar_ss, dop1, dop2)};
}

// 8. Anomalous heating bookkeeping and the timescale ladder.
Outcome heating_ledger() {
    const double rate = 1.0 / 0.19;
    const double one = cooling::heating_evolution(0.0, rate, 0.19);
    const double gate = cooling::heating_evolution(0.0, rate, 200e-6);
    const bool exact_one = one == 1.0;
    const bool gate_ok = std::abs(gate - 0.00105) / 0.00105 <= 0.01;

    const fs::path dir = fs::temp_directory_path() / "iontrap_acceptance_timescales";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "defaults.ini") << "# defaults\n";
    const auto rec = cli::run_scenario((dir / "defaults.ini").string(), "timescales",
                                       (dir / "out").string(), 1);
    const auto table = cli::CsvTable::read(rec.csv_paths.at(0));
    bool increasing = table.rows.size() == 7;
    double prev = -1.0;
    for (const auto& row : table.rows) {
        const double t = std::stod(row.at(2));
        if (t <= prev) increasing = false;
        prev = t;
    }
    return {exact_one && gate_ok && increasing,
            fmt("+%.0f phonon at 190 ms (exact), +%.5f in 200 us, %zu ladder entries increasing",
                one, gate, table.rows.size())};
}

// 9. Exact detection errors at the defaults, cross-checked by Monte Carlo.
Outcome detection_errors() {
    apparatus::DetectionConfig cfg;
    const int threshold = apparatus::optimal_threshold(cfg);
    const auto exact = apparatus::detection_error(cfg, threshold);

    const std::uint64_t shots = 1000000;
    const auto mc = apparatus::detection_monte_carlo(cfg, shots, 20260814);
    const double sig_b =
        std::sqrt(exact.eps_bright * (1 - exact.eps_bright) / static_cast<double>(shots));
    const double sig_d =
        std::sqrt(exact.eps_dark * (1 - exact.eps_dark) / static_cast<double>(shots));
    const double dev_b = std::abs(mc.eps_bright(threshold) - exact.eps_bright);
    const double dev_d = std::abs(mc.eps_dark(threshold) - exact.eps_dark);

    return {exact.total() < 0.01 && dev_b <= 3 * sig_b && dev_d <= 3 * sig_d,
            fmt("total error %.3e (< 1%%) at threshold %d; MC deviations %.2f sigma / %.2f sigma (<= 3)",
                exact.total(), threshold, dev_b / sig_b, dev_d / sig_d)};
}

// 10. Re-running every scenario with the same seed reproduces each CSV byte
//     for byte.
Outcome determinism() {
    const fs::path dir = fs::temp_directory_path() / "iontrap_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "defaults.ini") << "# defaults\n";
    const std::string config = (dir / "defaults.ini").string();

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };

    std::size_t files = 0;
    bool identical = true;
    std::string first_mismatch;
    for (const auto& info : cli::list_scenarios()) {
        const auto rec_a = cli::run_scenario(config, info.name,
                                             (dir / (info.name + "_a")).string(), 7);
        const auto rec_b = cli::run_scenario(config, info.name,
                                             (dir / (info.name + "_b")).string(), 7);
        for (std::size_t i = 0; i < rec_a.csv_paths.size(); ++i, ++files) {
            if (slurp(rec_a.csv_paths[i]) != slurp(rec_b.csv_paths[i])) {
                identical = false;
                if (first_mismatch.empty())
                    first_mismatch = fs::path(rec_a.csv_paths[i]).filename().string();
            }
        }
    }
    return {identical && files > 0,
            identical ? fmt("%zu CSV files byte-identical across re-runs of all 9 scenarios", files)
                      : "first mismatch: " + first_mismatch};
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"chain spacing/frequency constraint", chain_constraint},
        {"equilibria vs independent minimizer", equilibria_oracle},
        {"sqrt(2) sideband flop ratio", sqrt2_law},
        {"sideband thermometry round trip", thermometry},
        {"ground-state cooling working point", sideband_cooling},
        {"EIT dark resonance null and peak", eit_dark_resonance},
        {"EIT dual-mode cooling limits", eit_dual_mode},
        {"heating ledger and timescale ladder", heating_ledger},
        {"detection errors exact vs Monte Carlo", detection_errors},
        {"seeded re-runs byte-identical", determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        if (!out.pass) ++failures;
        std::printf("criterion %2zu [%s] %s: %s\n", i + 1, out.pass ? "PASS" : "FAIL",
                    criteria[i].first.c_str(), out.detail.c_str());
    }
    std::printf("acceptance: %zu/%zu criteria passed in %.1f s\n",
                criteria.size() - failures, criteria.size(), seconds_since(t0));
    return failures;
}
