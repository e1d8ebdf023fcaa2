#include "iontrap/dynamics.hpp"

#include <cmath>

#include "iontrap/constants.hpp"

namespace iontrap::dynamics {

namespace {

// sqrt(n_<! / n_>!) = 1/sqrt((n_<+1)(n_<+2)...n_>), via lgamma for stability
double factorial_ratio_sqrt(int n_low, int n_high) {
    return std::exp(0.5 * (std::lgamma(n_low + 1.0) - std::lgamma(n_high + 1.0)));
}

double envelope(double t, double tau_c) {
    return tau_c > 0.0 ? std::exp(-t / tau_c) : 1.0;
}

} // namespace

double rabi_frequency(int n, Sideband sideband, int order, double eta, double omega0) {
    if (n < 0) throw DomainError("rabi_frequency: n must be >= 0");
    if (eta <= 0 || eta >= 1) throw DomainError("rabi_frequency: eta must lie in (0,1)");
    if (omega0 < 0) throw DomainError("rabi_frequency: negative Rabi frequency");
    if (order < 1 && sideband != Sideband::carrier)
        throw DomainError("rabi_frequency: sideband order must be >= 1");

    const int s = sideband == Sideband::carrier ? 0
                : sideband == Sideband::blue    ? order
                                                : -order;
    const int n_final = n + s;
    if (n_final < 0) return 0.0; // red sideband below the ladder bottom

    const int n_low = std::min(n, n_final);
    const int n_high = std::max(n, n_final);
    const int k = n_high - n_low; // |s|

    const double x = eta * eta;
    // generalized Laguerre L_{n_low}^{k}(eta^2)
    const double laguerre = std::assoc_laguerre(static_cast<unsigned>(n_low),
                                                static_cast<unsigned>(k), x);
    return omega0 * std::exp(-x / 2.0) * std::pow(eta, k) *
           factorial_ratio_sqrt(n_low, n_high) * laguerre;
}

std::vector<std::pair<double, double>> simulate_flops(
    const FockDistribution& initial, const Pulse& pulse, double eta,
    const DecoherenceModel& decoherence, const std::vector<double>& t_grid) {
    pulse.validate();
    decoherence.validate();

    // precompute per-Fock Rabi frequencies once
    std::vector<double> omega_n(initial.populations().size());
    for (std::size_t n = 0; n < omega_n.size(); ++n)
        omega_n[n] = rabi_frequency(static_cast<int>(n), pulse.sideband, pulse.order,
                                    eta, pulse.omega0);

    std::vector<std::pair<double, double>> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        double coherent = 0.0;
        for (std::size_t n = 0; n < omega_n.size(); ++n) {
            const double s = std::sin(omega_n[n] * t / 2.0);
            coherent += initial.populations()[n] * s * s;
        }
        const double env = envelope(t, decoherence.tau_c);
        out.emplace_back(t, coherent * env + (1.0 - env) / 2.0);
    }
    return out;
}

double detuned_excitation(const FockDistribution& initial, const Pulse& pulse,
                          double eta, double detuning) {
    pulse.validate();
    double p = 0.0;
    for (std::size_t n = 0; n < initial.populations().size(); ++n) {
        const double omega = rabi_frequency(static_cast<int>(n), pulse.sideband,
                                            pulse.order, eta, pulse.omega0);
        const double w2 = omega * omega + detuning * detuning;
        if (w2 == 0.0) continue;
        const double s = std::sin(std::sqrt(w2) * pulse.duration / 2.0);
        p += initial.populations()[n] * (omega * omega / w2) * s * s;
    }
    return p;
}

ThermometryResult sideband_ratio_to_nbar(double p_red, double p_blue) {
    if (p_red < 0 || p_blue <= 0 || p_red > 1 || p_blue > 1)
        throw DomainError("sideband_ratio_to_nbar: excitations must lie in [0,1], blue > 0");
    const double r = p_red / p_blue;
    if (r >= 1.0)
        throw DomainError("sideband_ratio_to_nbar: red/blue ratio >= 1 is non-thermal");
    return {r, r / (1.0 - r), 1.0 - r};
}

FockPrepResult prepare_fock_one(double eta, double omega0,
                                const DecoherenceModel& decoherence,
                                double duration_scale) {
    decoherence.validate();
    const double omega_blue = rabi_frequency(0, Sideband::blue, 1, eta, omega0);
    if (omega_blue <= 0)
        throw DomainError("prepare_fock_one: vanishing blue-sideband coupling");
    const double t_pi = core::constants::pi / omega_blue;
    const double t = t_pi * duration_scale;
    const double env = envelope(t, decoherence.tau_c);
    const double s = std::sin(omega_blue * t / 2.0);
    const double coherent = s * s;
    FockPrepResult r;
    r.pi_time = t;
    r.fidelity = env * coherent;
    r.population_n1 = env * coherent + (1.0 - env) / 2.0;
    return r;
}

double ramsey_contrast(double t_delay, double laser_fwhm_hz) {
    if (t_delay < 0) throw DomainError("ramsey_contrast: negative delay");
    if (laser_fwhm_hz < 0) throw DomainError("ramsey_contrast: negative linewidth");
    return std::exp(-core::constants::pi * laser_fwhm_hz * t_delay);
}

} // namespace iontrap::dynamics
