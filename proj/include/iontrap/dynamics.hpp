#pragma once

#include <utility>
#include <vector>

#include "iontrap/errors.hpp"
#include "iontrap/fock.hpp"
#include "iontrap/motion.hpp"

namespace iontrap::dynamics {

using core::FockDistribution;

/// Which vibronic transition a pulse drives; order k >= 1 for sidebands.
enum class Sideband { carrier, red, blue };

/// A square laser pulse on the qubit transition of one ion.
struct Pulse {
    Sideband sideband = Sideband::carrier;
    int order = 1;        // |delta n| for sidebands, ignored for the carrier
    double omega0 = 0.0;  // rad/s bare (carrier) Rabi frequency
    double duration = 0.0; // s
    double phase = 0.0;    // rad
    int addressed_ion = 0;

    void validate() const {
        if (duration < 0) throw DomainError("Pulse: negative duration");
        if (omega0 < 0) throw DomainError("Pulse: negative Rabi frequency");
        if (order < 1) throw DomainError("Pulse: sideband order must be >= 1");
    }
};

/// Phenomenological decoherence: exponential contrast envelope toward
/// P = 1/2 with time constant tau_c; 0 disables a channel.
struct DecoherenceModel {
    double tau_c = 0.0;        // s, contrast 1/e time (0 = no decoherence)
    double heating_rate = 0.0; // phonons/s
    double d_lifetime = 0.0;   // s

    void validate() const {
        if (tau_c < 0 || heating_rate < 0 || d_lifetime < 0)
            throw DomainError("DecoherenceModel: negative time constant");
    }
};

/// Vibronic Rabi frequency Omega_{n,n+s} = Omega0 e^(-eta^2/2) eta^|s|
/// sqrt(n_<! / n_>!) L_{n_<}^{|s|}(eta^2), with n_< = min(n, n+s).
/// Red sideband from n < order returns 0 (nothing to remove).
double rabi_frequency(int n, Sideband sideband, int order, double eta, double omega0);

/// Resonant flop curve: P_D(t) = sum_n p_n sin^2(Omega_n t/2) env(t)
/// + (1 - env(t))/2 with env = e^(-t/tau_c) (1 if tau_c = 0).
std::vector<std::pair<double, double>> simulate_flops(
    const FockDistribution& initial, const Pulse& pulse, double eta,
    const DecoherenceModel& decoherence, const std::vector<double>& t_grid);

/// Excitation probability of a detuned square pulse:
/// P = sum_n p_n (Omega_n^2/(Omega_n^2+Delta^2)) sin^2(sqrt(Omega_n^2+Delta^2) t/2),
/// detuning Delta in rad/s relative to the addressed transition.
double detuned_excitation(const FockDistribution& initial, const Pulse& pulse,
                          double eta, double detuning);

/// Sideband thermometry: R = P_red/P_blue, nbar = R/(1-R), p0 = 1-R for a
/// thermal state. Throws DomainError when R >= 1 (non-thermal input).
struct ThermometryResult {
    double ratio;
    double nbar;
    double p0;
};
ThermometryResult sideband_ratio_to_nbar(double p_red, double p_blue);

/// Blue-sideband pi pulse from |S>|0> followed by an instantaneous repump:
/// ideally |S>|1>. fidelity = env sin^2(theta/2) (coherent success
/// probability); population_n1 adds the dephased branch's 1/2.
struct FockPrepResult {
    double fidelity;
    double population_n1;
    double pi_time; // s, duration actually used
};
FockPrepResult prepare_fock_one(double eta, double omega0,
                                const DecoherenceModel& decoherence,
                                double duration_scale = 1.0);

/// Ramsey fringe contrast under Lorentzian laser phase diffusion:
/// C(T) = e^(-pi dnu_fwhm T).
double ramsey_contrast(double t_delay, double laser_fwhm_hz);

} // namespace iontrap::dynamics
