#pragma once

#include <utility>
#include <vector>

#include "iontrap/errors.hpp"
#include "iontrap/fock.hpp"
#include "iontrap/liouville.hpp"

namespace iontrap::cooling {

using core::FockDistribution;

/// Rate-equation parameters for resolved-sideband cooling on the qubit
/// transition with a quench-broadened upper level.
struct SidebandCoolingParams {
    double eta = 0.0;        // Lamb-Dicke parameter
    double omega = 0.0;      // rad/s, drive Rabi frequency
    double gamma_eff = 0.0;  // rad/s, quench-broadened effective linewidth
    double detuning = 0.0;   // rad/s, drive detuning (cooling at -nu)
    double nu = 0.0;         // rad/s, mode frequency
    double alpha = 0.4;      // recoil geometry factor (dipole pattern 2/5)

    void validate() const {
        if (eta <= 0 || eta >= 1) throw DomainError("cooling: eta must lie in (0,1)");
        if (omega < 0 || gamma_eff <= 0 || nu <= 0)
            throw DomainError("cooling: rates must be positive");
        if (alpha < 0) throw DomainError("cooling: negative recoil factor");
    }
};

/// n_bar(t) and p0(t) along a cooling run.
struct CoolingTrajectory {
    std::vector<double> times; // s
    std::vector<double> nbar;
    std::vector<double> p0;
    double a_minus = 0.0;      // 1/s
    double a_plus = 0.0;       // 1/s
    double nbar_ss = 0.0;      // analytic steady state (A+ + Rh)/(A- - A+ - Rh)
    bool has_steady_state = true;
};

/// Doppler limit nbar = Gamma/(2 nu) - 1/2 (optimal-detuning traveling wave),
/// clamped at 0 in the deeply resolved regime.
double doppler_limit(double gamma, double nu);

/// Lorentzian-rate model W(x) = (Omega^2/2) Gamma_eff / ((Gamma_eff/2)^2 + x^2);
/// A- = eta^2 [W(Delta+nu) + alpha W(Delta)], A+ = eta^2 [W(Delta-nu) + alpha W(Delta)].
std::pair<double, double> sideband_cooling_rates(const SidebandCoolingParams& p);

/// Birth-death ladder dp_n/dt = A-[(n+1)p_{n+1} - n p_n] + (A+ + Rh)[n p_{n-1}
/// - (n+1) p_n], integrated with RK4 at fixed step; heating_rate in phonons/s.
/// has_steady_state is false (with the trajectory still returned) when
/// A- <= A+ + Rh.
CoolingTrajectory sideband_cooling_simulate(const SidebandCoolingParams& p,
                                            const FockDistribution& initial,
                                            double heating_rate, double t_end,
                                            int n_samples = 200);

/// Dark-resonance cooling limit from the dressed-manifold scattering profile
/// S(x) sampled at the sideband positions: nbar_ss = S(-nu)/(S(+nu) - S(-nu)).
struct EitCoolingResult {
    double nbar_ss = 0.0;
    double s_plus = 0.0;     // photons/s at two-photon detuning +nu
    double s_minus = 0.0;    // photons/s at -nu
    double rate_scale = 0.0; // eta^2 (S(+nu) - S(-nu)), cooling-rate scale
    bool cooling = true;     // false flags the heating regime S(+nu) <= S(-nu)
    bool perturbative = true;
};
EitCoolingResult eit_cooling_steady_state(const liouville::EitBeams& beams,
                                          const core::SpeciesConstants& species,
                                          double nu_hz, double eta,
                                          bool use_zeeman_manifold = true);

/// Linear anomalous-heating model nbar(t) = nbar0 + rate t.
double heating_evolution(double nbar0, double rate_phonons_per_s, double t);

} // namespace iontrap::cooling
