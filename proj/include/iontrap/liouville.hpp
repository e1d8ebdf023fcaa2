#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::liouville {

using complexd = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;

/// Coherent drive between two levels in the rotating frame.
struct Coupling {
    int i = 0;           // lower level index
    int j = 0;           // upper level index
    double rabi = 0.0;   // rad/s (the drive enters H as rabi/2 |i><j| + h.c.)
};

/// Spontaneous decay channel j -> i at the given rate.
struct Decay {
    int from = 0;
    int to = 0;
    double rate = 0.0;   // rad/s
};

/// Few-level atom in a rotating frame: diagonal energies are detunings
/// (rad/s, Zeeman shifts folded in), couplings are laser drives, decays are
/// Lindblad jump channels. Optional pure dephasing acts on a level pair.
struct LevelSystem {
    int n_levels = 0;
    std::vector<double> energies;     // rad/s, length n_levels
    std::vector<Coupling> couplings;
    std::vector<Decay> decays;
    double ss_dephasing = 0.0;        // rad/s, dephasing between levels 0 and 1
    int dephase_a = 0, dephase_b = 1; // the pair the dephasing acts on

    void validate() const;
};

/// Steady-state density matrix and the photon scattering rate it implies.
struct SteadyState {
    MatrixXcd rho;
    double scattering_rate = 0.0; // photons/s = sum_k rate_k rho_{from_k,from_k}
};

/// One point of a probe-frequency scan.
struct SpectrumPoint {
    double probe_detuning;   // rad/s
    double scattering_rate;  // photons/s
};

/// Dense Lindblad superoperator in column-major vectorization:
/// L = -i (I (x) H - H^T (x) I) + sum_k [ Cbar (x) C - (I (x) C^H C + (C^H C)^T (x) I)/2 ].
/// d vec(rho)/dt = L vec(rho); L always annihilates some steady state.
MatrixXcd build_liouvillian(const LevelSystem& system);

/// Hamiltonian of the rotating-frame system (exposed for verification).
MatrixXcd hamiltonian(const LevelSystem& system);

/// Null-space solve (SVD) with trace-1 normalization; requires the zero
/// singular value to be unique within tolerance, else the level sets are
/// decoupled and the state is ambiguous.
SteadyState steady_state(const LevelSystem& system);

/// AC Stark shift of the dressed dark resonance produced by a strong beam at
/// blue detuning d with Rabi frequency omega: delta = (sqrt(d^2+omega^2)-d)/2.
double ac_stark_shift(double delta_sigma, double omega_sigma);

/// Rabi frequency that realizes a requested light shift at fixed detuning:
/// omega = 2 sqrt(delta (delta_sigma + delta)).
double omega_sigma_for_stark_shift(double delta_sigma, double target_delta);

/// Parameters of the dressed S1/2 - P1/2 manifold used for dark-resonance
/// cooling: a strong sigma+ beam (detuning delta_sigma from its own Zeeman
/// component) dresses S(-1/2) <-> P(+1/2); a pi probe at delta_pi couples the
/// Delta m = 0 legs.
struct EitBeams {
    double delta_sigma = 0.0;  // rad/s, blue detuning of the sigma+ beam
    double omega_sigma = 0.0;  // rad/s
    double delta_pi = 0.0;     // rad/s, probe detuning from S(+1/2)->P(+1/2)
    double omega_pi = 0.0;     // rad/s
    double b_field = 4e-4;     // T, quantization field
    double ss_dephasing = 0.0; // rad/s, optional S-S coherence decay
};

/// Three-level Lambda reduction {S(-1/2), S(+1/2), P(+1/2)}: sigma+ leg plus
/// one pi leg, total P decay split 1/3 to the same-m S level and 2/3 to the
/// spin-flipped one. Dark for delta_pi = delta_sigma.
LevelSystem eit_lambda_system(const EitBeams& beams, const core::SpeciesConstants& species);

/// Full 4-level Zeeman manifold {S-,S+,P-,P+} with both pi legs; the second
/// pi leg is detuned by the S/P Zeeman-splitting difference. Default model.
LevelSystem eit_zeeman_system(const EitBeams& beams, const core::SpeciesConstants& species);

/// Scattering rate vs probe detuning across delta_pi_grid, dressing beam
/// fixed. Each point is an independent steady-state solve. perturbative is
/// false (warning flag) when omega_pi exceeds omega_sigma/10.
struct ProbeSpectrum {
    std::vector<SpectrumPoint> points;
    bool perturbative = true;
};
ProbeSpectrum probe_spectrum(const EitBeams& beams, const core::SpeciesConstants& species,
                             const std::vector<double>& delta_pi_grid,
                             bool use_zeeman_manifold = true);

} // namespace iontrap::liouville
