#pragma once

#include <cstdint>
#include <vector>

#include "iontrap/chain.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::apparatus {

/// Photon-counting chain for quantum-jump state discrimination.
struct DetectionConfig {
    double collection_fraction = 1e-2;   // solid-angle fraction collected
    double quantum_efficiency = 0.10;    // detector QE
    double scattering_rate_bright = 3e7; // photons/s scattered by a bright ion
    double background_rate = 1000.0;     // counts/s
    double window = 2e-3;                // s
    double d_lifetime = 1.0;             // s, dark (shelved) state lifetime

    void validate() const {
        if (collection_fraction <= 0 || collection_fraction > 1 ||
            quantum_efficiency <= 0 || quantum_efficiency > 1)
            throw DomainError("DetectionConfig: fractions must lie in (0,1]");
        if (scattering_rate_bright < 0 || background_rate < 0 ||
            window <= 0 || d_lifetime <= 0)
            throw DomainError("DetectionConfig: rates/times must be positive");
    }

    double lambda_signal() const {
        return scattering_rate_bright * collection_fraction * quantum_efficiency * window;
    }
    double lambda_background() const { return background_rate * window; }
    double lambda_bright() const { return lambda_signal() + lambda_background(); }
};

/// Misclassification probabilities at an integer count threshold
/// (classify bright when counts >= threshold).
struct DetectionError {
    double eps_bright = 0.0; // P(counts < T | bright)
    double eps_dark = 0.0;   // P(counts >= T | dark), includes D decay mid-window
    double total() const { return 0.5 * (eps_bright + eps_dark); } // equal priors
};

/// Poisson pmf / cdf by stable recursion (lambdas here stay modest).
double poisson_pmf(int k, double lambda);
double poisson_cdf(int k, double lambda);

/// Exact count distribution of a dark (shelved) ion: survives the window with
/// prob e^(-w/tau_D) -> Poisson(lam_bg); decays at a uniformly distributed
/// time with prob 1-e^(-w/tau_D), the remaining window fraction v then
/// contributing Poisson(lam_bg + v lam_signal), integrated in closed form via
/// int pmf(k; a+bv) dv = [CDF(k;a) - CDF(k;a+b)]/b.
double dark_count_pmf(const DetectionConfig& cfg, int k);

/// Exact Poisson-sum misclassification probabilities at a threshold.
DetectionError detection_error(const DetectionConfig& cfg, int threshold);

/// Error-minimizing threshold by exhaustive scan of integers in
/// [1, lam_bright + 10 sqrt(lam_bright)].
int optimal_threshold(const DetectionConfig& cfg);

/// Histogram of a seeded Monte Carlo of the same model (counts per shot),
/// for cross-validation of the exact sums. Returns per-count frequencies.
struct DetectionMonteCarlo {
    std::vector<std::uint64_t> bright_hist;
    std::vector<std::uint64_t> dark_hist;
    std::uint64_t shots_bright = 0;
    std::uint64_t shots_dark = 0;
    double eps_bright(int threshold) const;
    double eps_dark(int threshold) const;
};
DetectionMonteCarlo detection_monte_carlo(const DetectionConfig& cfg,
                                          std::uint64_t shots_per_state,
                                          std::uint64_t seed);

/// Gaussian addressing beam, 1/e width of the Rabi-frequency profile.
struct BeamProfile {
    double width_1e = 3.7e-6; // m
    double center = 0.0;      // m

    void validate() const {
        if (width_1e <= 0) throw DomainError("BeamProfile: width must be positive");
    }
};

/// Neighbor excitation for a pulse of the given area at beam center:
/// P = sin^2((area/2) e^(-(d/w)^2)).
double crosstalk_probability(const BeamProfile& beam, double distance,
                             double pulse_area_on_target);

/// Electro-optic deflector calibration: 23 um per kV, strictly linear.
double deflector_displacement(double voltage, double max_abs_voltage = 2000.0);

/// Per-adjacent-pair addressing report.
struct AddressabilityRow {
    int ion_a = 0;
    int ion_b = 0;
    double spacing = 0.0;       // m
    bool resolvable = false;    // spacing > 2 um imaging resolution
    double pi_pulse_crosstalk = 0.0;
};
std::vector<AddressabilityRow> addressability_report(const chain::ChainGeometry& geometry,
                                                     const BeamProfile& beam);

} // namespace iontrap::apparatus
