#include "iontrap/apparatus.hpp"

#include <cmath>
#include <random>
#include <string>

#include "iontrap/constants.hpp"

namespace iontrap::apparatus {

double poisson_pmf(int k, double lambda) {
    if (k < 0) return 0.0;
    if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
    return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0));
}

double poisson_cdf(int k, double lambda) {
    if (k < 0) return 0.0;
    if (lambda == 0.0) return 1.0;
    double term = std::exp(-lambda);
    double acc = term;
    for (int j = 1; j <= k; ++j) {
        term *= lambda / j;
        acc += term;
    }
    return std::min(acc, 1.0);
}

double dark_count_pmf(const DetectionConfig& cfg, int k) {
    const double a = cfg.lambda_background();
    const double b = cfg.lambda_signal();
    const double p_survive = std::exp(-cfg.window / cfg.d_lifetime);
    // int_0^1 pmf(k; a+bv) dv = [CDF(k;a) - CDF(k;a+b)]/b
    const double ramp = b > 0.0 ? (poisson_cdf(k, a) - poisson_cdf(k, a + b)) / b
                                : poisson_pmf(k, a);
    return p_survive * poisson_pmf(k, a) + (1.0 - p_survive) * ramp;
}

namespace {

// int_0^1 SF(T-1; a + b v) dv  =  1 - (1/b) sum_{j=0}^{T-1} [CDF(j;a) - CDF(j;a+b)]
// using d/dlambda CDF(j;lambda) = -pmf(j;lambda).
double mean_survival_over_ramp(int threshold, double a, double b) {
    if (threshold <= 0) return 1.0;
    if (b == 0.0) return 1.0 - poisson_cdf(threshold - 1, a);
    double s = 0.0;
    for (int j = 0; j < threshold; ++j)
        s += poisson_cdf(j, a) - poisson_cdf(j, a + b);
    return 1.0 - s / b;
}

// uniform in [0,1) from the raw 64-bit stream; fully specified arithmetic so
// seeded runs are byte-identical on any conforming platform
inline double canonical_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Knuth multiplication sampler: exact Poisson draws from uniform deviates,
// bit-stable for a fixed generator stream (std::poisson_distribution is not
// guaranteed reproducible across implementations).
int sample_poisson(std::mt19937_64& rng, double lambda) {
    const double cutoff = std::exp(-lambda);
    int k = 0;
    double prod = canonical_uniform(rng);
    while (prod > cutoff) {
        ++k;
        prod *= canonical_uniform(rng);
    }
    return k;
}

} // namespace

DetectionError detection_error(const DetectionConfig& cfg, int threshold) {
    cfg.validate();
    if (threshold < 0)
        throw DomainError("detection_error: threshold must be >= 0");

    const double lam_sig = cfg.lambda_signal();
    const double lam_bg = cfg.lambda_background();
    const double p_survive = std::exp(-cfg.window / cfg.d_lifetime);

    DetectionError e;
    // bright misclassified when counts < T
    e.eps_bright = threshold == 0 ? 0.0 : poisson_cdf(threshold - 1, lam_sig + lam_bg);
    // dark: survives the window (background only), or decays at uniform v and
    // scatters the signal rate for the remaining fraction v of the window
    const double surv = 1.0 - poisson_cdf(threshold - 1, lam_bg);
    const double decayed = mean_survival_over_ramp(threshold, lam_bg, lam_sig);
    e.eps_dark = p_survive * surv + (1.0 - p_survive) * decayed;
    return e;
}

int optimal_threshold(const DetectionConfig& cfg) {
    cfg.validate();
    const double lam_b = cfg.lambda_bright();
    const int t_max = static_cast<int>(std::ceil(lam_b + 10.0 * std::sqrt(lam_b)));
    int best_t = 1;
    double best = 2.0;
    for (int t = 1; t <= t_max; ++t) {
        const auto e = detection_error(cfg, t);
        const double tot = e.total();
        if (tot < best) {
            best = tot;
            best_t = t;
        }
    }
    return best_t;
}

double DetectionMonteCarlo::eps_bright(int threshold) const {
    std::uint64_t below = 0;
    for (int k = 0; k < threshold && k < static_cast<int>(bright_hist.size()); ++k)
        below += bright_hist[static_cast<std::size_t>(k)];
    return static_cast<double>(below) / static_cast<double>(shots_bright);
}

double DetectionMonteCarlo::eps_dark(int threshold) const {
    std::uint64_t below = 0;
    for (int k = 0; k < threshold && k < static_cast<int>(dark_hist.size()); ++k)
        below += dark_hist[static_cast<std::size_t>(k)];
    return 1.0 - static_cast<double>(below) / static_cast<double>(shots_dark);
}

DetectionMonteCarlo detection_monte_carlo(const DetectionConfig& cfg,
                                          std::uint64_t shots_per_state,
                                          std::uint64_t seed) {
    cfg.validate();
    std::mt19937_64 rng(seed);

    const double lam_sig = cfg.lambda_signal();
    const double lam_bg = cfg.lambda_background();
    const double p_decay = 1.0 - std::exp(-cfg.window / cfg.d_lifetime);

    DetectionMonteCarlo mc;
    mc.shots_bright = shots_per_state;
    mc.shots_dark = shots_per_state;
    const std::size_t hist_size =
        static_cast<std::size_t>(std::ceil(lam_sig + lam_bg + 12.0 * std::sqrt(lam_sig + lam_bg)));
    mc.bright_hist.assign(hist_size, 0);
    mc.dark_hist.assign(hist_size, 0);

    auto record = [&](std::vector<std::uint64_t>& hist, int k) {
        if (static_cast<std::size_t>(k) >= hist.size()) hist.resize(static_cast<std::size_t>(k) + 1, 0);
        ++hist[static_cast<std::size_t>(k)];
    };

    for (std::uint64_t s = 0; s < shots_per_state; ++s)
        record(mc.bright_hist, sample_poisson(rng, lam_sig + lam_bg));
    for (std::uint64_t s = 0; s < shots_per_state; ++s) {
        double lam = lam_bg;
        if (canonical_uniform(rng) < p_decay)
            lam += canonical_uniform(rng) * lam_sig; // decay time uniform in the window
        record(mc.dark_hist, sample_poisson(rng, lam));
    }
    return mc;
}

double crosstalk_probability(const BeamProfile& beam, double distance,
                             double pulse_area_on_target) {
    beam.validate();
    if (distance < 0)
        throw DomainError("crosstalk_probability: negative distance");
    if (pulse_area_on_target < 0)
        throw DomainError("crosstalk_probability: negative pulse area");
    const double rel = distance / beam.width_1e;
    const double attenuation = std::exp(-rel * rel);
    const double s = std::sin(pulse_area_on_target / 2.0 * attenuation);
    return s * s;
}

double deflector_displacement(double voltage, double max_abs_voltage) {
    if (std::abs(voltage) > max_abs_voltage)
        throw DomainError("deflector_displacement: |voltage| exceeds configured range of " +
                          std::to_string(max_abs_voltage) + " V");
    // 5 mrad/kV through the effective 4.6 mm focal geometry: 23 um per kV
    return 23e-6 * (voltage / 1000.0);
}

std::vector<AddressabilityRow> addressability_report(const chain::ChainGeometry& geometry,
                                                     const BeamProfile& beam) {
    constexpr double imaging_resolution = 2e-6;
    std::vector<AddressabilityRow> rows;
    for (int i = 0; i + 1 < geometry.n_ions; ++i) {
        AddressabilityRow r;
        r.ion_a = i;
        r.ion_b = i + 1;
        r.spacing = geometry.positions[static_cast<std::size_t>(i + 1)] -
                    geometry.positions[static_cast<std::size_t>(i)];
        r.resolvable = r.spacing > imaging_resolution;
        r.pi_pulse_crosstalk = crosstalk_probability(beam, r.spacing, core::constants::pi);
        rows.push_back(r);
    }
    return rows;
}

} // namespace iontrap::apparatus
