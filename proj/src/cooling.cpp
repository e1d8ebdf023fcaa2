#include "iontrap/cooling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "iontrap/constants.hpp"

namespace iontrap::cooling {

double doppler_limit(double gamma, double nu) {
    if (gamma <= 0 || nu <= 0)
        throw DomainError("doppler_limit: rates must be positive");
    return std::max(0.0, gamma / (2.0 * nu) - 0.5);
}

namespace {

// Lorentzian excitation-rate profile of the quench-broadened transition
double rate_profile(double omega, double gamma_eff, double x) {
    const double hw = gamma_eff / 2.0;
    return (omega * omega / 2.0) * gamma_eff / (hw * hw + x * x);
}

} // namespace

std::pair<double, double> sideband_cooling_rates(const SidebandCoolingParams& p) {
    p.validate();
    const double e2 = p.eta * p.eta;
    const double w_red = rate_profile(p.omega, p.gamma_eff, p.detuning + p.nu);
    const double w_blue = rate_profile(p.omega, p.gamma_eff, p.detuning - p.nu);
    const double w_carrier = rate_profile(p.omega, p.gamma_eff, p.detuning);
    const double a_minus = e2 * (w_red + p.alpha * w_carrier);
    const double a_plus = e2 * (w_blue + p.alpha * w_carrier);
    return {a_minus, a_plus};
}

CoolingTrajectory sideband_cooling_simulate(const SidebandCoolingParams& p,
                                            const FockDistribution& initial,
                                            double heating_rate, double t_end,
                                            int n_samples) {
    if (heating_rate < 0)
        throw DomainError("sideband_cooling_simulate: negative heating rate");
    if (t_end <= 0)
        throw DomainError("sideband_cooling_simulate: t_end must be positive");
    if (n_samples < 2)
        throw DomainError("sideband_cooling_simulate: need at least 2 samples");

    const auto [a_minus, a_plus] = sideband_cooling_rates(p);
    const double up = a_plus + heating_rate;

    CoolingTrajectory traj;
    traj.a_minus = a_minus;
    traj.a_plus = a_plus;
    traj.has_steady_state = a_minus > up;
    traj.nbar_ss = traj.has_steady_state ? up / (a_minus - up)
                                         : std::numeric_limits<double>::infinity();

    // birth-death ladder: dp_n/dt = A-[(n+1)p_{n+1} - n p_n] + up[n p_{n-1} - (n+1) p_n]
    std::vector<double> pop = initial.populations();
    const std::size_t nm = pop.size();
    auto deriv = [&](const std::vector<double>& q, std::vector<double>& dq) {
        for (std::size_t n = 0; n < nm; ++n) {
            const double dn = static_cast<double>(n);
            double d = -(a_minus * dn + up * (dn + 1.0)) * q[n];
            if (n + 1 < nm) d += a_minus * (dn + 1.0) * q[n + 1];
            if (n >= 1) d += up * dn * q[n - 1];
            dq[n] = d;
        }
    };

    // fixed-step RK4; the stiffest rate is ~(A- + up) n_max
    const double rate_scale = (a_minus + up) * static_cast<double>(nm);
    const double dt_stable = 0.25 / rate_scale;
    const int steps_per_sample =
        std::max(1, static_cast<int>(std::ceil((t_end / (n_samples - 1)) / dt_stable)));
    const double dt = (t_end / (n_samples - 1)) / steps_per_sample;

    std::vector<double> k1(nm), k2(nm), k3(nm), k4(nm), tmp(nm);
    auto push_sample = [&](double t) {
        double nbar = 0.0, norm = 0.0;
        for (std::size_t n = 0; n < nm; ++n) {
            nbar += static_cast<double>(n) * pop[n];
            norm += pop[n];
        }
        traj.times.push_back(t);
        traj.nbar.push_back(nbar / norm);
        traj.p0.push_back(pop[0] / norm);
    };

    push_sample(0.0);
    double t = 0.0;
    for (int s = 1; s < n_samples; ++s) {
        for (int k = 0; k < steps_per_sample; ++k) {
            deriv(pop, k1);
            for (std::size_t n = 0; n < nm; ++n) tmp[n] = pop[n] + 0.5 * dt * k1[n];
            deriv(tmp, k2);
            for (std::size_t n = 0; n < nm; ++n) tmp[n] = pop[n] + 0.5 * dt * k2[n];
            deriv(tmp, k3);
            for (std::size_t n = 0; n < nm; ++n) tmp[n] = pop[n] + dt * k3[n];
            deriv(tmp, k4);
            for (std::size_t n = 0; n < nm; ++n)
                pop[n] += dt / 6.0 * (k1[n] + 2.0 * k2[n] + 2.0 * k3[n] + k4[n]);
            t += dt;
        }
        push_sample(t);
    }
    return traj;
}

EitCoolingResult eit_cooling_steady_state(const liouville::EitBeams& beams,
                                          const core::SpeciesConstants& species,
                                          double nu_hz, double eta,
                                          bool use_zeeman_manifold) {
    if (nu_hz <= 0)
        throw DomainError("eit_cooling_steady_state: mode frequency must be positive");
    if (eta <= 0 || eta >= 1)
        throw DomainError("eit_cooling_steady_state: eta must lie in (0,1)");

    const double nu = core::constants::two_pi * nu_hz;
    // S(x) = scattering rate at two-photon detuning x = delta_pi - delta_sigma
    const std::vector<double> grid = {beams.delta_sigma - nu, beams.delta_sigma + nu};
    const auto spectrum = liouville::probe_spectrum(beams, species, grid, use_zeeman_manifold);
    const double s_minus = spectrum.points[0].scattering_rate;
    const double s_plus = spectrum.points[1].scattering_rate;

    EitCoolingResult r;
    r.s_minus = s_minus;
    r.s_plus = s_plus;
    r.perturbative = spectrum.perturbative;
    r.cooling = s_plus > s_minus;
    r.rate_scale = eta * eta * (s_plus - s_minus);
    r.nbar_ss = r.cooling ? s_minus / (s_plus - s_minus)
                          : std::numeric_limits<double>::infinity();
    return r;
}

double heating_evolution(double nbar0, double rate_phonons_per_s, double t) {
    if (rate_phonons_per_s < 0)
        throw DomainError("heating_evolution: negative heating rate");
    if (nbar0 < 0)
        throw DomainError("heating_evolution: negative initial occupation");
    return nbar0 + rate_phonons_per_s * t;
}

} // namespace iontrap::cooling
