#pragma once

#include <cmath>
#include <string>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::core {

/// One motional normal mode addressed by a laser.
struct MotionalMode {
    double frequency;   // Hz
    double lamb_dicke;  // dimensionless eta
    std::string label;

    void validate() const {
        if (frequency <= 0)
            throw DomainError("MotionalMode: frequency must be positive");
        if (lamb_dicke <= 0 || lamb_dicke >= 1)
            throw DomainError("MotionalMode: Lamb-Dicke parameter must lie in (0,1)");
    }
};

/// Lamb-Dicke parameter eta = k cos(theta) sqrt(hbar / (2 m omega)) with
/// k = 2pi/lambda and omega = 2pi nu. theta is the angle between the beam
/// and the mode axis; eta -> 0 at theta = pi/2.
inline double lamb_dicke_parameter(const SpeciesConstants& species, double lambda,
                                   double projection_angle, double nu_hz) {
    if (nu_hz <= 0)
        throw DomainError("lamb_dicke_parameter: mode frequency must be positive");
    if (lambda <= 0)
        throw DomainError("lamb_dicke_parameter: wavelength must be positive");
    const double k = constants::two_pi / lambda;
    const double omega = constants::two_pi * nu_hz;
    return k * std::cos(projection_angle) *
           std::sqrt(constants::hbar / (2.0 * species.mass * omega));
}

} // namespace iontrap::core
