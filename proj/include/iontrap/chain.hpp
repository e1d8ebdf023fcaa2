#pragma once

#include <vector>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::chain {

using core::SpeciesConstants;

/// Equilibrium structure of N ions in a harmonic axial well, in both the
/// dimensionless frame (lengths in units of the Coulomb length scale l) and
/// laboratory meters.
struct ChainGeometry {
    int n_ions = 0;
    double com_frequency = 0.0;                 // Hz, axial trap frequency
    double length_scale = 0.0;                  // m
    std::vector<double> dimensionless_positions; // u_i, ascending
    std::vector<double> positions;               // m, ascending
};

/// Axial normal modes: frequencies ascending, eigenvectors orthonormal
/// (column j of eigenvectors = participation of each ion in mode j).
struct ModeSpectrum {
    std::vector<double> frequencies;             // Hz
    std::vector<std::vector<double>> eigenvectors; // [mode][ion]
};

/// Stationary point of U(u) = sum u_i^2/2 + sum_{i<j} 1/|u_i - u_j|, found by
/// damped Newton iteration from an equally spaced guess; |grad U| < 1e-10.
std::vector<double> equilibrium_positions(int n_ions);

/// Gradient of the dimensionless potential at u (exposed for verification).
std::vector<double> potential_gradient(const std::vector<double>& u);

/// Coulomb length scale l = (q^2 / (4 pi eps0 m (2 pi nu)^2))^(1/3).
double length_scale(const SpeciesConstants& species, double nu_com_hz);

/// Full geometry (equilibria + meters) for N ions at the given COM frequency.
ChainGeometry make_chain(const SpeciesConstants& species, int n_ions, double nu_com_hz);

/// Smallest adjacent spacing of the equilibrium chain, in meters.
double min_spacing(int n_ions, double nu_com_hz, const SpeciesConstants& species);

/// Largest COM frequency keeping adjacent ions at least d_min apart; inverse
/// of min_spacing by bisection on [1 kHz, 100 MHz] to 1e-6 relative.
double max_com_frequency(int n_ions, double d_min, const SpeciesConstants& species);

/// Axial modes from the eigendecomposition of the dimensionless Hessian of U
/// at equilibrium: frequencies = nu_com * sqrt(eigenvalues); the lowest mode
/// is the center-of-mass mode at nu_com with uniform eigenvector.
ModeSpectrum axial_modes(const ChainGeometry& geometry);

} // namespace iontrap::chain
