#pragma once

#include "iontrap/errors.hpp"

namespace iontrap::core {

/// Physical constants, CODATA 2018 exact/recommended values. Kept in one
/// place so every derived number in the project is reproducible bit for bit.
namespace constants {
inline constexpr double hbar = 1.054571817e-34;          // J s (exact h / 2pi)
inline constexpr double elementary_charge = 1.602176634e-19; // C (exact)
inline constexpr double epsilon0 = 8.8541878128e-12;     // F/m
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
inline constexpr double electron_mass = 9.1093837015e-31;     // kg
inline constexpr double bohr_magneton = 9.2740100783e-24;     // J/T
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;
} // namespace constants

/// Atomic data for the simulated ion species.
struct SpeciesConstants {
    double mass;              // kg
    double charge;            // C
    double lambda_qubit;      // m, narrow quadrupole qubit transition
    double lambda_dipole;     // m, main dipole cooling/detection transition
    double gamma_p;           // rad/s, P-level decay rate
    double tau_d;             // s, metastable D-level lifetime
    double branching_sp_dp;   // P -> S vs P -> D branching ratio (> 1)
    double lande_s;           // g factor of the ground S level
    double lande_p;           // g factor of the P level

    void validate() const {
        if (mass <= 0 || charge <= 0 || lambda_qubit <= 0 || lambda_dipole <= 0 ||
            gamma_p <= 0 || tau_d <= 0 || lande_s <= 0 || lande_p <= 0)
            throw DomainError("SpeciesConstants: all fields must be strictly positive");
        if (branching_sp_dp <= 1.0)
            throw DomainError("SpeciesConstants: branching ratio must exceed 1");
    }
};

/// 40Ca+ as used throughout: 729 nm S-D qubit, 397 nm S-P dipole line,
/// Gamma_P = 2pi x 20 MHz, D lifetime ~1 s, 16:1 branching.
inline SpeciesConstants calcium_40() {
    SpeciesConstants s;
    // neutral 40Ca atom mass minus one electron (the ion is singly charged)
    s.mass = 39.962590863 * constants::atomic_mass_unit - constants::electron_mass;
    s.charge = constants::elementary_charge;
    s.lambda_qubit = 729e-9;
    s.lambda_dipole = 397e-9;
    s.gamma_p = constants::two_pi * 20e6;
    s.tau_d = 1.0;
    s.branching_sp_dp = 16.0;
    s.lande_s = 2.002;
    s.lande_p = 2.0 / 3.0;
    return s;
}

} // namespace iontrap::core
