#include "iontrap/liouville.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace iontrap::liouville {

using Eigen::VectorXcd;
using Eigen::VectorXd;

void LevelSystem::validate() const {
    if (n_levels < 2 || n_levels > 8)
        throw DomainError("LevelSystem: need 2..8 levels");
    if (static_cast<int>(energies.size()) != n_levels)
        throw DomainError("LevelSystem: energies size mismatch");
    auto check_idx = [&](int k, const char* what) {
        if (k < 0 || k >= n_levels)
            throw DomainError(std::string("LevelSystem: ") + what + " index out of range");
    };
    for (const auto& c : couplings) {
        check_idx(c.i, "coupling");
        check_idx(c.j, "coupling");
        if (c.i == c.j) throw DomainError("LevelSystem: coupling must join distinct levels");
        if (c.rabi < 0) throw DomainError("LevelSystem: negative Rabi frequency");
    }
    for (const auto& d : decays) {
        check_idx(d.from, "decay");
        check_idx(d.to, "decay");
        if (d.from == d.to)
            throw DomainError("LevelSystem: decay must join distinct levels "
                              "(use ss_dephasing for pure dephasing)");
        if (d.rate < 0) throw DomainError("LevelSystem: negative decay rate");
    }
    if (ss_dephasing < 0) throw DomainError("LevelSystem: negative dephasing rate");
    check_idx(dephase_a, "dephasing");
    check_idx(dephase_b, "dephasing");
}

MatrixXcd hamiltonian(const LevelSystem& system) {
    MatrixXcd h = MatrixXcd::Zero(system.n_levels, system.n_levels);
    for (int k = 0; k < system.n_levels; ++k)
        h(k, k) = system.energies[static_cast<std::size_t>(k)];
    for (const auto& c : system.couplings) {
        h(c.i, c.j) += c.rabi / 2.0;
        h(c.j, c.i) += c.rabi / 2.0;
    }
    return h;
}

namespace {

std::vector<MatrixXcd> jump_operators(const LevelSystem& system, bool include_dephasing) {
    std::vector<MatrixXcd> jumps;
    const int n = system.n_levels;
    for (const auto& d : system.decays) {
        if (d.rate == 0.0) continue;
        MatrixXcd c = MatrixXcd::Zero(n, n);
        c(d.to, d.from) = std::sqrt(d.rate);
        jumps.push_back(std::move(c));
    }
    if (include_dephasing && system.ss_dephasing > 0.0) {
        // projector jump on one level of the pair decoheres their coherence
        MatrixXcd c = MatrixXcd::Zero(n, n);
        c(system.dephase_b, system.dephase_b) = std::sqrt(system.ss_dephasing);
        jumps.push_back(std::move(c));
    }
    return jumps;
}

} // namespace

MatrixXcd build_liouvillian(const LevelSystem& system) {
    system.validate();
    const int n = system.n_levels;
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd h = hamiltonian(system);
    const complexd im(0.0, 1.0);

    // column-major vectorization: vec(A rho B) = (B^T (x) A) vec(rho)
    MatrixXcd L = -im * (Eigen::kroneckerProduct(id, h).eval() -
                         Eigen::kroneckerProduct(h.transpose(), id).eval());
    for (const auto& c : jump_operators(system, true)) {
        const MatrixXcd cdc = c.adjoint() * c;
        L += Eigen::kroneckerProduct(c.conjugate(), c).eval();
        L -= 0.5 * Eigen::kroneckerProduct(id, cdc).eval();
        L -= 0.5 * Eigen::kroneckerProduct(cdc.transpose(), id).eval();
    }
    return L;
}

SteadyState steady_state(const LevelSystem& system) {
    const int n = system.n_levels;
    const MatrixXcd L = build_liouvillian(system);

    Eigen::JacobiSVD<MatrixXcd> svd(L, Eigen::ComputeFullV);
    const VectorXd& sv = svd.singularValues();
    const int last = static_cast<int>(sv.size()) - 1;
    if (last >= 1 && sv[last - 1] < 1e-8 * sv[0])
        throw DomainError("steady_state: degenerate null space (decoupled level sets)");

    VectorXcd v = svd.matrixV().col(last);
    MatrixXcd rho = Eigen::Map<MatrixXcd>(v.data(), n, n); // column-major un-vec
    rho /= rho.trace();
    rho = ((rho + rho.adjoint()) / 2.0).eval();

    // dimensionless residual of the solve
    VectorXcd vec = Eigen::Map<VectorXcd>(rho.data(), n * n);
    const double resid = (L * vec).norm() / (L.norm() * vec.norm());
    if (!(resid < 1e-10))
        throw DomainError("steady_state: null-space residual " + std::to_string(resid) +
                          " exceeds 1e-10");

    SteadyState out;
    out.rho = rho;
    out.scattering_rate = 0.0;
    for (const auto& d : system.decays)
        out.scattering_rate += d.rate * rho(d.from, d.from).real();
    return out;
}

double ac_stark_shift(double delta_sigma, double omega_sigma) {
    if (delta_sigma <= 0)
        throw DomainError("ac_stark_shift: dressing detuning must be positive (blue)");
    return (std::sqrt(delta_sigma * delta_sigma + omega_sigma * omega_sigma) - delta_sigma) / 2.0;
}

double omega_sigma_for_stark_shift(double delta_sigma, double target_delta) {
    if (delta_sigma <= 0 || target_delta <= 0)
        throw DomainError("omega_sigma_for_stark_shift: detuning and shift must be positive");
    return 2.0 * std::sqrt(target_delta * (delta_sigma + target_delta));
}

LevelSystem eit_lambda_system(const EitBeams& beams, const core::SpeciesConstants& species) {
    // levels: 0 = S(-1/2), 1 = S(+1/2), 2 = P(+1/2); dark at delta_pi = delta_sigma
    LevelSystem s;
    s.n_levels = 3;
    s.energies = {0.0, beams.delta_pi - beams.delta_sigma, -beams.delta_sigma};
    s.couplings = {{0, 2, beams.omega_sigma}, {1, 2, beams.omega_pi}};
    const double g = species.gamma_p;
    s.decays = {{2, 0, 2.0 * g / 3.0},   // sigma photon, spin flip
                {2, 1, g / 3.0}};        // pi photon, same m
    s.ss_dephasing = beams.ss_dephasing;
    s.dephase_a = 0;
    s.dephase_b = 1;
    return s;
}

LevelSystem eit_zeeman_system(const EitBeams& beams, const core::SpeciesConstants& species) {
    // levels: 0 = S(-1/2), 1 = S(+1/2), 2 = P(-1/2), 3 = P(+1/2).
    // Beam detunings are quoted against their own Zeeman-shifted lines, so the
    // second pi leg S(-1/2)->P(-1/2) picks up the splitting difference zS - zP.
    const double z_s = species.lande_s * core::constants::bohr_magneton * beams.b_field /
                       core::constants::hbar;
    const double z_p = species.lande_p * core::constants::bohr_magneton * beams.b_field /
                       core::constants::hbar;
    const double delta_pi_1 = beams.delta_pi - (z_s - z_p);

    LevelSystem s;
    s.n_levels = 4;
    s.energies = {0.0, beams.delta_pi - beams.delta_sigma, -delta_pi_1, -beams.delta_sigma};
    s.couplings = {{0, 3, beams.omega_sigma}, {1, 3, beams.omega_pi}, {0, 2, beams.omega_pi}};
    const double g = species.gamma_p;
    s.decays = {{2, 0, g / 3.0},          // P- -> S-  (pi)
                {2, 1, 2.0 * g / 3.0},    // P- -> S+  (sigma)
                {3, 0, 2.0 * g / 3.0},    // P+ -> S-  (sigma)
                {3, 1, g / 3.0}};         // P+ -> S+  (pi)
    s.ss_dephasing = beams.ss_dephasing;
    s.dephase_a = 0;
    s.dephase_b = 1;
    return s;
}

ProbeSpectrum probe_spectrum(const EitBeams& beams, const core::SpeciesConstants& species,
                             const std::vector<double>& delta_pi_grid,
                             bool use_zeeman_manifold) {
    ProbeSpectrum out;
    out.perturbative = beams.omega_pi <= beams.omega_sigma / 10.0 * (1.0 + 1e-12);
    out.points.reserve(delta_pi_grid.size());
    for (double dp : delta_pi_grid) {
        EitBeams b = beams;
        b.delta_pi = dp;
        const LevelSystem sys = use_zeeman_manifold ? eit_zeeman_system(b, species)
                                                    : eit_lambda_system(b, species);
        out.points.push_back({dp, steady_state(sys).scattering_rate});
    }
    return out;
}

} // namespace iontrap::liouville
