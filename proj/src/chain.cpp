#include "iontrap/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>

namespace iontrap::chain {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// grad_i U = u_i - sum_{j<i} 1/(u_i-u_j)^2 + sum_{j>i} 1/(u_j-u_i)^2
VectorXd gradient(const VectorXd& u) {
    const int n = static_cast<int>(u.size());
    VectorXd g = u;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = u[i] - u[j];
            g[i] += (d > 0 ? -1.0 : 1.0) / (d * d);
        }
    return g;
}

// Hessian of U: H_ii = 1 + 2 sum_{j!=i} 1/|u_i-u_j|^3, H_ij = -2/|u_i-u_j|^3
MatrixXd hessian(const VectorXd& u) {
    const int n = static_cast<int>(u.size());
    MatrixXd h = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double diag = 1.0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = std::abs(u[i] - u[j]);
            const double c = 2.0 / (d * d * d);
            diag += c;
            h(i, j) = -c;
        }
        h(i, i) = diag;
    }
    return h;
}

double potential(const VectorXd& u) {
    const int n = static_cast<int>(u.size());
    double e = 0.5 * u.squaredNorm();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            e += 1.0 / std::abs(u[i] - u[j]);
    return e;
}

} // namespace

std::vector<double> potential_gradient(const std::vector<double>& u) {
    VectorXd v = Eigen::Map<const VectorXd>(u.data(), static_cast<Eigen::Index>(u.size()));
    VectorXd g = gradient(v);
    return std::vector<double>(g.data(), g.data() + g.size());
}

std::vector<double> equilibrium_positions(int n_ions) {
    if (n_ions < 1 || n_ions > 20)
        throw DomainError("equilibrium_positions: n_ions must lie in [1,20]");
    if (n_ions == 1) return {0.0};

    // equally spaced start; the 1.02 N^0.56 span is a serviceable first guess
    // for the outermost ions over this N range.
    const double span = 1.02 * std::pow(static_cast<double>(n_ions), 0.56);
    VectorXd u(n_ions);
    for (int i = 0; i < n_ions; ++i)
        u[i] = -span + 2.0 * span * static_cast<double>(i) / (n_ions - 1);

    // damped Newton with step halving on the potential value
    for (int iter = 0; iter < 200; ++iter) {
        const VectorXd g = gradient(u);
        if (g.norm() < 1e-12) break;
        const MatrixXd h = hessian(u);
        VectorXd step = h.ldlt().solve(g);
        double lambda = 1.0;
        const double e0 = potential(u);
        for (int k = 0; k < 40; ++k) {
            VectorXd trial = u - lambda * step;
            // ordering must be preserved or the Coulomb terms blow up
            bool ordered = true;
            for (int i = 0; i + 1 < n_ions; ++i)
                if (trial[i + 1] <= trial[i]) { ordered = false; break; }
            if (ordered && potential(trial) <= e0) {
                u = trial;
                break;
            }
            lambda *= 0.5;
        }
    }

    if (gradient(u).norm() >= 1e-10)
        throw DomainError("equilibrium_positions: Newton iteration failed to converge for N=" +
                          std::to_string(n_ions));

    std::vector<double> out(u.data(), u.data() + u.size());
    std::sort(out.begin(), out.end());
    return out;
}

double length_scale(const SpeciesConstants& species, double nu_com_hz) {
    if (nu_com_hz <= 0)
        throw DomainError("length_scale: COM frequency must be positive");
    const double omega = core::constants::two_pi * nu_com_hz;
    const double q2 = species.charge * species.charge;
    return std::cbrt(q2 / (4.0 * core::constants::pi * core::constants::epsilon0 *
                           species.mass * omega * omega));
}

ChainGeometry make_chain(const SpeciesConstants& species, int n_ions, double nu_com_hz) {
    ChainGeometry g;
    g.n_ions = n_ions;
    g.com_frequency = nu_com_hz;
    g.length_scale = length_scale(species, nu_com_hz);
    g.dimensionless_positions = equilibrium_positions(n_ions);
    g.positions.reserve(g.dimensionless_positions.size());
    for (double u : g.dimensionless_positions)
        g.positions.push_back(u * g.length_scale);
    return g;
}

double min_spacing(int n_ions, double nu_com_hz, const SpeciesConstants& species) {
    if (n_ions < 2)
        throw DomainError("min_spacing: need at least two ions");
    const auto u = equilibrium_positions(n_ions);
    double gap = u[1] - u[0];
    for (std::size_t i = 1; i + 1 < u.size(); ++i)
        gap = std::min(gap, u[i + 1] - u[i]);
    return gap * length_scale(species, nu_com_hz);
}

double max_com_frequency(int n_ions, double d_min, const SpeciesConstants& species) {
    if (d_min <= 0)
        throw DomainError("max_com_frequency: minimum distance must be positive");
    // spacing is monotone decreasing in nu (l ~ nu^(-2/3)); bisect on it
    double lo = 1e3, hi = 100e6;
    if (min_spacing(n_ions, lo, species) < d_min)
        throw DomainError("max_com_frequency: constraint unreachable even at 1 kHz");
    if (min_spacing(n_ions, hi, species) > d_min)
        throw DomainError("max_com_frequency: constraint slack even at 100 MHz");
    while ((hi - lo) / hi > 1e-9) {
        const double mid = 0.5 * (lo + hi);
        if (min_spacing(n_ions, mid, species) >= d_min)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

ModeSpectrum axial_modes(const ChainGeometry& geometry) {
    const auto& u = geometry.dimensionless_positions;
    const int n = geometry.n_ions;
    if (static_cast<int>(u.size()) != n || n < 1)
        throw DomainError("axial_modes: geometry not initialized");
    VectorXd v = Eigen::Map<const VectorXd>(u.data(), n);
    if (n > 1 && gradient(v).norm() >= 1e-8)
        throw DomainError("axial_modes: input geometry is not an equilibrium");

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(hessian(v));
    if (es.info() != Eigen::Success)
        throw DomainError("axial_modes: eigendecomposition failed");

    ModeSpectrum spec;
    spec.frequencies.reserve(static_cast<std::size_t>(n));
    spec.eigenvectors.assign(static_cast<std::size_t>(n), std::vector<double>(static_cast<std::size_t>(n), 0.0));
    for (int m = 0; m < n; ++m) {
        spec.frequencies.push_back(geometry.com_frequency * std::sqrt(es.eigenvalues()[m]));
        VectorXd vec = es.eigenvectors().col(m);
        // fix the sign convention: first nonzero component positive
        for (int i = 0; i < n; ++i) {
            if (std::abs(vec[i]) > 1e-12) {
                if (vec[i] < 0) vec = -vec;
                break;
            }
        }
        for (int i = 0; i < n; ++i)
            spec.eigenvectors[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] = vec[i];
    }
    return spec;
}

} // namespace iontrap::chain
