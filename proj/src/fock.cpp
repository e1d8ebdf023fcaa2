#include "iontrap/fock.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace iontrap::core {

FockDistribution::FockDistribution(std::vector<double> populations) : p_(std::move(populations)) {
    if (p_.empty())
        throw DomainError("FockDistribution: empty population vector");
    for (double v : p_)
        if (v < 0.0 || !std::isfinite(v))
            throw DomainError("FockDistribution: populations must be finite and >= 0");
    renormalize();
}

double FockDistribution::nbar() const {
    double acc = 0.0;
    for (std::size_t n = 0; n < p_.size(); ++n)
        acc += static_cast<double>(n) * p_[n];
    return acc;
}

double FockDistribution::norm() const {
    return std::accumulate(p_.begin(), p_.end(), 0.0);
}

void FockDistribution::renormalize() {
    const double s = norm();
    if (s <= 0.0)
        throw DomainError("FockDistribution: cannot normalize zero distribution");
    for (double& v : p_) v /= s;
}

int default_n_max(double nbar) {
    // thermal tail (nbar/(nbar+1))^(n_max+1) ~ e^(-n_max/(nbar+1)); 22 e-folds
    // keeps it below 1e-9 with margin.
    const double needed = 22.0 * (nbar + 1.0);
    return std::max(60, static_cast<int>(std::ceil(needed)));
}

FockDistribution thermal_distribution(double nbar, int n_max) {
    if (nbar < 0.0 || !std::isfinite(nbar))
        throw DomainError("thermal_distribution: nbar must be finite and >= 0");
    if (n_max < 0)
        throw DomainError("thermal_distribution: n_max must be >= 0");

    std::vector<double> p(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (nbar == 0.0) {
        p[0] = 1.0;
        return FockDistribution(std::move(p));
    }

    // p_n = r^n (1-r) with r = nbar/(nbar+1); truncated tail is r^(n_max+1)
    const double r = nbar / (nbar + 1.0);
    const double tail = std::exp(static_cast<double>(n_max + 1) * std::log(r));
    if (tail > 1e-9)
        throw TruncationError("thermal_distribution: n_max=" + std::to_string(n_max) +
                              " leaves a tail of " + std::to_string(tail) +
                              " (> 1e-9) at nbar=" + std::to_string(nbar));

    double v = 1.0 - r;
    for (std::size_t n = 0; n < p.size(); ++n) {
        p[n] = v;
        v *= r;
    }
    return FockDistribution(std::move(p));
}

FockDistribution thermal_distribution(double nbar) {
    return thermal_distribution(nbar, default_n_max(nbar));
}

FockDistribution fock_state(int n, int n_max) {
    if (n < 0 || n > n_max)
        throw DomainError("fock_state: need 0 <= n <= n_max");
    std::vector<double> p(static_cast<std::size_t>(n_max) + 1, 0.0);
    p[static_cast<std::size_t>(n)] = 1.0;
    return FockDistribution(std::move(p));
}

} // namespace iontrap::core
