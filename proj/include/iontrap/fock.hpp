#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "iontrap/errors.hpp"

namespace iontrap::core {

/// Populations over harmonic-oscillator number states |0..n_max> of one
/// motional mode. Always kept normalized to 1 within 1e-12.
class FockDistribution {
public:
    FockDistribution() = default;

    /// Takes ownership of raw populations and renormalizes them.
    explicit FockDistribution(std::vector<double> populations);

    int n_max() const { return static_cast<int>(p_.size()) - 1; }
    const std::vector<double>& populations() const { return p_; }
    double p(int n) const { return p_.at(static_cast<std::size_t>(n)); }

    /// Mean occupation  n_bar = sum n p_n.
    double nbar() const;

    /// Ground-state occupation p_0.
    double p0() const { return p_.empty() ? 0.0 : p_.front(); }

    double norm() const;
    void renormalize();

private:
    std::vector<double> p_;
};

/// Smallest truncation whose thermal tail (nbar/(nbar+1))^(n_max+1) stays
/// below 1e-9: n_max grows like 22*(nbar+1), floored at 60.
int default_n_max(double nbar);

/// Thermal (geometric) distribution p_n = nbar^n / (nbar+1)^(n+1), truncated
/// at n_max and renormalized. Throws TruncationError when the dropped tail
/// exceeds 1e-9 of the distribution.
FockDistribution thermal_distribution(double nbar, int n_max);
FockDistribution thermal_distribution(double nbar); // default_n_max(nbar)

/// Point distribution |n><n|.
FockDistribution fock_state(int n, int n_max);

} // namespace iontrap::core
