#include <doctest.h>

#include <cmath>

#include "iontrap/chain.hpp"
#include "oracle_helpers.hpp"

using namespace iontrap;

TEST_CASE("two-ion equilibrium is the analytic +-(1/4)^(1/3)") {
    const auto u = chain::equilibrium_positions(2);
    const double exact = std::cbrt(0.25);
    REQUIRE(u.size() == 2);
    CHECK(u[0] == doctest::Approx(-exact).epsilon(1e-12));
    CHECK(u[1] == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("equilibria match an independent gradient-descent minimization") {
    for (int n = 2; n <= 8; ++n) {
        CAPTURE(n);
        const auto newton = chain::equilibrium_positions(n);
        const auto descent = oracle::bruteforce_equilibrium(n);
        REQUIRE(newton.size() == static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            CHECK(std::abs(newton[static_cast<std::size_t>(i)] -
                           descent[static_cast<std::size_t>(i)]) < 1e-9);
    }
}

TEST_CASE("equilibria are stationary, ordered and reflection-symmetric") {
    for (int n : {3, 5, 8, 10}) {
        CAPTURE(n);
        const auto u = chain::equilibrium_positions(n);
        const auto g = chain::potential_gradient(u);
        for (double gi : g) CHECK(std::abs(gi) < 1e-10);
        for (std::size_t i = 1; i < u.size(); ++i) CHECK(u[i] > u[i - 1]);
        for (std::size_t i = 0; i < u.size(); ++i)
            CHECK(std::abs(u[i] + u[u.size() - 1 - i]) < 1e-10);
        // spacing shrinks toward the chain center
        if (n >= 4) {
            const double edge = u[1] - u[0];
            const double mid = u[u.size() / 2] - u[u.size() / 2 - 1];
            CHECK(mid < edge);
        }
    }
}

TEST_CASE("five-ion positions match the published dimensionless values") {
    const auto u = chain::equilibrium_positions(5);
    CHECK(u[0] == doctest::Approx(-1.7429032118739349).epsilon(1e-10));
    CHECK(u[1] == doctest::Approx(-0.82210075656808557).epsilon(1e-10));
    CHECK(std::abs(u[2]) < 1e-10);
    CHECK(u[3] == doctest::Approx(0.82210075656808557).epsilon(1e-10));
    CHECK(u[4] == doctest::Approx(1.7429032118739349).epsilon(1e-10));
}

TEST_CASE("length scale follows the (q^2 / 4 pi eps0 m w^2)^(1/3) law") {
    const auto ca = core::calcium_40();
    CHECK(chain::length_scale(ca, 700e3) ==
          doctest::Approx(5.643344136746711e-6).epsilon(1e-12));
    CHECK(chain::length_scale(ca, 1e6) ==
          doctest::Approx(4.4490630608373847e-6).epsilon(1e-12));
    // l ~ w^(-2/3)
    CHECK(chain::length_scale(ca, 1e6) / chain::length_scale(ca, 4e6) ==
          doctest::Approx(std::pow(4.0, 2.0 / 3.0)).epsilon(1e-12));
    CHECK_THROWS_AS(chain::length_scale(ca, 0.0), DomainError);
}

TEST_CASE("axial mode spectrum: COM at the trap frequency, known ratios") {
    const auto ca = core::calcium_40();
    const auto geom = chain::make_chain(ca, 3, 1e6);
    const auto modes = chain::axial_modes(geom);
    REQUIRE(modes.frequencies.size() == 3);
    CHECK(modes.frequencies[0] == doctest::Approx(1e6).epsilon(1e-10));
    CHECK(modes.frequencies[1] / modes.frequencies[0] ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-10));
    CHECK(modes.frequencies[2] / modes.frequencies[0] ==
          doctest::Approx(2.4083189157584592).epsilon(1e-10));

    SUBCASE("COM eigenvector is uniform") {
        const auto& com = modes.eigenvectors[0];
        for (double c : com) CHECK(c == doctest::Approx(com[0]).epsilon(1e-10));
    }
    SUBCASE("eigenvectors are orthonormal") {
        for (std::size_t a = 0; a < 3; ++a)
            for (std::size_t b = 0; b < 3; ++b) {
                double dot = 0.0;
                for (std::size_t i = 0; i < 3; ++i)
                    dot += modes.eigenvectors[a][i] * modes.eigenvectors[b][i];
                CHECK(std::abs(dot - (a == b ? 1.0 : 0.0)) < 1e-10);
            }
    }
    SUBCASE("five-ion ratios extend the ladder") {
        const auto m5 = chain::axial_modes(chain::make_chain(ca, 5, 1e6));
        CHECK(m5.frequencies[3] / m5.frequencies[0] ==
              doctest::Approx(3.0548573352556323).epsilon(1e-10));
        CHECK(m5.frequencies[4] / m5.frequencies[0] ==
              doctest::Approx(3.6708087962271629).epsilon(1e-10));
    }
}

TEST_CASE("axial_modes rejects a geometry that is not at equilibrium") {
    const auto ca = core::calcium_40();
    auto geom = chain::make_chain(ca, 3, 1e6);
    geom.dimensionless_positions[1] += 0.05;
    CHECK_THROWS_AS(chain::axial_modes(geom), DomainError);
}

TEST_CASE("spacing and its inverse are consistent") {
    const auto ca = core::calcium_40();
    const double spacing4 = chain::min_spacing(4, 700e3, ca);
    CHECK(spacing4 == doctest::Approx(5.1284372990333381e-6).epsilon(1e-10));
    CHECK(chain::min_spacing(2, 700e3, ca) ==
          doctest::Approx(7.1101680696879926e-6).epsilon(1e-10));

    SUBCASE("max_com_frequency inverts min_spacing") {
        const double f = chain::max_com_frequency(4, spacing4, ca);
        CHECK(f == doctest::Approx(700e3).epsilon(1e-6));
        // round trip the other way
        CHECK(chain::min_spacing(4, chain::max_com_frequency(4, 5e-6, ca), ca) ==
              doctest::Approx(5e-6).epsilon(1e-6));
    }
    SUBCASE("tighter spacing demands a weaker trap") {
        CHECK(chain::max_com_frequency(4, 6e-6, ca) < chain::max_com_frequency(4, 5e-6, ca));
        CHECK(chain::max_com_frequency(6, 5e-6, ca) < chain::max_com_frequency(4, 5e-6, ca));
    }
    SUBCASE("unreachable spacings raise a domain error") {
        CHECK_THROWS_AS(chain::max_com_frequency(4, 1.0, ca), DomainError);
        CHECK_THROWS_AS(chain::max_com_frequency(4, -5e-6, ca), DomainError);
    }
}

TEST_CASE("make_chain maps dimensionless positions to meters") {
    const auto ca = core::calcium_40();
    const auto geom = chain::make_chain(ca, 4, 700e3);
    REQUIRE(geom.positions.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(geom.positions[i] ==
              doctest::Approx(geom.dimensionless_positions[i] * geom.length_scale)
                  .epsilon(1e-14));
    CHECK_THROWS_AS(chain::make_chain(ca, 0, 700e3), DomainError);
    CHECK_THROWS_AS(chain::make_chain(ca, 4, -1.0), DomainError);
}
