#include <doctest.h>

#include <cmath>

#include "iontrap/constants.hpp"
#include "iontrap/fock.hpp"
#include "iontrap/motion.hpp"

using namespace iontrap;

TEST_CASE("calcium constants are the CODATA-composed values") {
    const auto ca = core::calcium_40();
    ca.validate();
    // 40Ca mass minus one electron (the ion), in kg
    CHECK(ca.mass == doctest::Approx(6.635853239219356e-26).epsilon(1e-12));
    CHECK(ca.lambda_qubit == doctest::Approx(729e-9));
    CHECK(ca.lambda_dipole == doctest::Approx(397e-9));
    CHECK(ca.gamma_p == doctest::Approx(2.0 * core::constants::pi * 20e6));
    CHECK(ca.tau_d == doctest::Approx(1.0));
}

TEST_CASE("Lamb-Dicke parameter matches the defining formula") {
    const auto ca = core::calcium_40();
    // eta = (2pi/lambda) cos(theta) sqrt(hbar / (2 m 2pi nu))
    CHECK(core::lamb_dicke_parameter(ca, 729e-9, 0.0, 4.51e6) ==
          doctest::Approx(0.045640335818469704).epsilon(1e-12));
    CHECK(core::lamb_dicke_parameter(ca, 729e-9, 0.0, 700e3) ==
          doctest::Approx(0.1158478777402154).epsilon(1e-12));

    SUBCASE("scales as 1/sqrt(frequency)") {
        const double e1 = core::lamb_dicke_parameter(ca, 729e-9, 0.0, 1e6);
        const double e4 = core::lamb_dicke_parameter(ca, 729e-9, 0.0, 4e6);
        CHECK(e1 / e4 == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("vanishes at perpendicular incidence") {
        const double perp =
            core::lamb_dicke_parameter(ca, 729e-9, core::constants::pi / 2, 1e6);
        CHECK(std::abs(perp) < 1e-17);
    }
    SUBCASE("rejects nonphysical arguments") {
        CHECK_THROWS_AS(core::lamb_dicke_parameter(ca, 729e-9, 0.0, -1.0), DomainError);
        CHECK_THROWS_AS(core::lamb_dicke_parameter(ca, 0.0, 0.0, 1e6), DomainError);
    }
}

TEST_CASE("thermal distribution is geometric with the requested mean") {
    for (double nbar : {0.01, 0.1, 1.0, 5.0, 20.0}) {
        CAPTURE(nbar);
        const auto dist = core::thermal_distribution(nbar);
        CHECK(dist.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(dist.nbar() == doctest::Approx(nbar).epsilon(1e-8));
        CHECK(dist.p0() == doctest::Approx(1.0 / (nbar + 1.0)).epsilon(1e-9));
        // successive ratio is nbar/(nbar+1) everywhere
        const double r = nbar / (nbar + 1.0);
        CHECK(dist.p(5) / dist.p(4) == doctest::Approx(r).epsilon(1e-12));
    }

    SUBCASE("nbar = 0 collapses to the ground state") {
        const auto dist = core::thermal_distribution(0.0);
        CHECK(dist.p0() == doctest::Approx(1.0));
        CHECK(dist.nbar() == doctest::Approx(0.0));
    }
    SUBCASE("truncating too hard is an error, not a silent bias") {
        CHECK_THROWS_AS(core::thermal_distribution(5.0, 10), TruncationError);
        CHECK_NOTHROW(core::thermal_distribution(5.0, core::default_n_max(5.0)));
    }
    SUBCASE("default truncation keeps the dropped tail below 1e-9") {
        for (double nbar : {0.5, 2.0, 8.0}) {
            const int n_max = core::default_n_max(nbar);
            const double tail = std::pow(nbar / (nbar + 1.0), n_max + 1);
            CHECK(tail < 1e-9);
        }
    }
}

TEST_CASE("Fock state is a point distribution") {
    const auto f3 = core::fock_state(3, 10);
    CHECK(f3.p(3) == doctest::Approx(1.0));
    CHECK(f3.p(2) == doctest::Approx(0.0));
    CHECK(f3.nbar() == doctest::Approx(3.0));
    CHECK_THROWS_AS(core::fock_state(11, 10), DomainError);
    CHECK_THROWS_AS(core::fock_state(-1, 10), DomainError);
}

TEST_CASE("FockDistribution validates and renormalizes") {
    core::FockDistribution d({2.0, 1.0, 1.0});
    CHECK(d.norm() == doctest::Approx(1.0));
    CHECK(d.p0() == doctest::Approx(0.5));
    CHECK(d.nbar() == doctest::Approx(0.75));

    CHECK_THROWS_AS(core::FockDistribution({1.0, -0.1}), DomainError);
    CHECK_THROWS_AS(core::FockDistribution(std::vector<double>{}), DomainError);
    CHECK_THROWS_AS(core::FockDistribution({0.0, 0.0}), DomainError);
}
