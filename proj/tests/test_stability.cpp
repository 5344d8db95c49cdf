#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "ionchain/equilibrium.hpp"
#include "ionchain/modes.hpp"
#include "ionchain/numerics.hpp"
#include "ionchain/stability.hpp"
#include "oracles.hpp"

using namespace ionchain;

TEST_CASE("three-ion boundary matches the block determinant") {
    for (double mu : numerics::log_space(0.01, 100.0, 17)) {
        CAPTURE(mu);
        CHECK(std::abs(epsilon_s(3, mu).epsilon_s - oracle::n3_epsilon_s(mu)) < 1e-9);
    }
    CHECK(std::abs(epsilon_s(3, 1.0).epsilon_s - std::sqrt(2.9)) < 1e-9);
    CHECK(std::abs(epsilon_s(3, 0.05).epsilon_s - std::sqrt(1.5)) < 1e-9);
}

TEST_CASE("governing mode") {
    const auto light = epsilon_s(3, 0.05);
    CHECK(light.governing == GoverningMode::CenterFixed);
    CHECK(std::abs(light.critical_vector[1]) < 1e-8);
    const auto heavy = epsilon_s(3, 1.0);
    CHECK(heavy.governing == GoverningMode::CenterMoving);
    CHECK(to_string(GoverningMode::CenterFixed) == "center_fixed");
}

TEST_CASE("boundary is a zero of the smallest eigenvalue and stable above") {
    for (int n : {5, 9}) {
        for (double mu : {0.1, 1.0, 30.0}) {
            const double es = epsilon_s(n, mu).epsilon_s;
            const auto at = compute_spectrum(make_config(n, mu, es), Branch::Transverse);
            CHECK(std::abs(at.squared_frequency(0)) < 1e-8);
            CHECK(compute_spectrum(make_config(n, mu, es * 1.001), Branch::Transverse).all_stable());
            CHECK_FALSE(compute_spectrum(make_config(n, mu, es * 0.999), Branch::Transverse).all_stable());
        }
    }
}

TEST_CASE("large mass ratios need more than the initial ceiling") {
    const double es = epsilon_s(9, 100.0).epsilon_s;
    CHECK(es > 10.0);
    CHECK(es == doctest::Approx(33.6).epsilon(0.01));
    CHECK(epsilon_s(3, 100.0).epsilon_s == doctest::Approx(oracle::n3_epsilon_s(100.0)).epsilon(1e-10));
}

TEST_CASE("branch roots and full root agree") {
    const auto eq = equilibrium_positions(7);
    for (double mu : {0.05, 0.5, 5.0}) {
        const double fixed = branch_epsilon_s(eq, mu, GoverningMode::CenterFixed);
        const double moving = branch_epsilon_s(eq, mu, GoverningMode::CenterMoving);
        CHECK(epsilon_s(eq, mu).epsilon_s == doctest::Approx(std::max(fixed, moving)).epsilon(1e-9));
    }
    // The center-fixed block does not see the center mass.
    CHECK(branch_epsilon_s(eq, 0.01, GoverningMode::CenterFixed) ==
          doctest::Approx(branch_epsilon_s(eq, 50.0, GoverningMode::CenterFixed)).epsilon(1e-10));
}

TEST_CASE("stability curve and cusp") {
    const auto curve = stability_curve(3, 0.01, 100.0, 41);
    REQUIRE(curve.cusp);
    CHECK(curve.cusp->mu == doctest::Approx(0.3 / 1.7).epsilon(1e-5));
    CHECK(curve.cusp->mu_lo < curve.cusp->mu);
    CHECK(curve.cusp->mu < curve.cusp->mu_hi);
    for (std::size_t i = 1; i < curve.epsilon_s.size(); ++i) CHECK(curve.epsilon_s[i] >= curve.epsilon_s[i - 1] - 1e-12);
    for (int n : {5, 7, 9}) {
        const auto c = stability_curve(n, 0.01, 100.0, 25);
        REQUIRE(c.cusp);
        CHECK(c.cusp->mu > 0.1);
        CHECK(c.cusp->mu < 1.0);
    }
}

TEST_CASE("stability input validation") {
    CHECK_VALIDATION(epsilon_s(4, 1.0), ValidationCode::EvenIonCount);
    CHECK_VALIDATION(epsilon_s(3, 0.0), ValidationCode::NonPositiveMassRatio);
    CHECK_VALIDATION(stability_curve(3, 1.0, 0.5, 10), ValidationCode::BadArgument);
    CHECK_THROWS_AS(refine_cusp(equilibrium_positions(3), 2.0, 3.0), NotBracketed);
}
