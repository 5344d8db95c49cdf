#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "ionchain/equilibrium.hpp"
#include "oracles.hpp"

using namespace ionchain;

TEST_CASE("three-ion positions are +-(5/4)^(1/3)") {
    const auto eq = equilibrium_positions(3);
    const double u = std::cbrt(1.25);
    CHECK(std::abs(eq.positions[0] + u) < 1e-13);
    CHECK(eq.positions[1] == 0.0);
    CHECK(std::abs(eq.positions[2] - u) < 1e-13);
}

TEST_CASE("positions agree with coordinate-descent minimization") {
    for (int n = 3; n <= 25; n += 2) {
        CAPTURE(n);
        const auto eq = equilibrium_positions(n);
        const auto ref = oracle::coordinate_descent_equilibrium(n);
        CHECK(max_diff(eq.positions, ref) < 1e-10);
        CHECK(eq.residual < 1e-12);
        CHECK(max_abs(force_residual(eq.positions)) < 1e-12);
    }
}

TEST_CASE("positions are ordered and mirror symmetric") {
    for (int n : {5, 9, 15, 25}) {
        const auto p = equilibrium_positions(n).positions;
        for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] > p[i - 1]);
        for (std::size_t i = 0; i < p.size(); ++i) CHECK(p[i] == -p[p.size() - 1 - i]);
    }
}

TEST_CASE("equilibrium is a local minimum of the potential") {
    const auto p = equilibrium_positions(7).positions;
    const double e0 = potential_energy(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (double h : {-1e-4, 1e-4}) {
            auto q = p;
            q[i] += h;
            CHECK(potential_energy(q) > e0);
        }
    }
}

TEST_CASE("jacobian matches finite differences of the force") {
    const auto p = equilibrium_positions(5).positions;
    const auto jac = force_jacobian(p);
    const double h = 1e-6;
    for (std::size_t j = 0; j < p.size(); ++j) {
        auto plus = p, minus = p;
        plus[j] += h;
        minus[j] -= h;
        const auto fp = force_residual(plus), fm = force_residual(minus);
        for (std::size_t i = 0; i < p.size(); ++i)
            CHECK(jac(i, j) == doctest::Approx((fp[i] - fm[i]) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("force is the energy gradient") {
    const std::vector<double> p{-1.3, -0.2, 0.4, 1.7, 2.5};
    const auto f = force_residual(p);
    const double h = 1e-6;
    for (std::size_t i = 0; i < p.size(); ++i) {
        auto plus = p, minus = p;
        plus[i] += h;
        minus[i] -= h;
        CHECK(f[i] == doctest::Approx((potential_energy(plus) - potential_energy(minus)) / (2 * h)).epsilon(1e-7));
    }
}

TEST_CASE("equilibrium rejects invalid counts") {
    CHECK_VALIDATION(equilibrium_positions(4), ValidationCode::EvenIonCount);
    CHECK_VALIDATION(equilibrium_positions(1), ValidationCode::TooFewIons);
    CHECK_VALIDATION(equilibrium_positions(27), ValidationCode::TooManyIons);
}

TEST_CASE("potential energy rejects coincident ions") {
    CHECK_THROWS_AS(potential_energy(std::vector<double>{0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(potential_energy(std::vector<double>{1.0, 0.0}), DomainError);
    CHECK(potential_energy(std::vector<double>{0.5}) == 0.125);
}
