#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "ionchain/numerics.hpp"

using namespace ionchain;
using namespace ionchain::numerics;

namespace {

Matrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = d(rng);
    return m;
}

}  // namespace

TEST_CASE("eigen reconstructs random symmetric matrices") {
    std::mt19937_64 rng(12345);
    for (std::size_t n : {1u, 2u, 3u, 5u, 9u, 17u, 25u}) {
        const auto m = random_symmetric(n, rng);
        const auto r = symmetric_eigen(m);
        REQUIRE(r.eigenvalues.size() == n);
        double worst = 0.0, ortho = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double sum = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    sum += r.eigenvalues[k] * r.eigenvectors[k][i] * r.eigenvectors[k][j];
                worst = std::max(worst, std::abs(sum - m(i, j)));
                ortho = std::max(ortho, std::abs(dot(r.eigenvectors[i], r.eigenvectors[j]) - (i == j ? 1.0 : 0.0)));
            }
        }
        CHECK(worst < 1e-12);
        CHECK(ortho < 1e-12);
        CHECK(r.max_residual < 1e-12);
        for (std::size_t k = 1; k < n; ++k) CHECK(r.eigenvalues[k - 1] <= r.eigenvalues[k]);
    }
}

TEST_CASE("eigen trace and determinant invariants") {
    std::mt19937_64 rng(7);
    const auto m = random_symmetric(4, rng);
    const auto r = symmetric_eigen(m);
    double trace = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < 4; ++i) trace += m(i, i);
    for (double l : r.eigenvalues) sum += l;
    CHECK(sum == doctest::Approx(trace).epsilon(1e-13));
}

TEST_CASE("eigen is deterministic") {
    std::mt19937_64 rng(99);
    const auto m = random_symmetric(11, rng);
    const auto a = symmetric_eigen(m);
    const auto b = symmetric_eigen(m);
    CHECK(a.eigenvalues == b.eigenvalues);
    CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("eigen of diagonal and degenerate matrices") {
    const auto r = symmetric_eigen(Matrix{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}});
    CHECK(r.eigenvalues == std::vector<double>{1, 2, 3});
    const auto d = symmetric_eigen(Matrix::identity(4));
    for (double l : d.eigenvalues) CHECK(l == 1.0);
}

TEST_CASE("eigen rejects bad input") {
    CHECK_VALIDATION(symmetric_eigen(Matrix{{1, 2}, {2.1, 1}}), ValidationCode::NonSymmetricMatrix);
    CHECK_VALIDATION(symmetric_eigen(Matrix{{1, NAN}, {NAN, 1}}), ValidationCode::BadArgument);
}

TEST_CASE("linear solve") {
    const auto x = solve_linear(Matrix{{0, 2}, {3, 1}}, {4, 5});
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(2.0));
    CHECK_THROWS_AS(solve_linear(Matrix{{1, 2}, {2, 4}}, {1, 1}), NumericError);
    CHECK_VALIDATION(solve_linear(Matrix{{1}}, {1, 2}), ValidationCode::BadArgument);
}

TEST_CASE("damped newton converges on a nonlinear system") {
    // x^2 + y^2 = 4, x = y  ->  (sqrt2, sqrt2)
    const VectorFn f = [](std::span<const double> v) {
        return std::vector<double>{v[0] * v[0] + v[1] * v[1] - 4.0, v[0] - v[1]};
    };
    const JacobianFn j = [](std::span<const double> v) { return Matrix{{2 * v[0], 2 * v[1]}, {1, -1}}; };
    const auto r = damped_newton(f, j, {5.0, 0.5}, 1e-14);
    CHECK(r.solution[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(r.solution[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(r.residual < 1e-14);
}

TEST_CASE("damped newton reports failure") {
    // x^2 + 1 has no real root.
    const VectorFn f = [](std::span<const double> v) { return std::vector<double>{v[0] * v[0] + 1.0}; };
    const JacobianFn j = [](std::span<const double> v) { return Matrix{{2 * v[0]}}; };
    CHECK_THROWS_AS(damped_newton(f, j, {0.7}, 1e-12), NumericError);
    CHECK_VALIDATION(damped_newton(f, j, {0.7}, 0.0), ValidationCode::BadArgument);
}

TEST_CASE("bisection finds the largest root") {
    const auto f = [](double x) { return (x - 1.0) * (x - 2.0) * (x - 3.0); };
    CHECK(bisect_largest_root(f, 0.0, 10.0, 1e-13) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(bisect_largest_root(f, 0.0, 2.5, 1e-13) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(bisect_largest_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), NotBracketed);
}

TEST_CASE("log space") {
    const auto g = log_space(0.01, 100.0, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == 0.01);
    CHECK(g.back() == 100.0);
    CHECK(g[2] == doctest::Approx(1.0));
    CHECK_VALIDATION(log_space(1.0, 0.5, 5), ValidationCode::BadArgument);
    CHECK_VALIDATION(log_space(1.0, 2.0, 1), ValidationCode::BadArgument);
}
