#include "ionchain/equilibrium.hpp"

#include <cmath>
#include <sstream>

#include "ionchain/errors.hpp"
#include "ionchain/numerics.hpp"

namespace ionchain {

namespace {

constexpr double kNewtonTolerance = 1e-13;
constexpr double kMaxResidual = 1e-12;

}  // namespace

std::vector<double> force_residual(std::span<const double> u) {
    const std::size_t n = u.size();
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = u[i];
        for (std::size_t j = 0; j < i; ++j) {
            const double d = u[i] - u[j];
            s -= 1.0 / (d * d);
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = u[i] - u[j];
            s += 1.0 / (d * d);
        }
        f[i] = s;
    }
    return f;
}

Matrix force_jacobian(std::span<const double> u) {
    const std::size_t n = u.size();
    Matrix jac(n);
    for (std::size_t i = 0; i < n; ++i) jac(i, i) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = std::abs(u[i] - u[j]);
            const double c = 2.0 / (d * d * d);
            jac(i, j) = jac(j, i) = -c;
            jac(i, i) += c;
            jac(j, j) += c;
        }
    }
    return jac;
}

double potential_energy(std::span<const double> u) {
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        e += 0.5 * u[i] * u[i];
        if (i > 0 && !(u[i] > u[i - 1])) {
            std::ostringstream os;
            os << "potential_energy: ions " << i << " and " << i + 1
               << " are coincident or out of order (Coulomb singularity)";
            throw DomainError(os.str());
        }
        for (std::size_t j = 0; j < i; ++j) e += 1.0 / (u[i] - u[j]);
    }
    return e;
}

EquilibriumConfiguration equilibrium_positions(int n) {
    validate_ion_count(n);
    const auto count = static_cast<std::size_t>(n);

    // Uniform spacing over [-(n-1)/2, (n-1)/2], shrunk by n^(-1/3).
    std::vector<double> guess(count);
    const double scale = std::pow(static_cast<double>(n), -1.0 / 3.0);
    for (std::size_t i = 0; i < count; ++i)
        guess[i] = (static_cast<double>(i) - 0.5 * (n - 1)) * scale;

    auto sol = numerics::damped_newton(
        [](std::span<const double> u) { return force_residual(u); },
        [](std::span<const double> u) { return force_jacobian(u); }, std::move(guess), kNewtonTolerance);

    // The solution is exactly antisymmetric; remove roundoff asymmetry.
    auto& u = sol.solution;
    for (std::size_t i = 0; i < count / 2; ++i) {
        const double half = 0.5 * (u[count - 1 - i] - u[i]);
        u[i] = -half;
        u[count - 1 - i] = half;
    }
    u[count / 2] = 0.0;

    EquilibriumConfiguration eq;
    eq.residual = max_abs(force_residual(u));
    eq.positions = std::move(u);
    if (!(eq.residual < kMaxResidual)) {
        std::ostringstream os;
        os << "equilibrium_positions(" << n << "): residual " << eq.residual << " above " << kMaxResidual;
        throw NumericError(os.str(), eq.residual);
    }
    return eq;
}

}  // namespace ionchain
