#include "ionchain/modes.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "ionchain/equilibrium.hpp"
#include "ionchain/errors.hpp"
#include "ionchain/numerics.hpp"

namespace ionchain {

namespace {

constexpr double kSignThreshold = 1e-8;

// A'_ij = A_ij s_i s_j with s = 1 except s_center = 1/sqrt(mu).
void apply_mass_scaling(Matrix& m, std::size_t center, double mu) {
    const double inv_sqrt_mu = 1.0 / std::sqrt(mu);
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (j == center) continue;
        m(center, j) *= inv_sqrt_mu;
        m(j, center) *= inv_sqrt_mu;
    }
    m(center, center) /= mu;
}

// inv_cubes(i, j) = 1 / |u_i - u_j|^3 for i != j; computed once per pair.
Matrix inverse_cubed_distances(std::span<const double> u) {
    Matrix c(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            const double d = std::abs(u[i] - u[j]);
            c(i, j) = c(j, i) = 1.0 / (d * d * d);
        }
    }
    return c;
}

void check_positions(const CrystalConfig& config, const EquilibriumConfiguration& eq) {
    if (eq.positions.size() != static_cast<std::size_t>(config.n()))
        throw ValidationError(ValidationCode::BadArgument,
                              "equilibrium has " + std::to_string(eq.positions.size()) +
                                  " positions, config has n = " + std::to_string(config.n()));
}

}  // namespace

DynamicalMatrix axial_matrix(const CrystalConfig& config) {
    return axial_matrix(config, equilibrium_positions(config.n()));
}

DynamicalMatrix axial_matrix(const CrystalConfig& config, const EquilibriumConfiguration& eq) {
    check_positions(config, eq);
    const std::size_t n = eq.positions.size();
    const Matrix c = inverse_cubed_distances(eq.positions);
    Matrix a(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) row_sum += c(i, k);
        a(i, i) = 1.0 + 2.0 * row_sum;
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = -2.0 * c(i, j);
    }
    apply_mass_scaling(a, config.center(), config.mu());
    return DynamicalMatrix(Branch::Axial, std::move(a), config);
}

DynamicalMatrix transverse_matrix(const CrystalConfig& config) {
    return transverse_matrix(config, equilibrium_positions(config.n()));
}

DynamicalMatrix transverse_matrix(const CrystalConfig& config, const EquilibriumConfiguration& eq) {
    check_positions(config, eq);
    const double eps2 = config.require_epsilon() * config.require_epsilon();
    const std::size_t n = eq.positions.size();
    const std::size_t center = config.center();
    const Matrix c = inverse_cubed_distances(eq.positions);
    Matrix b(n);
    for (std::size_t i = 0; i < n; ++i) {
        double row_sum = 0.0;
        for (std::size_t k = 0; k < n; ++k) row_sum += c(i, k);
        // The RF pseudopotential scales as 1/mass; the static defocusing term does not.
        const double confinement = (i == center) ? eps2 / config.mu() : eps2;
        b(i, i) = confinement - config.alpha() - row_sum;
        for (std::size_t j = i + 1; j < n; ++j) b(i, j) = b(j, i) = c(i, j);
    }
    apply_mass_scaling(b, center, config.mu());
    return DynamicalMatrix(Branch::Transverse, std::move(b), config);
}

ModeSpectrum solve_spectrum(const DynamicalMatrix& matrix) {
    auto eig = numerics::symmetric_eigen(matrix.entries());
    const std::size_t center = matrix.config().center();
    std::vector<ModeClass> classes;
    classes.reserve(eig.eigenvalues.size());
    for (auto& v : eig.eigenvectors) {
        for (double x : v) {
            if (std::abs(x) > kSignThreshold) {
                if (x < 0.0)
                    for (double& y : v) y = -y;
                break;
            }
        }
        classes.push_back(std::abs(v[center]) < kColdThreshold ? ModeClass::Cold : ModeClass::Hot);
    }
    return ModeSpectrum(matrix.branch(), matrix.config(), std::move(eig.eigenvalues),
                        std::move(eig.eigenvectors), std::move(classes));
}

ModeSpectrum compute_spectrum(const CrystalConfig& config, Branch branch) {
    return solve_spectrum(branch == Branch::Axial ? axial_matrix(config) : transverse_matrix(config));
}

AnalyticN3Modes axial_n3_analytic(double mu) {
    if (!(mu > 0.0)) throw ValidationError(ValidationCode::NonPositiveMassRatio, "axial_n3_analytic: mu must be positive");
    const double root = std::sqrt(441.0 - 34.0 * mu + 169.0 * mu * mu);
    AnalyticN3Modes out;
    out.frequencies[0] = std::sqrt(1.3 + (21.0 - root) / (10.0 * mu));
    out.frequencies[1] = std::sqrt(3.0);
    out.frequencies[2] = std::sqrt(1.3 + (21.0 + root) / (10.0 * mu));

    for (std::size_t k : {std::size_t{0}, std::size_t{2}}) {
        const double z2 = out.frequencies[k] * out.frequencies[k];
        const double middle = std::sqrt(mu) / 8.0 * (13.0 - 5.0 * z2);
        const double norm = std::sqrt(2.0 + middle * middle);
        out.eigenvectors[k] = {1.0 / norm, middle / norm, 1.0 / norm};
    }
    out.eigenvectors[1] = {1.0 / std::sqrt(2.0), 0.0, -1.0 / std::sqrt(2.0)};
    return out;
}

ModeTrajectory mode_trajectory(const ModeSpectrum& spectrum, std::size_t k, double amplitude, double phase,
                               std::span<const double> times) {
    if (k >= spectrum.size())
        throw ValidationError(ValidationCode::BadArgument,
                              "mode index " + std::to_string(k + 1) + " out of range 1.." +
                                  std::to_string(spectrum.size()));
    const double zeta = spectrum.frequency(k);
    const auto v = spectrum.eigenvector(k);
    const std::size_t center = spectrum.config().center();
    const double center_scale = 1.0 / std::sqrt(spectrum.config().mu());

    ModeTrajectory traj;
    traj.mode = k;
    traj.amplitude = amplitude;
    traj.phase = phase;
    traj.times.assign(times.begin(), times.end());
    traj.displacements.reserve(times.size());
    for (double t : times) {
        const double c = amplitude * std::cos(zeta * t + phase);
        std::vector<double> q(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) q[i] = c * v[i] * (i == center ? center_scale : 1.0);
        traj.displacements.push_back(std::move(q));
    }
    return traj;
}

SpacingResult fractional_spacing(const ModeSpectrum& spectrum, std::size_t k) {
    if (spectrum.size() < 2)
        throw ValidationError(ValidationCode::BadArgument, "fractional_spacing: need at least two modes");
    const double zk = spectrum.frequency(k);
    SpacingResult best{std::numeric_limits<double>::infinity(), k};
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        if (j == k || !spectrum.stable(j)) continue;
        const double zj = spectrum.frequency(j);
        const double s = std::abs(zj - zk) / (0.5 * (zj + zk));
        if (s < best.spacing) best = {s, j};
    }
    if (best.neighbor == k) throw DomainError("fractional_spacing: no other stable mode");
    return best;
}

std::size_t select_logic_mode(const ModeSpectrum& spectrum) {
    std::optional<std::size_t> best;
    double best_spacing = -1.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (spectrum.classification(k) != ModeClass::Cold || !spectrum.stable(k)) continue;
        const double s = fractional_spacing(spectrum, k).spacing;
        if (s > best_spacing) {
            best_spacing = s;
            best = k;
        }
    }
    if (!best) throw DomainError("select_logic_mode: spectrum has no stable cold mode");
    return *best;
}

}  // namespace ionchain
