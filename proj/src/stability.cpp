#include "ionchain/stability.hpp"

#include <cmath>
#include <sstream>

#include "ionchain/equilibrium.hpp"
#include "ionchain/errors.hpp"
#include "ionchain/modes.hpp"
#include "ionchain/numerics.hpp"

namespace ionchain {

namespace {

constexpr double kCeilingLimit = 1e4;
constexpr double kCuspTolerance = 1e-6;

Matrix transverse_entries(const EquilibriumConfiguration& eq, double mu, double epsilon) {
    const int n = static_cast<int>(eq.positions.size());
    return transverse_matrix(make_config(n, mu, epsilon), eq).entries();
}

// Orthonormal basis of one reflection-parity subspace, as columns.
std::vector<std::vector<double>> parity_basis(std::size_t n, GoverningMode block) {
    const std::size_t c = n / 2;
    const double h = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<double>> basis;
    for (std::size_t m = 1; m <= c; ++m) {
        std::vector<double> v(n, 0.0);
        v[c - m] = h;
        v[c + m] = block == GoverningMode::CenterFixed ? -h : h;
        basis.push_back(std::move(v));
    }
    if (block == GoverningMode::CenterMoving) {
        std::vector<double> v(n, 0.0);
        v[c] = 1.0;
        basis.push_back(std::move(v));
    }
    return basis;
}

Matrix project(const Matrix& m, const std::vector<std::vector<double>>& basis) {
    Matrix p(basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a) {
        const auto mb = m.multiply(basis[a]);
        for (std::size_t b = a; b < basis.size(); ++b) p(a, b) = p(b, a) = dot(basis[b], mb);
    }
    return p;
}

// Root of the smallest eigenvalue of sym(epsilon), growing the ceiling until
// the string is stable there. The smallest eigenvalue is nondecreasing in
// epsilon, so the first sign change below the ceiling is the largest root.
double largest_root(const std::function<double(double)>& smallest, const StabilityOptions& opts,
                    double mu) {
    double hi = opts.epsilon_hi;
    while (!(smallest(hi) > 0.0)) {
        hi *= 2.0;
        if (hi > kCeilingLimit) {
            std::ostringstream os;
            os << "epsilon_s: string unstable up to epsilon = " << kCeilingLimit << " at mu = " << mu;
            throw NotBracketed(os.str());
        }
    }
    return numerics::bisect_largest_root(smallest, opts.epsilon_lo, hi, opts.tolerance, opts.scan_points);
}

}  // namespace

std::string_view to_string(GoverningMode m) {
    return m == GoverningMode::CenterMoving ? "center_moving" : "center_fixed";
}

StabilityPoint epsilon_s(int n, double mu, const StabilityOptions& opts) {
    validate_ion_count(n);
    make_config(n, mu);
    return epsilon_s(equilibrium_positions(n), mu, opts);
}

StabilityPoint epsilon_s(const EquilibriumConfiguration& eq, double mu, const StabilityOptions& opts) {
    const auto smallest = [&](double eps) {
        return numerics::symmetric_eigen(transverse_entries(eq, mu, eps)).eigenvalues.front();
    };
    StabilityPoint pt;
    pt.epsilon_s = largest_root(smallest, opts, mu);

    const auto eig = numerics::symmetric_eigen(transverse_entries(eq, mu, pt.epsilon_s));
    pt.critical_vector = eig.eigenvectors.front();
    const std::size_t center = eq.positions.size() / 2;
    pt.governing = std::abs(pt.critical_vector[center]) < kColdThreshold ? GoverningMode::CenterFixed
                                                                         : GoverningMode::CenterMoving;
    return pt;
}

double branch_epsilon_s(const EquilibriumConfiguration& eq, double mu, GoverningMode block,
                        const StabilityOptions& opts) {
    const auto basis = parity_basis(eq.positions.size(), block);
    const auto smallest = [&](double eps) {
        return numerics::symmetric_eigen(project(transverse_entries(eq, mu, eps), basis)).eigenvalues.front();
    };
    return largest_root(smallest, opts, mu);
}

double refine_cusp(const EquilibriumConfiguration& eq, double mu_lo, double mu_hi, const StabilityOptions& opts) {
    // The center-fixed root does not depend on mu.
    const double fixed_root = branch_epsilon_s(eq, 1.0, GoverningMode::CenterFixed, opts);
    const auto gap = [&](double mu) {
        return branch_epsilon_s(eq, mu, GoverningMode::CenterMoving, opts) - fixed_root;
    };
    double g_lo = gap(mu_lo);
    if ((g_lo < 0.0) == (gap(mu_hi) < 0.0)) {
        std::ostringstream os;
        os << "refine_cusp: branch roots do not cross in [" << mu_lo << ", " << mu_hi << "]";
        throw NotBracketed(os.str(), g_lo);
    }
    for (int k = 0; k < numerics::kMaxBisectionSteps && mu_hi - mu_lo > kCuspTolerance; ++k) {
        const double mid = std::sqrt(mu_lo * mu_hi);
        const double g = gap(mid);
        if ((g < 0.0) == (g_lo < 0.0)) {
            mu_lo = mid;
            g_lo = g;
        } else {
            mu_hi = mid;
        }
    }
    return 0.5 * (mu_lo + mu_hi);
}

StabilityBoundary stability_curve(int n, double mu_min, double mu_max, int points, const StabilityOptions& opts) {
    validate_ion_count(n);
    make_config(n, mu_min);
    make_config(n, mu_max);
    const auto eq = equilibrium_positions(n);

    StabilityBoundary out;
    out.n = n;
    out.mu_grid = numerics::log_space(mu_min, mu_max, points);
    for (double mu : out.mu_grid) {
        const auto pt = epsilon_s(eq, mu, opts);
        out.epsilon_s.push_back(pt.epsilon_s);
        out.governing.push_back(pt.governing);
    }
    for (std::size_t i = 0; i + 1 < out.governing.size(); ++i) {
        if (out.governing[i] == GoverningMode::CenterFixed && out.governing[i + 1] == GoverningMode::CenterMoving) {
            CuspInterval cusp;
            cusp.mu_lo = out.mu_grid[i];
            cusp.mu_hi = out.mu_grid[i + 1];
            cusp.mu = refine_cusp(eq, cusp.mu_lo, cusp.mu_hi, opts);
            out.cusp = cusp;
            break;
        }
    }
    return out;
}

}  // namespace ionchain
