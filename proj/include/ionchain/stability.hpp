#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ionchain/types.hpp"

namespace ionchain {

/// Which transverse mode softens first at the string stability boundary.
enum class GoverningMode {
    CenterMoving,  ///< zigzag: every ion, including the center, moves
    CenterFixed,   ///< zigzag-like with the center ion at rest
};

std::string_view to_string(GoverningMode m);

struct StabilityOptions {
    double epsilon_lo = 0.3;
    /// Starting scan ceiling; doubled until the string is stable there.
    double epsilon_hi = 10.0;
    double tolerance = 1e-11;
    int scan_points = 400;
};

struct StabilityPoint {
    double epsilon_s = 0.0;
    GoverningMode governing = GoverningMode::CenterMoving;
    std::vector<double> critical_vector;  ///< eigenvector of B' whose eigenvalue vanishes
};

/// Largest epsilon at which the smallest eigenvalue of B'(epsilon, mu) is zero.
StabilityPoint epsilon_s(int n, double mu, const StabilityOptions& opts = {});
StabilityPoint epsilon_s(const EquilibriumConfiguration& eq, double mu, const StabilityOptions& opts = {});

/// Boundary restricted to one reflection-parity block of B': the center-fixed
/// (antisymmetric) or center-moving (symmetric) modes.
double branch_epsilon_s(const EquilibriumConfiguration& eq, double mu, GoverningMode block,
                        const StabilityOptions& opts = {});

struct CuspInterval {
    double mu_lo = 0.0;  ///< last grid point governed by the center-fixed mode
    double mu_hi = 0.0;  ///< first grid point governed by the center-moving mode
    double mu = 0.0;     ///< crossing of the two branch roots, refined to 1e-6
};

struct StabilityBoundary {
    int n = 0;
    std::vector<double> mu_grid;
    std::vector<double> epsilon_s;
    std::vector<GoverningMode> governing;
    std::optional<CuspInterval> cusp;
};

StabilityBoundary stability_curve(int n, double mu_min, double mu_max, int points,
                                  const StabilityOptions& opts = {});

/// Locates the mu where the two branch roots cross inside [mu_lo, mu_hi].
double refine_cusp(const EquilibriumConfiguration& eq, double mu_lo, double mu_hi,
                   const StabilityOptions& opts = {});

}  // namespace ionchain
