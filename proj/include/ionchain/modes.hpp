#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "ionchain/types.hpp"

namespace ionchain {

/// Axial matrix A' built from the Coulomb stiffness A at equilibrium, with
/// the center row and column scaled by 1/sqrt(mu) (center diagonal by 1/mu).
DynamicalMatrix axial_matrix(const CrystalConfig& config);
DynamicalMatrix axial_matrix(const CrystalConfig& config, const EquilibriumConfiguration& eq);

/// Transverse (x) matrix B'. Requires config.epsilon(). With alpha = 1/2 the
/// y branch is identical.
DynamicalMatrix transverse_matrix(const CrystalConfig& config);
DynamicalMatrix transverse_matrix(const CrystalConfig& config, const EquilibriumConfiguration& eq);

/// Diagonalizes a dynamical matrix, classifies each mode as Cold or Hot by
/// its center amplitude, and makes the first significant component of each
/// eigenvector positive.
ModeSpectrum solve_spectrum(const DynamicalMatrix& matrix);

/// Builds the matrix for the branch and solves it.
ModeSpectrum compute_spectrum(const CrystalConfig& config, Branch branch);

/// Closed-form three-ion axial modes. Index k follows the analytic labels
/// (k = 1 is the lower hot mode, k = 2 the cold sqrt(3) mode, k = 3 the upper
/// hot mode), which is not ascending order once mu > 17/3.
struct AnalyticN3Modes {
    std::array<double, 3> frequencies{};
    std::array<std::array<double, 3>, 3> eigenvectors{};
};
AnalyticN3Modes axial_n3_analytic(double mu);

ModeTrajectory mode_trajectory(const ModeSpectrum& spectrum, std::size_t k, double amplitude, double phase,
                               std::span<const double> times);

struct SpacingResult {
    double spacing = 0.0;      ///< |zeta_j - zeta_k| / mean(zeta_j, zeta_k)
    std::size_t neighbor = 0;  ///< minimizing j
};

/// Smallest fractional spacing from mode k to any other stable mode.
SpacingResult fractional_spacing(const ModeSpectrum& spectrum, std::size_t k);

/// Stable Cold mode with the largest fractional spacing; ties go to the
/// lowest frequency.
std::size_t select_logic_mode(const ModeSpectrum& spectrum);

}  // namespace ionchain
