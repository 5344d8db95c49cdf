#pragma once

#include <span>
#include <vector>

#include "ionchain/matrix.hpp"
#include "ionchain/types.hpp"

namespace ionchain {

/// Equilibrium positions u_i of an n-ion string (odd n, 3..25), independent
/// of the ion masses. Residual of the force balance is below 1e-12.
EquilibriumConfiguration equilibrium_positions(int n);

/// Normalized potential energy 1/2 sum u_i^2 + sum_{i<j} 1/|u_i - u_j| in
/// units of q a0 l^2. Positions must be strictly increasing.
double potential_energy(std::span<const double> positions);

/// Net normalized force on each ion: u_i - sum_{j<i} d_ij^-2 + sum_{j>i} d_ij^-2.
std::vector<double> force_residual(std::span<const double> positions);

/// Jacobian of force_residual; equals the axial stiffness matrix A.
Matrix force_jacobian(std::span<const double> positions);

}  // namespace ionchain
