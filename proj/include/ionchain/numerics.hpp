#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ionchain/matrix.hpp"

namespace ionchain::numerics {

inline constexpr int kMaxJacobiSweeps = 100;
inline constexpr int kMaxNewtonSteps = 200;
inline constexpr int kMaxBisectionSteps = 200;
inline constexpr double kSymmetryTolerance = 1e-14;

struct EigenResult {
    std::vector<double> eigenvalues;                ///< ascending
    std::vector<std::vector<double>> eigenvectors;  ///< eigenvectors[k] pairs with eigenvalues[k]
    double max_residual = 0.0;                      ///< max_k |M v_k - lambda_k v_k|
};

/// Full spectrum of a real symmetric matrix by cyclic Jacobi rotations.
/// Deterministic: the same input always produces bit-identical output.
EigenResult symmetric_eigen(const Matrix& m);

/// Solves a x = b by Gaussian elimination with partial pivoting.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

using VectorFn = std::function<std::vector<double>(std::span<const double>)>;
using JacobianFn = std::function<Matrix(std::span<const double>)>;

struct NewtonResult {
    std::vector<double> solution;
    double residual = 0.0;  ///< infinity norm at the solution
    int iterations = 0;
};

/// Newton iteration with step halving. Every accepted step strictly lowers
/// the infinity norm of the residual.
NewtonResult damped_newton(const VectorFn& residual, const JacobianFn& jacobian,
                           std::vector<double> initial_guess, double tol);

/// Largest root of f in [lo, hi]: scans downward from hi over scan_points
/// samples, then bisects the first bracket found to tol.
double bisect_largest_root(const std::function<double(double)>& f, double lo, double hi, double tol,
                           int scan_points = 400);

/// points values log-spaced over [lo, hi], endpoints exact.
std::vector<double> log_space(double lo, double hi, int points);

}  // namespace ionchain::numerics
