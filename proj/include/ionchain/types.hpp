#pragma once

// Shared dimensionless data model. Lengths are in units of the string length
// scale l (l^3 = q / (4 pi eps0 a0)), frequencies in units of the single-ion
// axial frequency w_z of the outer species, time in T = w_z t.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "ionchain/matrix.hpp"

namespace ionchain {

inline constexpr int kMaxIons = 25;
inline constexpr double kMinMassRatio = 1e-3;
inline constexpr double kMaxMassRatio = 1e3;
/// Static transverse split; fixed so that w_y = w_x.
inline constexpr double kStaticSplit = 0.5;
/// Center amplitude below which a mode counts as Cold.
inline constexpr double kColdThreshold = 1e-8;

enum class Branch { Axial, Transverse };
enum class ModeClass { Cold, Hot };

std::string_view to_string(Branch b);
std::string_view to_string(ModeClass c);
Branch parse_branch(std::string_view s);

/// Validated problem statement: ion count, mass ratio M/m, anisotropy w_r0/w_z.
class CrystalConfig {
public:
    int n() const noexcept { return n_; }
    double mu() const noexcept { return mu_; }
    /// Zero-based index of the center ion, (n - 1) / 2.
    std::size_t center() const noexcept { return static_cast<std::size_t>(n_ / 2); }
    /// One-based center label n_c = (n + 1) / 2.
    int center_label() const noexcept { return (n_ + 1) / 2; }
    const std::optional<double>& epsilon() const noexcept { return epsilon_; }
    double alpha() const noexcept { return kStaticSplit; }

    /// Epsilon, or ValidationError(MissingAnisotropy) when unset.
    double require_epsilon() const;

    CrystalConfig with_mu(double mu) const;
    CrystalConfig with_epsilon(double epsilon) const;

    bool operator==(const CrystalConfig&) const = default;

private:
    friend CrystalConfig make_config(int, double, std::optional<double>);
    CrystalConfig(int n, double mu, std::optional<double> eps) : n_(n), mu_(mu), epsilon_(eps) {}

    int n_;
    double mu_;
    std::optional<double> epsilon_;
};

/// Throws ValidationError with a distinct code for each violated precondition.
CrystalConfig make_config(int n, double mu, std::optional<double> epsilon = std::nullopt);

/// Validates an ion count alone (odd, 3..kMaxIons).
void validate_ion_count(int n);

struct EquilibriumConfiguration {
    std::vector<double> positions;  ///< ascending, units of l
    double residual = 0.0;          ///< max |force| at the solution
};

/// Mass-scaled stiffness matrix A' (axial) or B' (transverse), in units of w_z^2.
class DynamicalMatrix {
public:
    DynamicalMatrix(Branch branch, Matrix entries, CrystalConfig config)
        : branch_(branch), entries_(std::move(entries)), config_(std::move(config)) {}

    Branch branch() const noexcept { return branch_; }
    const Matrix& entries() const noexcept { return entries_; }
    const CrystalConfig& config() const noexcept { return config_; }

private:
    Branch branch_;
    Matrix entries_;
    CrystalConfig config_;
};

/// Normal modes sorted by ascending squared frequency. Negative squared
/// frequencies mark unstable modes and are kept rather than rejected.
class ModeSpectrum {
public:
    ModeSpectrum(Branch branch, CrystalConfig config, std::vector<double> squared_frequencies,
                 std::vector<std::vector<double>> eigenvectors, std::vector<ModeClass> classes);

    Branch branch() const noexcept { return branch_; }
    const CrystalConfig& config() const noexcept { return config_; }
    std::size_t size() const noexcept { return squared_.size(); }

    std::span<const double> squared_frequencies() const noexcept { return squared_; }
    double squared_frequency(std::size_t k) const { return squared_.at(k); }
    /// zeta_k; DomainError when the mode is unstable.
    double frequency(std::size_t k) const;
    /// sign(zeta^2) sqrt|zeta^2|; negative values are imaginary-frequency magnitudes.
    double signed_frequency(std::size_t k) const;
    bool stable(std::size_t k) const { return squared_.at(k) > 0.0; }
    bool all_stable() const;

    std::span<const double> eigenvector(std::size_t k) const { return eigenvectors_.at(k); }
    ModeClass classification(std::size_t k) const { return classes_.at(k); }
    std::size_t cold_count() const;

    /// Degenerate copies of this branch (2 for transverse: x and y coincide).
    int multiplicity() const noexcept { return branch_ == Branch::Transverse ? 2 : 1; }

private:
    Branch branch_;
    CrystalConfig config_;
    std::vector<double> squared_;
    std::vector<std::vector<double>> eigenvectors_;
    std::vector<ModeClass> classes_;
};

/// Displacements of every ion for one excited mode over a time grid.
struct ModeTrajectory {
    std::size_t mode = 0;
    double amplitude = 0.0;
    double phase = 0.0;
    std::vector<double> times;                       ///< normalized time T
    std::vector<std::vector<double>> displacements;  ///< [sample][ion], units of l
};

}  // namespace ionchain
