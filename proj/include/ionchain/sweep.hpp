#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ionchain/types.hpp"

namespace ionchain {

inline constexpr const char* kVersion = "0.1.0";
/// "ionchain-<version>", stamped into every generated file.
std::string version_tag();

/// Mode spectra along a mass-ratio grid, with mode identities followed by
/// eigenvector overlap from mu = 1, where labels follow ascending frequency.
struct SweepTable {
    int n = 0;
    Branch branch = Branch::Axial;
    std::optional<double> epsilon_ratio;  ///< transverse: epsilon = ratio * epsilon_s(mu)

    std::vector<double> mu_grid;
    std::vector<ModeSpectrum> spectra;           ///< per grid point, ascending order
    std::vector<std::vector<double>> heating;    ///< per grid point, ascending order
    std::vector<double> epsilon;                 ///< transverse only
    std::vector<double> epsilon_s;               ///< transverse only
    /// tracks[i][label] = ascending-order column holding that label at point i.
    std::vector<std::vector<std::size_t>> tracks;
    std::vector<std::string> warnings;

    std::size_t modes() const noexcept { return static_cast<std::size_t>(n); }
    double track_frequency(std::size_t i, std::size_t label) const;
    double track_heating(std::size_t i, std::size_t label) const;
    std::span<const double> track_vector(std::size_t i, std::size_t label) const;
};

SweepTable sweep_axial(int n, std::span<const double> mu_grid);
SweepTable sweep_transverse(int n, std::span<const double> mu_grid, double epsilon_ratio);

inline constexpr std::array<int, 4> kFigurePanels{3, 5, 7, 9};
inline constexpr int kFigurePoints = 200;
inline constexpr double kFigureMuMin = 0.01;
inline constexpr double kFigureMuMax = 100.0;
inline constexpr double kFigureEpsilonRatio = 1.1;

/// CSV text for one panel of figure 1..5:
///   1 axial frequencies, 2 stability boundary, 3 transverse frequencies,
///   4 axial frequencies + heating, 5 transverse frequencies + heating.
std::string figure_csv(int figure_id, int n);

/// Writes figure<id>_n<N>.csv for every panel into out_dir and returns the paths.
std::vector<std::filesystem::path> write_figure_dataset(int figure_id, const std::filesystem::path& out_dir);

}  // namespace ionchain
