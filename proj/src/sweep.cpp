#include "ionchain/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "ionchain/equilibrium.hpp"
#include "ionchain/errors.hpp"
#include "ionchain/heating.hpp"
#include "ionchain/modes.hpp"
#include "ionchain/numerics.hpp"
#include "ionchain/stability.hpp"

namespace ionchain {

namespace {

constexpr double kOverlapTie = 1e-3;

struct PointResult {
    ModeSpectrum spectrum;
    double epsilon = 0.0;
    double epsilon_s = 0.0;
};

PointResult compute_point(const EquilibriumConfiguration& eq, int n, double mu, Branch branch,
                          std::optional<double> ratio) {
    if (branch == Branch::Axial) return {solve_spectrum(axial_matrix(make_config(n, mu), eq))};
    const double eps_s = epsilon_s(eq, mu).epsilon_s;
    const double eps = *ratio * eps_s;
    return {solve_spectrum(transverse_matrix(make_config(n, mu, eps), eq)), eps, eps_s};
}

// Maps each label to a column of `next` by largest |overlap| with the
// label's previous eigenvector. Near-ties go to the closest frequency.
std::vector<std::size_t> assign_tracks(const std::vector<std::vector<double>>& prev_vectors,
                                       const std::vector<double>& prev_freq, const ModeSpectrum& next, double mu,
                                       std::vector<std::string>& warnings) {
    const std::size_t n = prev_vectors.size();
    Matrix overlap(n);
    std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t c = 0; c < n; ++c) {
            overlap(l, c) = std::abs(dot(prev_vectors[l], next.eigenvector(c)));
            pairs.emplace_back(overlap(l, c), l, c);
        }
    }
    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });

    std::vector<std::size_t> label_to_col(n, n);
    std::vector<bool> col_used(n, false);
    for (const auto& [ov, l, c] : pairs) {
        if (label_to_col[l] != n || col_used[c]) continue;
        std::size_t chosen = c;
        bool tie = false;
        for (std::size_t c2 = 0; c2 < n; ++c2) {
            if (c2 == c || col_used[c2] || ov - overlap(l, c2) > kOverlapTie) continue;
            tie = true;
            if (std::abs(next.signed_frequency(c2) - prev_freq[l]) <
                std::abs(next.signed_frequency(chosen) - prev_freq[l]))
                chosen = c2;
        }
        if (tie) {
            std::ostringstream os;
            os << "mu=" << mu << ": ambiguous overlap for track " << l + 1 << ", resolved by frequency proximity";
            warnings.push_back(os.str());
        }
        label_to_col[l] = chosen;
        col_used[chosen] = true;
    }
    return label_to_col;
}

SweepTable run_sweep(int n, std::span<const double> mu_grid, Branch branch, std::optional<double> ratio) {
    validate_ion_count(n);
    if (mu_grid.empty()) throw ValidationError(ValidationCode::BadArgument, "sweep: empty mu grid");
    for (double mu : mu_grid) make_config(n, mu);
    if (branch == Branch::Transverse && !(*ratio > 1.0))
        throw ValidationError(ValidationCode::BadArgument, "sweep_transverse: epsilon ratio must exceed 1");

    const auto eq = equilibrium_positions(n);
    SweepTable t;
    t.n = n;
    t.branch = branch;
    t.epsilon_ratio = ratio;
    t.mu_grid.assign(mu_grid.begin(), mu_grid.end());
    for (double mu : mu_grid) {
        auto pt = compute_point(eq, n, mu, branch, ratio);
        t.heating.push_back(normalized_heating(pt.spectrum).normalized);
        if (branch == Branch::Transverse) {
            t.epsilon.push_back(pt.epsilon);
            t.epsilon_s.push_back(pt.epsilon_s);
        }
        t.spectra.push_back(std::move(pt.spectrum));
    }

    const auto seed = compute_point(eq, n, 1.0, branch, ratio).spectrum;
    std::vector<std::size_t> up, down;
    for (std::size_t i = 0; i < mu_grid.size(); ++i) (mu_grid[i] >= 1.0 ? up : down).push_back(i);
    std::sort(up.begin(), up.end(), [&](auto a, auto b) { return mu_grid[a] < mu_grid[b]; });
    std::sort(down.begin(), down.end(), [&](auto a, auto b) { return mu_grid[a] > mu_grid[b]; });

    t.tracks.assign(mu_grid.size(), {});
    for (const auto* order : {&up, &down}) {
        std::vector<std::vector<double>> prev_vectors;
        std::vector<double> prev_freq;
        for (std::size_t k = 0; k < seed.size(); ++k) {
            const auto v = seed.eigenvector(k);
            prev_vectors.emplace_back(v.begin(), v.end());
            prev_freq.push_back(seed.signed_frequency(k));
        }
        for (std::size_t i : *order) {
            const auto& sp = t.spectra[i];
            t.tracks[i] = assign_tracks(prev_vectors, prev_freq, sp, mu_grid[i], t.warnings);
            for (std::size_t l = 0; l < sp.size(); ++l) {
                const auto v = sp.eigenvector(t.tracks[i][l]);
                prev_vectors[l].assign(v.begin(), v.end());
                prev_freq[l] = sp.signed_frequency(t.tracks[i][l]);
            }
        }
    }
    return t;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void check_figure(int figure_id) {
    if (figure_id < 1 || figure_id > 5)
        throw ValidationError(ValidationCode::BadArgument,
                              "figure id " + std::to_string(figure_id) + " is not in 1..5");
}

std::string stability_csv(int n) {
    const auto curve = stability_curve(n, kFigureMuMin, kFigureMuMax, kFigurePoints);
    std::ostringstream os;
    os << "# figure=2 panel_n=" << n << " epsilon_ratio=none generated_by=" << version_tag() << "\n";
    os << "mu,epsilon_s,governing_mode\n";
    std::optional<double> cusp_eps;
    if (curve.cusp) cusp_eps = epsilon_s(equilibrium_positions(n), curve.cusp->mu).epsilon_s;
    bool cusp_written = false;
    for (std::size_t i = 0; i < curve.mu_grid.size(); ++i) {
        if (curve.cusp && !cusp_written && curve.mu_grid[i] > curve.cusp->mu) {
            os << fmt(curve.cusp->mu) << "," << fmt(*cusp_eps) << ",cusp\n";
            cusp_written = true;
        }
        os << fmt(curve.mu_grid[i]) << "," << fmt(curve.epsilon_s[i]) << "," << to_string(curve.governing[i])
           << "\n";
    }
    return os.str();
}

}  // namespace

std::string version_tag() { return std::string("ionchain-") + kVersion; }

double SweepTable::track_frequency(std::size_t i, std::size_t label) const {
    return spectra.at(i).signed_frequency(tracks.at(i).at(label));
}

double SweepTable::track_heating(std::size_t i, std::size_t label) const {
    return heating.at(i).at(tracks.at(i).at(label));
}

std::span<const double> SweepTable::track_vector(std::size_t i, std::size_t label) const {
    return spectra.at(i).eigenvector(tracks.at(i).at(label));
}

SweepTable sweep_axial(int n, std::span<const double> mu_grid) {
    return run_sweep(n, mu_grid, Branch::Axial, std::nullopt);
}

SweepTable sweep_transverse(int n, std::span<const double> mu_grid, double epsilon_ratio) {
    return run_sweep(n, mu_grid, Branch::Transverse, epsilon_ratio);
}

std::string figure_csv(int figure_id, int n) {
    check_figure(figure_id);
    validate_ion_count(n);
    if (figure_id == 2) return stability_csv(n);

    const bool transverse = figure_id == 3 || figure_id == 5;
    const bool with_heat = figure_id == 4 || figure_id == 5;
    const auto grid = numerics::log_space(kFigureMuMin, kFigureMuMax, kFigurePoints);
    const auto table = transverse ? sweep_transverse(n, grid, kFigureEpsilonRatio) : sweep_axial(n, grid);

    std::ostringstream os;
    os << "# figure=" << figure_id << " panel_n=" << n
       << " epsilon_ratio=" << (transverse ? fmt(kFigureEpsilonRatio) : std::string("none"))
       << " generated_by=" << version_tag() << "\n";
    os << "mu";
    for (int k = 1; k <= n; ++k) os << ",mode_" << k << "_freq";
    if (with_heat)
        for (int k = 1; k <= n; ++k) os << ",mode_" << k << "_heat";
    os << "\n";
    for (std::size_t i = 0; i < table.mu_grid.size(); ++i) {
        os << fmt(table.mu_grid[i]);
        for (std::size_t l = 0; l < table.modes(); ++l) os << "," << fmt(table.track_frequency(i, l));
        if (with_heat)
            for (std::size_t l = 0; l < table.modes(); ++l) os << "," << fmt(table.track_heating(i, l));
        os << "\n";
    }
    return os.str();
}

std::vector<std::filesystem::path> write_figure_dataset(int figure_id, const std::filesystem::path& out_dir) {
    check_figure(figure_id);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir))
        throw IoError("cannot create output directory '" + out_dir.string() + "'");

    std::vector<std::filesystem::path> written;
    for (int n : kFigurePanels) {
        const std::string text = figure_csv(figure_id, n);
        const auto path = out_dir / ("figure" + std::to_string(figure_id) + "_n" + std::to_string(n) + ".csv");
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
        out << text;
        out.close();
        if (!out) throw IoError("failed writing '" + path.string() + "'");
        written.push_back(path);
    }
    return written;
}

}  // namespace ionchain
