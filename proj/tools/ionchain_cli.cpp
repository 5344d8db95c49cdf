// ionchain command-line front end. Talks to the library only through the C API.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ionchain/ionchain.h"
#include "json.hpp"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

// Raised for any failed C call; carries the status and the library message.
struct CallFailed {
    ic_status status;
    std::string message;
};

// Problems detected by the CLI itself, reported like validation errors.
struct UsageProblem {
    std::string message;
};

void check(ic_status st) {
    if (st != IC_OK) throw CallFailed{st, ic_last_error()};
}

int exit_code(ic_status st) {
    return (st == IC_ERR_VALIDATION || st == IC_ERR_DOMAIN) ? kExitUsage : kExitNumeric;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

struct SpectrumDeleter {
    void operator()(ic_spectrum* s) const { ic_spectrum_destroy(s); }
};
struct CurveDeleter {
    void operator()(ic_stability_curve* c) const { ic_stability_curve_destroy(c); }
};
struct TableDeleter {
    void operator()(ic_species_table* t) const { ic_species_table_destroy(t); }
};
using Spectrum = std::unique_ptr<ic_spectrum, SpectrumDeleter>;
using Curve = std::unique_ptr<ic_stability_curve, CurveDeleter>;
using Table = std::unique_ptr<ic_species_table, TableDeleter>;

struct Output {
    json config = json::object();
    json payload = json::object();
    std::string csv;
};

struct Globals {
    std::string format = "csv";
    bool quiet = false;
    std::string species_file;
};

Table load_table(const Globals& g) {
    ic_species_table* raw = nullptr;
    check(ic_species_table_create(&raw));
    Table t(raw);
    if (!g.species_file.empty()) check(ic_species_table_load(t.get(), g.species_file.c_str()));
    return t;
}

// ---- spectrum-based subcommands -------------------------------------------

struct SpectrumArgs {
    int n = 0;
    double mu = 0.0;
    std::string branch = "axial";
    std::optional<double> epsilon;
    std::optional<double> epsilon_ratio;
};

void add_spectrum_options(CLI::App* sub, SpectrumArgs& a, bool mu_required = true) {
    sub->add_option("--n", a.n, "number of ions (odd, 3..25)")->required();
    auto* mu = sub->add_option("--mu", a.mu, "center/outer mass ratio M/m");
    if (mu_required) mu->required();
    sub->add_option("--branch", a.branch, "axial or transverse")->check(CLI::IsMember({"axial", "transverse"}));
    auto* eps = sub->add_option("--epsilon", a.epsilon, "trap anisotropy w_r0/w_z (transverse)");
    sub->add_option("--epsilon-ratio", a.epsilon_ratio, "epsilon as a multiple of epsilon_s (transverse)")
        ->excludes(eps);
}

ic_branch branch_of(const std::string& s) { return s == "transverse" ? IC_TRANSVERSE : IC_AXIAL; }

Spectrum make_spectrum(const SpectrumArgs& a) {
    ic_spectrum* raw = nullptr;
    if (a.branch == "axial") {
        if (a.epsilon || a.epsilon_ratio) throw UsageProblem{"--epsilon/--epsilon-ratio apply to the transverse branch only"};
        check(ic_spectrum_create_axial(a.n, a.mu, &raw));
    } else if (a.epsilon) {
        check(ic_spectrum_create_transverse(a.n, a.mu, *a.epsilon, &raw));
    } else if (a.epsilon_ratio) {
        check(ic_spectrum_create_transverse_ratio(a.n, a.mu, *a.epsilon_ratio, &raw));
    } else {
        throw UsageProblem{"transverse branch needs --epsilon or --epsilon-ratio"};
    }
    return Spectrum(raw);
}

void echo_spectrum_args(const SpectrumArgs& a, json& cfg) {
    cfg["n"] = a.n;
    cfg["mu"] = a.mu;
    cfg["branch"] = a.branch;
    if (a.epsilon) cfg["epsilon"] = *a.epsilon;
    if (a.epsilon_ratio) cfg["epsilon_ratio"] = *a.epsilon_ratio;
}

std::vector<double> squared_frequencies(const ic_spectrum* s) {
    std::vector<double> z2(ic_spectrum_size(s));
    check(ic_spectrum_squared_frequencies(s, z2.data(), z2.size()));
    return z2;
}

std::vector<ic_mode_class> classes(const ic_spectrum* s) {
    std::vector<ic_mode_class> c(ic_spectrum_size(s));
    check(ic_spectrum_classes(s, c.data(), c.size()));
    return c;
}

double signed_sqrt(double x) { return x >= 0.0 ? std::sqrt(x) : -std::sqrt(-x); }

const char* class_name(ic_mode_class c) { return c == IC_COLD ? "cold" : "hot"; }

Output run_modes(const SpectrumArgs& a) {
    Output out;
    echo_spectrum_args(a, out.config);
    const auto s = make_spectrum(a);
    const std::size_t n = ic_spectrum_size(s.get());
    const auto z2 = squared_frequencies(s.get());
    const auto cls = classes(s.get());

    json freqs = json::array(), sq = json::array(), cl = json::array(), vecs = json::array();
    std::ostringstream csv;
    csv << "mode,squared_frequency,frequency,class";
    for (std::size_t i = 1; i <= n; ++i) csv << ",v_" << i;
    csv << "\n";
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<double> v(n);
        check(ic_spectrum_eigenvector(s.get(), k, v.data(), n));
        const double f = signed_sqrt(z2[k]);
        freqs.push_back(f);
        sq.push_back(z2[k]);
        cl.push_back(class_name(cls[k]));
        vecs.push_back(v);
        csv << k + 1 << "," << num(z2[k]) << "," << num(f) << "," << class_name(cls[k]);
        for (double x : v) csv << "," << num(x);
        csv << "\n";
    }
    out.payload["frequencies"] = freqs;
    out.payload["squared_frequencies"] = sq;
    out.payload["classes"] = cl;
    out.payload["eigenvectors"] = vecs;
    out.payload["multiplicity"] = ic_spectrum_multiplicity(s.get());
    if (a.branch == "transverse") out.payload["epsilon"] = ic_spectrum_epsilon(s.get());
    out.csv = csv.str();
    return out;
}

Output run_trajectory(const SpectrumArgs& a, int mode, double amplitude, double phase, double t_max, int samples) {
    Output out;
    echo_spectrum_args(a, out.config);
    out.config["mode"] = mode;
    out.config["amplitude"] = amplitude;
    out.config["phase"] = phase;
    out.config["t_max"] = t_max;
    out.config["samples"] = samples;
    const auto s = make_spectrum(a);
    const std::size_t n = ic_spectrum_size(s.get());
    if (mode < 1 || static_cast<std::size_t>(mode) > n)
        throw UsageProblem{"--mode must be in 1.." + std::to_string(n)};
    if (samples < 1) throw UsageProblem{"--samples must be >= 1"};

    std::vector<double> times(static_cast<std::size_t>(samples)), disp(times.size() * n);
    check(ic_spectrum_trajectory(s.get(), static_cast<std::size_t>(mode - 1), amplitude, phase, t_max, times.size(),
                                 times.data(), disp.data()));
    std::ostringstream csv;
    csv << "t";
    for (std::size_t i = 1; i <= n; ++i) csv << ",u_" << i;
    csv << "\n";
    json rows = json::array();
    for (std::size_t i = 0; i < times.size(); ++i) {
        csv << num(times[i]);
        std::vector<double> row(disp.begin() + static_cast<long>(i * n), disp.begin() + static_cast<long>((i + 1) * n));
        for (double x : row) csv << "," << num(x);
        csv << "\n";
        rows.push_back(row);
    }
    out.payload["times"] = times;
    out.payload["displacements"] = rows;
    out.csv = csv.str();
    return out;
}

// ---- stability ------------------------------------------------------------

const char* governing_name(ic_governing g) { return g == IC_CENTER_FIXED ? "center_fixed" : "center_moving"; }

Output run_stability(int n, std::optional<double> mu, std::optional<double> mu_min, std::optional<double> mu_max,
                     int points) {
    Output out;
    out.config["n"] = n;
    if (mu) {
        out.config["mu"] = *mu;
        double eps = 0.0;
        ic_governing g{};
        check(ic_epsilon_s(n, *mu, &eps, &g));
        out.payload["epsilon_s"] = eps;
        out.payload["governing_mode"] = governing_name(g);
        out.csv = "mu,epsilon_s,governing_mode\n" + num(*mu) + "," + num(eps) + "," + governing_name(g) + "\n";
        return out;
    }
    if (!mu_min || !mu_max) throw UsageProblem{"stability needs --mu or both --mu-min and --mu-max"};
    out.config["mu_min"] = *mu_min;
    out.config["mu_max"] = *mu_max;
    out.config["points"] = points;
    ic_stability_curve* raw = nullptr;
    check(ic_stability_curve_create(n, *mu_min, *mu_max, points, &raw));
    Curve c(raw);

    double cusp_lo = 0, cusp_hi = 0, cusp_mu = 0;
    const bool has_cusp = ic_stability_curve_cusp(c.get(), &cusp_lo, &cusp_hi, &cusp_mu) == 1;
    std::ostringstream csv;
    csv << "mu,epsilon_s,governing_mode\n";
    json grid = json::array(), eps_s = json::array(), gov = json::array();
    bool cusp_written = false;
    for (std::size_t i = 0; i < ic_stability_curve_size(c.get()); ++i) {
        double m = 0, e = 0;
        ic_governing g{};
        check(ic_stability_curve_point(c.get(), i, &m, &e, &g));
        if (has_cusp && !cusp_written && m > cusp_mu) {
            double ce = 0;
            ic_governing cg{};
            check(ic_epsilon_s(n, cusp_mu, &ce, &cg));
            csv << num(cusp_mu) << "," << num(ce) << ",cusp\n";
            cusp_written = true;
        }
        csv << num(m) << "," << num(e) << "," << governing_name(g) << "\n";
        grid.push_back(m);
        eps_s.push_back(e);
        gov.push_back(governing_name(g));
    }
    out.payload["mu"] = grid;
    out.payload["epsilon_s"] = eps_s;
    out.payload["governing_mode"] = gov;
    out.payload["cusp"] = has_cusp ? json{{"mu", cusp_mu}, {"mu_lo", cusp_lo}, {"mu_hi", cusp_hi}} : json(nullptr);
    out.csv = csv.str();
    return out;
}

// ---- laboratory units -----------------------------------------------------

struct PhysicalArgs {
    std::string outer, center;
    double fz_mhz = 0.0;
    std::optional<double> fr_mhz;
};

// Spectrum for outer-center-outer ions. Transverse uses --fr-mhz when given,
// otherwise epsilon_ratio * epsilon_s.
Spectrum physical_spectrum(const ic_species_table* t, int n, double mu, const PhysicalArgs& p, ic_branch branch,
                           std::optional<double> epsilon_ratio, json& payload) {
    ic_trap trap{p.fz_mhz * 1e6, 0.0, 0.0, 0.0};
    if (branch == IC_TRANSVERSE) {
        if (p.fr_mhz) {
            trap.radial_frequency_hz = *p.fr_mhz * 1e6;
        } else {
            double eps_s = 0, radial = 0;
            int marginal = 0;
            check(ic_epsilon_for_ratio(t, n, p.outer.c_str(), p.center.c_str(), trap.axial_frequency_hz,
                                       epsilon_ratio.value_or(1.1), &eps_s, &radial, &marginal));
            trap.radial_frequency_hz = radial;
            payload["epsilon_s"] = eps_s;
            payload["marginal"] = marginal != 0;
        }
        payload["radial_frequency_hz"] = trap.radial_frequency_hz;
        payload["epsilon"] = trap.radial_frequency_hz / trap.axial_frequency_hz;
    }
    ic_spectrum* raw = nullptr;
    check(ic_physical_spectrum(t, n, mu, p.outer.c_str(), p.center.c_str(), &trap, branch, &raw));
    return Spectrum(raw);
}

Output run_physical(const Globals& g, int n, const PhysicalArgs& p, const std::string& branch,
                    std::optional<double> epsilon_ratio) {
    Output out;
    out.config = {{"n", n}, {"outer", p.outer}, {"center", p.center}, {"fz_mhz", p.fz_mhz}, {"branch", branch}};
    if (epsilon_ratio) out.config["epsilon_ratio"] = *epsilon_ratio;
    if (p.fr_mhz) out.config["fr_mhz"] = *p.fr_mhz;
    const auto t = load_table(g);

    double mu = 0, l = 0;
    check(ic_mass_ratio(t.get(), p.outer.c_str(), p.center.c_str(), &mu));
    check(ic_length_scale(t.get(), p.outer.c_str(), p.fz_mhz * 1e6, &l));
    auto& pl = out.payload;
    pl["mu"] = mu;
    pl["axial_frequency_hz"] = p.fz_mhz * 1e6;
    pl["length_scale_m"] = l;
    const auto s = physical_spectrum(t.get(), n, 0.0, p, branch_of(branch), epsilon_ratio, pl);

    std::vector<double> hz(ic_spectrum_size(s.get()));
    check(ic_spectrum_frequencies_hz(s.get(), hz.data(), hz.size()));
    const auto cls = classes(s.get());
    pl["frequencies_hz"] = hz;
    json cl = json::array();
    for (auto c : cls) cl.push_back(class_name(c));
    pl["classes"] = cl;

    std::size_t mode = 0, neighbor = 0;
    double frac = 0, spacing = 0;
    check(ic_physical_logic_spacing(s.get(), &mode, &neighbor, &frac, &spacing));
    pl["logic_mode"] = mode + 1;
    pl["logic_neighbor"] = neighbor + 1;
    pl["logic_fractional_spacing"] = frac;
    pl["logic_spacing_hz"] = spacing;

    std::ostringstream csv;
    csv << "quantity,value\n";
    csv << "mu," << num(mu) << "\n";
    csv << "axial_frequency_hz," << num(p.fz_mhz * 1e6) << "\n";
    csv << "length_scale_m," << num(l) << "\n";
    for (const char* key : {"epsilon_s", "epsilon", "radial_frequency_hz"})
        if (pl.contains(key)) csv << key << "," << num(pl[key].get<double>()) << "\n";
    for (std::size_t k = 0; k < hz.size(); ++k)
        csv << "mode_" << k + 1 << "_frequency_hz," << num(hz[k]) << "\n";
    csv << "logic_mode," << mode + 1 << "\n";
    csv << "logic_neighbor," << neighbor + 1 << "\n";
    csv << "logic_fractional_spacing," << num(frac) << "\n";
    csv << "logic_spacing_hz," << num(spacing) << "\n";
    out.csv = csv.str();
    return out;
}

Output run_heating(const Globals& g, SpectrumArgs a, bool mu_given, bool physical, const PhysicalArgs& p,
                   std::optional<double> se) {
    Output out;
    echo_spectrum_args(a, out.config);
    if (!mu_given) out.config.erase("mu");
    Spectrum s;
    Table t;
    if (physical) {
        if (p.outer.empty() || p.center.empty() || !(p.fz_mhz > 0.0) || !se)
            throw UsageProblem{"--physical needs --outer, --center, --fz-mhz and --se"};
        if (a.epsilon) throw UsageProblem{"--physical takes --fr-mhz or --epsilon-ratio, not --epsilon"};
        out.config.update({{"outer", p.outer}, {"center", p.center}, {"fz_mhz", p.fz_mhz}, {"se", *se}});
        t = load_table(g);
        s = physical_spectrum(t.get(), a.n, mu_given ? a.mu : 0.0, p, branch_of(a.branch), a.epsilon_ratio,
                              out.payload);
    } else {
        if (!mu_given) throw UsageProblem{"heating needs --mu (or --physical with species)"};
        s = make_spectrum(a);
    }
    const std::size_t n = ic_spectrum_size(s.get());
    std::vector<double> r(n);
    check(ic_spectrum_heating(s.get(), r.data(), n));
    const auto z2 = squared_frequencies(s.get());
    const auto cls = classes(s.get());
    std::vector<double> quanta;
    if (physical) {
        quanta.resize(n);
        const std::vector<double> psd(n, *se);
        check(ic_physical_heating(s.get(), t.get(), p.outer.c_str(), psd.data(), n, quanta.data(), n));
    }

    std::ostringstream csv;
    csv << "mode,frequency,class,normalized_rate" << (physical ? ",quanta_per_second" : "") << "\n";
    json freqs = json::array(), cl = json::array();
    for (std::size_t k = 0; k < n; ++k) {
        freqs.push_back(std::sqrt(z2[k]));
        cl.push_back(class_name(cls[k]));
        csv << k + 1 << "," << num(std::sqrt(z2[k])) << "," << class_name(cls[k]) << "," << num(r[k]);
        if (physical) csv << "," << num(quanta[k]);
        csv << "\n";
    }
    out.payload["mu"] = ic_spectrum_mu(s.get());
    out.payload["frequencies"] = freqs;
    out.payload["classes"] = cl;
    out.payload["normalized_rates"] = r;
    out.payload["multiplicity"] = ic_spectrum_multiplicity(s.get());
    if (physical) out.payload["quanta_per_second"] = quanta;
    out.csv = csv.str();
    return out;
}

Output run_equilibrium(int n) {
    Output out;
    out.config["n"] = n;
    check(ic_validate_config(n, 1.0, 0, 0.0));
    std::vector<double> pos(static_cast<std::size_t>(n));
    double residual = 0.0;
    check(ic_equilibrium(n, pos.data(), pos.size(), &residual));
    std::ostringstream csv;
    csv << "ion,position\n";
    for (std::size_t i = 0; i < pos.size(); ++i) csv << i + 1 << "," << num(pos[i]) << "\n";
    out.payload["positions"] = pos;
    out.payload["residual"] = residual;
    out.csv = csv.str();
    return out;
}

Output run_figure(int id, const std::string& dir) {
    Output out;
    out.config = {{"id", id}, {"out", dir}};
    check(ic_figure_write(id, dir.c_str()));
    json files = json::array();
    std::ostringstream csv;
    csv << "file\n";
    for (int n : {3, 5, 7, 9}) {
        const std::string path = dir + "/figure" + std::to_string(id) + "_n" + std::to_string(n) + ".csv";
        files.push_back(path);
        csv << path << "\n";
    }
    out.payload["files"] = files;
    out.csv = csv.str();
    return out;
}

Output run_species(const Globals& g, const std::string& add) {
    Output out;
    auto t = load_table(g);
    if (!add.empty()) {
        out.config["add"] = add;
        check(ic_species_table_load(t.get(), add.c_str()));
    }
    std::ostringstream csv;
    csv << "name,mass_u,charge\n";
    json list = json::array();
    for (std::size_t i = 0; i < ic_species_table_size(t.get()); ++i) {
        const char* name = nullptr;
        double mass = 0;
        int charge = 0;
        check(ic_species_table_entry(t.get(), i, &name, &mass, &charge));
        csv << name << "," << num(mass) << "," << charge << "\n";
        list.push_back({{"name", name}, {"mass_u", mass}, {"charge", charge}});
    }
    out.payload["species"] = list;
    out.csv = csv.str();
    return out;
}

void emit(const Globals& g, const std::string& command, const Output& out) {
    if (g.format == "json") {
        json doc;
        doc["metadata"] = {{"tool", "ionchain"},
                           {"version", ic_version()},
                           {"command", command},
                           {"config", out.config},
                           {"deterministic", true}};
        doc["payload"] = out.payload;
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << "# ionchain " << command << " version=" << ic_version() << "\n" << out.csv;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal modes, stability and heating of a linear ion string with a distinct center ion.",
                 "ionchain"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--quiet", g.quiet, "suppress informational messages on stderr");
    app.add_option("--species-file", g.species_file, "extra species, one `name mass_u charge` per line");
    app.set_version_flag("--version", std::string("ionchain ") + ic_version());

    int n = 0;
    auto* eq = app.add_subcommand("equilibrium", "equilibrium positions in units of the length scale");
    eq->add_option("--n", n, "number of ions")->required();

    SpectrumArgs modes_args;
    auto* modes = app.add_subcommand("modes", "normal-mode frequencies, eigenvectors and classes");
    add_spectrum_options(modes, modes_args);

    int stab_n = 0, points = 200;
    std::optional<double> stab_mu, mu_min, mu_max;
    auto* stab = app.add_subcommand("stability", "string stability threshold epsilon_s");
    stab->add_option("--n", stab_n, "number of ions")->required();
    auto* stab_mu_opt = stab->add_option("--mu", stab_mu, "single mass ratio");
    stab->add_option("--mu-min", mu_min, "curve: lowest mass ratio")->excludes(stab_mu_opt);
    stab->add_option("--mu-max", mu_max, "curve: highest mass ratio")->excludes(stab_mu_opt);
    stab->add_option("--points", points, "curve: log-spaced grid points");

    SpectrumArgs heat_args;
    PhysicalArgs heat_phys;
    bool physical_flag = false;
    std::optional<double> se;
    auto* heat = app.add_subcommand("heating", "uniform-field heating rates");
    add_spectrum_options(heat, heat_args, false);
    heat->add_flag("--physical", physical_flag, "also report quanta per second");
    heat->add_option("--outer", heat_phys.outer, "outer ion species");
    heat->add_option("--center", heat_phys.center, "center ion species");
    heat->add_option("--fz-mhz", heat_phys.fz_mhz, "single-ion axial frequency of the outer species, MHz");
    heat->add_option("--fr-mhz", heat_phys.fr_mhz, "radial frequency of the outer species, MHz");
    heat->add_option("--se", se, "field noise spectral density, V^2 m^-2 Hz^-1");

    SpectrumArgs traj_args;
    int traj_mode = 1, samples = 101;
    double amplitude = 1.0, phase = 0.0, t_max = 10.0;
    auto* traj = app.add_subcommand("trajectory", "ion displacements for one excited mode");
    add_spectrum_options(traj, traj_args);
    traj->add_option("--mode", traj_mode, "mode index, 1-based in ascending frequency")->required();
    traj->add_option("--amplitude", amplitude, "mode amplitude, length-scale units");
    traj->add_option("--phase", phase, "phase, radians");
    traj->add_option("--t-max", t_max, "last normalized time w_z t");
    traj->add_option("--samples", samples, "number of time samples");

    int phys_n = 3;
    PhysicalArgs phys;
    std::string phys_branch = "axial";
    std::optional<double> phys_ratio;
    auto* physical = app.add_subcommand("physical", "mode frequencies and logic-mode spacing in Hz");
    physical->add_option("--n", phys_n, "number of ions");
    physical->add_option("--outer", phys.outer, "outer ion species")->required();
    physical->add_option("--center", phys.center, "center ion species")->required();
    physical->add_option("--fz-mhz", phys.fz_mhz, "single-ion axial frequency of the outer species, MHz")
        ->required();
    physical->add_option("--branch", phys_branch, "axial or transverse")
        ->check(CLI::IsMember({"axial", "transverse"}));
    auto* ratio_opt = physical->add_option("--epsilon-ratio", phys_ratio, "transverse: epsilon / epsilon_s (1.1)");
    physical->add_option("--fr-mhz", phys.fr_mhz, "transverse: radial frequency of the outer species, MHz")
        ->excludes(ratio_opt);

    int fig_id = 0;
    std::string fig_out;
    auto* fig = app.add_subcommand("figure", "write figure datasets figure<id>_n{3,5,7,9}.csv");
    fig->add_option("--id", fig_id, "figure 1..5")->required();
    fig->add_option("--out", fig_out, "output directory")->required();

    bool list = false;
    std::string add_file;
    auto* species = app.add_subcommand("species", "list species, optionally merged with a file");
    auto* list_opt = species->add_flag("--list", list, "list the species table");
    species->add_option("--add", add_file, "validate and merge a species file")->excludes(list_opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    const auto* sub = app.get_subcommands().front();
    try {
        Output out;
        if (sub == eq) {
            out = run_equilibrium(n);
        } else if (sub == modes) {
            out = run_modes(modes_args);
        } else if (sub == stab) {
            out = run_stability(stab_n, stab_mu, mu_min, mu_max, points);
        } else if (sub == heat) {
            out = run_heating(g, heat_args, heat->count("--mu") > 0, physical_flag, heat_phys, se);
        } else if (sub == traj) {
            out = run_trajectory(traj_args, traj_mode, amplitude, phase, t_max, samples);
        } else if (sub == physical) {
            out = run_physical(g, phys_n, phys, phys_branch, phys_ratio);
        } else if (sub == fig) {
            out = run_figure(fig_id, fig_out);
            if (!g.quiet) std::cerr << "wrote 4 files to " << fig_out << "\n";
        } else {
            if (!list && add_file.empty()) throw UsageProblem{"species needs --list or --add <file>"};
            out = run_species(g, add_file);
        }
        emit(g, sub->get_name(), out);
    } catch (const CallFailed& e) {
        std::cerr << "error: " << e.message << "\n";
        return exit_code(e.status);
    } catch (const UsageProblem& e) {
        std::cerr << "error: " << e.message << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
