#include "ionchain/ionchain.h"

#include <cmath>
#include <exception>
#include <new>
#include <optional>
#include <string>

#include "ionchain/equilibrium.hpp"
#include "ionchain/errors.hpp"
#include "ionchain/heating.hpp"
#include "ionchain/modes.hpp"
#include "ionchain/physical.hpp"
#include "ionchain/stability.hpp"
#include "ionchain/sweep.hpp"

struct ic_spectrum {
    ionchain::ModeSpectrum spectrum;
    std::optional<ionchain::PhysicalTrapParams> trap;  // set for physical spectra
    std::vector<double> frequencies_hz;
};

struct ic_stability_curve {
    ionchain::StabilityBoundary boundary;
};

struct ic_species_table {
    ionchain::SpeciesTable table;
};

namespace {

using namespace ionchain;

thread_local std::string g_last_error;
thread_local std::string g_last_code;

ic_status fail(ic_status status, const std::string& message, const std::string& code = {}) {
    g_last_error = message;
    g_last_code = code;
    return status;
}

// Runs fn, translating library exceptions into status codes.
template <class Fn>
ic_status guarded(Fn&& fn) noexcept {
    try {
        g_last_error.clear();
        g_last_code.clear();
        return fn();
    } catch (const ValidationError& e) {
        return fail(IC_ERR_VALIDATION, e.what(), to_string(e.code()));
    } catch (const DomainError& e) {
        return fail(IC_ERR_DOMAIN, e.what());
    } catch (const NumericError& e) {
        return fail(IC_ERR_NUMERIC, e.what());
    } catch (const IoError& e) {
        return fail(IC_ERR_IO, e.what());
    } catch (const std::bad_alloc&) {
        return fail(IC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(IC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(IC_ERR_INTERNAL, "unknown error");
    }
}

ic_status null_arg(const char* what) {
    return fail(IC_ERR_VALIDATION, std::string("null argument: ") + what, "BadArgument");
}

ic_status copy_out(std::span<const double> src, double* out, std::size_t capacity) {
    if (!out) return null_arg("out");
    if (capacity < src.size())
        return fail(IC_ERR_BUFFER, "output buffer holds " + std::to_string(capacity) + " values, need " +
                                       std::to_string(src.size()));
    std::copy(src.begin(), src.end(), out);
    return IC_OK;
}

PhysicalTrapParams to_trap(const ic_trap& t) {
    PhysicalTrapParams p;
    p.axial_frequency_hz = t.axial_frequency_hz;
    if (t.radial_frequency_hz != 0.0) p.radial_frequency_hz = t.radial_frequency_hz;
    if (t.rf_frequency_hz != 0.0) p.rf_frequency_hz = t.rf_frequency_hz;
    if (t.rf_strength != 0.0) p.rf_strength = t.rf_strength;
    return p;
}

ic_status emit_spectrum(ModeSpectrum s, ic_spectrum** out) {
    *out = new ic_spectrum{std::move(s), std::nullopt, {}};
    return IC_OK;
}

}  // namespace

extern "C" {

const char* ic_version(void) { return kVersion; }
const char* ic_last_error(void) { return g_last_error.c_str(); }
const char* ic_last_error_code(void) { return g_last_code.c_str(); }

ic_status ic_validate_config(int n, double mu, int has_epsilon, double epsilon) {
    return guarded([&] {
        make_config(n, mu, has_epsilon ? std::optional<double>(epsilon) : std::nullopt);
        return IC_OK;
    });
}

ic_status ic_equilibrium(int n, double* positions, size_t capacity, double* residual) {
    return guarded([&] {
        const auto eq = equilibrium_positions(n);
        if (residual) *residual = eq.residual;
        return copy_out(eq.positions, positions, capacity);
    });
}

ic_status ic_potential_energy(const double* positions, size_t count, double* energy) {
    if (!energy || (count > 0 && !positions)) return null_arg("positions/energy");
    return guarded([&] {
        *energy = potential_energy(std::span<const double>(positions, count));
        return IC_OK;
    });
}

ic_status ic_spectrum_create_axial(int n, double mu, ic_spectrum** out) {
    if (!out) return null_arg("out");
    return guarded([&] { return emit_spectrum(compute_spectrum(make_config(n, mu), Branch::Axial), out); });
}

ic_status ic_spectrum_create_transverse(int n, double mu, double epsilon, ic_spectrum** out) {
    if (!out) return null_arg("out");
    return guarded(
        [&] { return emit_spectrum(compute_spectrum(make_config(n, mu, epsilon), Branch::Transverse), out); });
}

ic_status ic_spectrum_create_transverse_ratio(int n, double mu, double ratio, ic_spectrum** out) {
    if (!out) return null_arg("out");
    return guarded([&] {
        make_config(n, mu);
        if (!(ratio > 0.0) || !std::isfinite(ratio))
            throw ValidationError(ValidationCode::BadArgument, "epsilon ratio must be positive");
        const double eps = ratio * epsilon_s(n, mu).epsilon_s;
        return emit_spectrum(compute_spectrum(make_config(n, mu, eps), Branch::Transverse), out);
    });
}

void ic_spectrum_destroy(ic_spectrum* s) { delete s; }

size_t ic_spectrum_size(const ic_spectrum* s) { return s ? s->spectrum.size() : 0; }

ic_branch ic_spectrum_branch(const ic_spectrum* s) {
    return s && s->spectrum.branch() == Branch::Transverse ? IC_TRANSVERSE : IC_AXIAL;
}

double ic_spectrum_mu(const ic_spectrum* s) { return s ? s->spectrum.config().mu() : 0.0; }

double ic_spectrum_epsilon(const ic_spectrum* s) {
    if (!s || s->spectrum.branch() == Branch::Axial) return 0.0;
    return s->spectrum.config().epsilon().value_or(0.0);
}

int ic_spectrum_multiplicity(const ic_spectrum* s) { return s ? s->spectrum.multiplicity() : 0; }

ic_status ic_spectrum_squared_frequencies(const ic_spectrum* s, double* out, size_t capacity) {
    if (!s) return null_arg("spectrum");
    return copy_out(s->spectrum.squared_frequencies(), out, capacity);
}

ic_status ic_spectrum_eigenvector(const ic_spectrum* s, size_t k, double* out, size_t capacity) {
    if (!s) return null_arg("spectrum");
    if (k >= s->spectrum.size()) return fail(IC_ERR_VALIDATION, "mode index out of range", "BadArgument");
    return copy_out(s->spectrum.eigenvector(k), out, capacity);
}

ic_status ic_spectrum_classes(const ic_spectrum* s, ic_mode_class* out, size_t capacity) {
    if (!s || !out) return null_arg("spectrum/out");
    if (capacity < s->spectrum.size()) return fail(IC_ERR_BUFFER, "output buffer too small");
    for (std::size_t k = 0; k < s->spectrum.size(); ++k)
        out[k] = s->spectrum.classification(k) == ModeClass::Cold ? IC_COLD : IC_HOT;
    return IC_OK;
}

ic_status ic_spectrum_heating(const ic_spectrum* s, double* out, size_t capacity) {
    if (!s) return null_arg("spectrum");
    return guarded([&] { return copy_out(normalized_heating(s->spectrum).normalized, out, capacity); });
}

ic_status ic_spectrum_fractional_spacing(const ic_spectrum* s, size_t k, double* spacing, size_t* neighbor) {
    if (!s || !spacing) return null_arg("spectrum/spacing");
    return guarded([&] {
        if (k >= s->spectrum.size()) throw ValidationError(ValidationCode::BadArgument, "mode index out of range");
        const auto r = fractional_spacing(s->spectrum, k);
        *spacing = r.spacing;
        if (neighbor) *neighbor = r.neighbor;
        return IC_OK;
    });
}

ic_status ic_spectrum_logic_mode(const ic_spectrum* s, size_t* mode) {
    if (!s || !mode) return null_arg("spectrum/mode");
    return guarded([&] {
        *mode = select_logic_mode(s->spectrum);
        return IC_OK;
    });
}

ic_status ic_spectrum_trajectory(const ic_spectrum* s, size_t k, double amplitude, double phase, double t_max,
                                 size_t samples, double* times, double* displacements) {
    if (!s || !times || !displacements) return null_arg("spectrum/times/displacements");
    return guarded([&] {
        if (samples < 1 || !(t_max >= 0.0) || !std::isfinite(t_max))
            throw ValidationError(ValidationCode::BadArgument, "trajectory needs samples >= 1 and t_max >= 0");
        std::vector<double> grid(samples);
        for (std::size_t i = 0; i < samples; ++i)
            grid[i] = samples == 1 ? 0.0 : t_max * static_cast<double>(i) / static_cast<double>(samples - 1);
        const auto traj = mode_trajectory(s->spectrum, k, amplitude, phase, grid);
        const std::size_t n = s->spectrum.size();
        for (std::size_t i = 0; i < samples; ++i) {
            times[i] = traj.times[i];
            for (std::size_t j = 0; j < n; ++j) displacements[i * n + j] = traj.displacements[i][j];
        }
        return IC_OK;
    });
}

ic_status ic_axial_n3_analytic(double mu, double frequencies[3], double vectors[9]) {
    if (!frequencies || !vectors) return null_arg("frequencies/vectors");
    return guarded([&] {
        const auto a = axial_n3_analytic(mu);
        for (int k = 0; k < 3; ++k) {
            frequencies[k] = a.frequencies[k];
            for (int i = 0; i < 3; ++i) vectors[k * 3 + i] = a.eigenvectors[k][i];
        }
        return IC_OK;
    });
}

ic_status ic_epsilon_s(int n, double mu, double* eps, ic_governing* governing) {
    if (!eps) return null_arg("epsilon_s");
    return guarded([&] {
        const auto pt = epsilon_s(n, mu);
        *eps = pt.epsilon_s;
        if (governing) *governing = pt.governing == GoverningMode::CenterFixed ? IC_CENTER_FIXED : IC_CENTER_MOVING;
        return IC_OK;
    });
}

ic_status ic_stability_curve_create(int n, double mu_min, double mu_max, int points, ic_stability_curve** out) {
    if (!out) return null_arg("out");
    return guarded([&] {
        *out = new ic_stability_curve{stability_curve(n, mu_min, mu_max, points)};
        return IC_OK;
    });
}

void ic_stability_curve_destroy(ic_stability_curve* c) { delete c; }

size_t ic_stability_curve_size(const ic_stability_curve* c) { return c ? c->boundary.mu_grid.size() : 0; }

ic_status ic_stability_curve_point(const ic_stability_curve* c, size_t i, double* mu, double* eps,
                                   ic_governing* governing) {
    if (!c) return null_arg("curve");
    if (i >= c->boundary.mu_grid.size()) return fail(IC_ERR_VALIDATION, "point index out of range", "BadArgument");
    if (mu) *mu = c->boundary.mu_grid[i];
    if (eps) *eps = c->boundary.epsilon_s[i];
    if (governing)
        *governing = c->boundary.governing[i] == GoverningMode::CenterFixed ? IC_CENTER_FIXED : IC_CENTER_MOVING;
    return IC_OK;
}

int ic_stability_curve_cusp(const ic_stability_curve* c, double* mu_lo, double* mu_hi, double* mu) {
    if (!c || !c->boundary.cusp) return 0;
    if (mu_lo) *mu_lo = c->boundary.cusp->mu_lo;
    if (mu_hi) *mu_hi = c->boundary.cusp->mu_hi;
    if (mu) *mu = c->boundary.cusp->mu;
    return 1;
}

ic_status ic_species_table_create(ic_species_table** out) {
    if (!out) return null_arg("out");
    return guarded([&] {
        *out = new ic_species_table{SpeciesTable::builtin()};
        return IC_OK;
    });
}

void ic_species_table_destroy(ic_species_table* t) { delete t; }

ic_status ic_species_table_load(ic_species_table* t, const char* path) {
    if (!t || !path) return null_arg("table/path");
    return guarded([&] {
        // Load into a copy so a malformed file leaves the table untouched.
        SpeciesTable updated = t->table;
        updated.load_file(path);
        t->table = std::move(updated);
        return IC_OK;
    });
}

size_t ic_species_table_size(const ic_species_table* t) { return t ? t->table.entries().size() : 0; }

ic_status ic_species_table_entry(const ic_species_table* t, size_t i, const char** name, double* mass_u,
                                 int* charge) {
    if (!t) return null_arg("table");
    if (i >= t->table.entries().size()) return fail(IC_ERR_VALIDATION, "species index out of range", "BadArgument");
    const auto& e = t->table.entries()[i];
    if (name) *name = e.name.c_str();
    if (mass_u) *mass_u = e.mass_u;
    if (charge) *charge = e.charge;
    return IC_OK;
}

ic_status ic_mass_ratio(const ic_species_table* t, const char* outer, const char* center, double* mu) {
    if (!t || !outer || !center || !mu) return null_arg("table/outer/center/mu");
    return guarded([&] {
        *mu = mass_ratio(t->table.find(outer), t->table.find(center));
        return IC_OK;
    });
}

ic_status ic_length_scale(const ic_species_table* t, const char* species, double axial_frequency_hz,
                          double* meters) {
    if (!t || !species || !meters) return null_arg("table/species/meters");
    return guarded([&] {
        *meters = length_scale(t->table.find(species), axial_frequency_hz);
        return IC_OK;
    });
}

ic_status ic_physical_spectrum(const ic_species_table* t, int n, double mu, const char* outer, const char* center,
                               const ic_trap* trap, ic_branch branch, ic_spectrum** out) {
    if (!t || !outer || !center || !trap || !out) return null_arg("table/outer/center/trap/out");
    return guarded([&] {
        const auto& o = t->table.find(outer);
        const auto& c = t->table.find(center);
        const auto params = to_trap(*trap);
        auto ps = physical_spectrum(make_config(n, mu > 0.0 ? mu : mass_ratio(o, c)), o, c, params,
                                    branch == IC_TRANSVERSE ? Branch::Transverse : Branch::Axial);
        *out = new ic_spectrum{std::move(ps.spectrum), params, std::move(ps.frequencies_hz)};
        return IC_OK;
    });
}

ic_status ic_spectrum_frequencies_hz(const ic_spectrum* s, double* out, size_t capacity) {
    if (!s) return null_arg("spectrum");
    if (!s->trap) return fail(IC_ERR_VALIDATION, "spectrum has no trap parameters", "BadArgument");
    return copy_out(s->frequencies_hz, out, capacity);
}

ic_status ic_physical_logic_spacing(const ic_spectrum* s, size_t* mode, size_t* neighbor, double* fractional,
                                    double* spacing_hz) {
    if (!s) return null_arg("spectrum");
    if (!s->trap) return fail(IC_ERR_VALIDATION, "spectrum has no trap parameters", "BadArgument");
    return guarded([&] {
        const PhysicalSpectrum ps{s->spectrum, s->frequencies_hz, s->trap->axial_frequency_hz};
        const auto r = logic_mode_spacing(ps);
        if (mode) *mode = r.mode;
        if (neighbor) *neighbor = r.neighbor;
        if (fractional) *fractional = r.fractional;
        if (spacing_hz) *spacing_hz = r.spacing_hz;
        return IC_OK;
    });
}

ic_status ic_epsilon_for_ratio(const ic_species_table* t, int n, const char* outer, const char* center,
                               double axial_frequency_hz, double ratio, double* eps_s, double* radial_frequency_hz,
                               int* marginal) {
    if (!t || !outer || !center) return null_arg("table/outer/center");
    return guarded([&] {
        const auto r = epsilon_for_ratio(n, t->table.find(outer), t->table.find(center), axial_frequency_hz, ratio);
        if (eps_s) *eps_s = r.epsilon_s;
        if (radial_frequency_hz) *radial_frequency_hz = r.radial_frequency_hz;
        if (marginal) *marginal = r.marginal ? 1 : 0;
        return IC_OK;
    });
}

ic_status ic_physical_heating(const ic_spectrum* s, const ic_species_table* t, const char* outer,
                              const double* field_psd, size_t count, double* out, size_t capacity) {
    if (!s || !t || !outer) return null_arg("spectrum/table/outer");
    if (!s->trap) return fail(IC_ERR_VALIDATION, "spectrum has no trap parameters", "BadArgument");
    if (count > 0 && !field_psd) return null_arg("field_psd");
    return guarded([&] {
        const auto rates = physical_heating(s->spectrum, t->table.find(outer), *s->trap,
                                            std::span<const double>(field_psd, count));
        return copy_out(rates, out, capacity);
    });
}

ic_status ic_figure_write(int figure_id, const char* out_dir) {
    if (!out_dir) return null_arg("out_dir");
    return guarded([&] {
        write_figure_dataset(figure_id, out_dir);
        return IC_OK;
    });
}

}  // extern "C"
