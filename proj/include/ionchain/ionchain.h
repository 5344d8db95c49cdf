/*
 * ionchain C API.
 *
 * Normal modes, string stability and uniform-field heating for a linear ion
 * string whose center ion has a different mass. All quantities are
 * dimensionless (frequencies in units of the outer-ion axial frequency)
 * unless the function name says otherwise.
 *
 * Every fallible call returns an ic_status. On failure, ic_last_error()
 * returns a one-line message for the calling thread; ic_last_error_code()
 * names the validation reason (e.g. "EvenIonCount") or returns "".
 * Mode indices are zero-based. Handles are immutable once created and may be
 * read from several threads.
 */
#ifndef IONCHAIN_H
#define IONCHAIN_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(IONCHAIN_BUILDING)
#    define IONCHAIN_API __declspec(dllexport)
#  else
#    define IONCHAIN_API __declspec(dllimport)
#  endif
#else
#  define IONCHAIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ic_status {
    IC_OK = 0,
    IC_ERR_VALIDATION = 1, /* bad input */
    IC_ERR_DOMAIN = 2,     /* physically meaningless request, e.g. unstable mode */
    IC_ERR_NUMERIC = 3,    /* solver failed to converge or bracket */
    IC_ERR_IO = 4,
    IC_ERR_BUFFER = 5,     /* caller buffer too small */
    IC_ERR_INTERNAL = 6
} ic_status;

typedef enum ic_branch { IC_AXIAL = 0, IC_TRANSVERSE = 1 } ic_branch;
typedef enum ic_mode_class { IC_COLD = 0, IC_HOT = 1 } ic_mode_class;
typedef enum ic_governing { IC_CENTER_MOVING = 0, IC_CENTER_FIXED = 1 } ic_governing;

typedef struct ic_spectrum ic_spectrum;
typedef struct ic_stability_curve ic_stability_curve;
typedef struct ic_species_table ic_species_table;

/* Trap parameters in Hz (w / 2pi) and V/m^2. Zero means "not given". */
typedef struct ic_trap {
    double axial_frequency_hz;
    double radial_frequency_hz;
    double rf_frequency_hz;
    double rf_strength;
} ic_trap;

IONCHAIN_API const char* ic_version(void);
IONCHAIN_API const char* ic_last_error(void);
IONCHAIN_API const char* ic_last_error_code(void);

/* ---- configuration and equilibrium ---- */

/* Checks (n, mu[, epsilon]) without computing anything. epsilon <= 0 is
 * rejected only when has_epsilon is nonzero. */
IONCHAIN_API ic_status ic_validate_config(int n, double mu, int has_epsilon, double epsilon);

/* Writes n positions (units of the length scale) and the force residual. */
IONCHAIN_API ic_status ic_equilibrium(int n, double* positions, size_t capacity, double* residual);
IONCHAIN_API ic_status ic_potential_energy(const double* positions, size_t count, double* energy);

/* ---- mode spectra ---- */

IONCHAIN_API ic_status ic_spectrum_create_axial(int n, double mu, ic_spectrum** out);
IONCHAIN_API ic_status ic_spectrum_create_transverse(int n, double mu, double epsilon, ic_spectrum** out);
/* Transverse spectrum at epsilon = ratio * epsilon_s(n, mu). */
IONCHAIN_API ic_status ic_spectrum_create_transverse_ratio(int n, double mu, double ratio, ic_spectrum** out);
IONCHAIN_API void ic_spectrum_destroy(ic_spectrum* s);

IONCHAIN_API size_t ic_spectrum_size(const ic_spectrum* s);
IONCHAIN_API ic_branch ic_spectrum_branch(const ic_spectrum* s);
IONCHAIN_API double ic_spectrum_mu(const ic_spectrum* s);
/* epsilon of a transverse spectrum, 0 for axial. */
IONCHAIN_API double ic_spectrum_epsilon(const ic_spectrum* s);
/* Branch multiplicity: 2 for transverse (x and y coincide), 1 for axial. */
IONCHAIN_API int ic_spectrum_multiplicity(const ic_spectrum* s);

/* Ascending signed squared frequencies; negative values are unstable modes. */
IONCHAIN_API ic_status ic_spectrum_squared_frequencies(const ic_spectrum* s, double* out, size_t capacity);
IONCHAIN_API ic_status ic_spectrum_eigenvector(const ic_spectrum* s, size_t k, double* out, size_t capacity);
IONCHAIN_API ic_status ic_spectrum_classes(const ic_spectrum* s, ic_mode_class* out, size_t capacity);
/* Normalized uniform-field heating rates; IC_ERR_DOMAIN if any mode is unstable. */
IONCHAIN_API ic_status ic_spectrum_heating(const ic_spectrum* s, double* out, size_t capacity);
IONCHAIN_API ic_status ic_spectrum_fractional_spacing(const ic_spectrum* s, size_t k, double* spacing,
                                                      size_t* neighbor);
IONCHAIN_API ic_status ic_spectrum_logic_mode(const ic_spectrum* s, size_t* mode);

/* Samples mode k on `samples` evenly spaced normalized times in [0, t_max].
 * times gets `samples` values, displacements samples * n values (row per time). */
IONCHAIN_API ic_status ic_spectrum_trajectory(const ic_spectrum* s, size_t k, double amplitude, double phase,
                                              double t_max, size_t samples, double* times,
                                              double* displacements);

/* Closed-form three-ion axial modes in analytic label order; vectors row-major 3x3. */
IONCHAIN_API ic_status ic_axial_n3_analytic(double mu, double frequencies[3], double vectors[9]);

/* ---- stability ---- */

IONCHAIN_API ic_status ic_epsilon_s(int n, double mu, double* epsilon_s, ic_governing* governing);
IONCHAIN_API ic_status ic_stability_curve_create(int n, double mu_min, double mu_max, int points,
                                                 ic_stability_curve** out);
IONCHAIN_API void ic_stability_curve_destroy(ic_stability_curve* c);
IONCHAIN_API size_t ic_stability_curve_size(const ic_stability_curve* c);
IONCHAIN_API ic_status ic_stability_curve_point(const ic_stability_curve* c, size_t i, double* mu,
                                                double* epsilon_s, ic_governing* governing);
/* Returns 1 and fills the bracket and refined position when a cusp was found, else 0. */
IONCHAIN_API int ic_stability_curve_cusp(const ic_stability_curve* c, double* mu_lo, double* mu_hi, double* mu);

/* ---- species and laboratory units ---- */

/* Built-in table (Be9, Mg24). */
IONCHAIN_API ic_status ic_species_table_create(ic_species_table** out);
IONCHAIN_API void ic_species_table_destroy(ic_species_table* t);
/* Merges `name mass_u charge` lines from a file. */
IONCHAIN_API ic_status ic_species_table_load(ic_species_table* t, const char* path);
IONCHAIN_API size_t ic_species_table_size(const ic_species_table* t);
/* name stays valid until the table is modified or destroyed. */
IONCHAIN_API ic_status ic_species_table_entry(const ic_species_table* t, size_t i, const char** name,
                                              double* mass_u, int* charge);
IONCHAIN_API ic_status ic_mass_ratio(const ic_species_table* t, const char* outer, const char* center,
                                     double* mu);
IONCHAIN_API ic_status ic_length_scale(const ic_species_table* t, const char* species, double axial_frequency_hz,
                                       double* meters);

/* Spectrum of outer-center-outer species in a trap. mu <= 0 takes the mass
 * ratio from the table; otherwise it must match the table within 1e-12.
 * Transverse needs trap->radial_frequency_hz or the rf pair. */
IONCHAIN_API ic_status ic_physical_spectrum(const ic_species_table* t, int n, double mu, const char* outer,
                                            const char* center, const ic_trap* trap, ic_branch branch,
                                            ic_spectrum** out);
/* Signed mode frequencies in Hz; only for spectra from ic_physical_spectrum. */
IONCHAIN_API ic_status ic_spectrum_frequencies_hz(const ic_spectrum* s, double* out, size_t capacity);
/* Logic mode, its nearest neighbor, and their separation in Hz. */
IONCHAIN_API ic_status ic_physical_logic_spacing(const ic_spectrum* s, size_t* mode, size_t* neighbor,
                                                 double* fractional, double* spacing_hz);
IONCHAIN_API ic_status ic_epsilon_for_ratio(const ic_species_table* t, int n, const char* outer,
                                            const char* center, double axial_frequency_hz, double ratio,
                                            double* epsilon_s, double* radial_frequency_hz, int* marginal);
/* Quanta per second per mode for per-mode field noise densities (V^2 m^-2 Hz^-1). */
IONCHAIN_API ic_status ic_physical_heating(const ic_spectrum* s, const ic_species_table* t, const char* outer,
                                           const double* field_psd, size_t count, double* out,
                                           size_t capacity);

/* ---- figure datasets ---- */

/* Writes figure<id>_n<N>.csv for N = 3, 5, 7, 9 into out_dir. */
IONCHAIN_API ic_status ic_figure_write(int figure_id, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* IONCHAIN_H */
