#pragma once

// Laboratory units. Frequencies are ordinary frequencies in Hz (w / 2pi);
// the axial frequency always refers to a single ion of the OUTER species.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ionchain/types.hpp"

namespace ionchain {

namespace constants {
inline constexpr double kElementaryCharge = 1.602176634e-19;     // C
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;     // kg
inline constexpr double kHbar = 1.054571817e-34;                 // J s
inline constexpr double kPi = 3.14159265358979323846;
}  // namespace constants

struct IonSpecies {
    std::string name;
    double mass_u = 0.0;  ///< unified atomic mass units
    int charge = 1;       ///< multiples of e

    double mass_kg() const { return mass_u * constants::kAtomicMassUnit; }
    double charge_c() const { return charge * constants::kElementaryCharge; }
};

void validate_species(const IonSpecies& s);

/// Name -> species lookup. Starts from the built-in table (Be9, Mg24) and can
/// be extended from text files with one `name mass_u charge` entry per line.
class SpeciesTable {
public:
    static SpeciesTable builtin();

    /// Adds or replaces an entry.
    void add(IonSpecies species);
    /// Parses `name mass_u charge` lines; `#` starts a comment.
    void load(std::istream& in, const std::string& source = "<stream>");
    void load_file(const std::string& path);

    const IonSpecies& find(const std::string& name) const;
    const std::vector<IonSpecies>& entries() const noexcept { return entries_; }

private:
    std::vector<IonSpecies> entries_;
};

struct PhysicalTrapParams {
    double axial_frequency_hz = 0.0;
    std::optional<double> rf_frequency_hz;      ///< Omega / 2pi
    std::optional<double> rf_strength;          ///< chi, V/m^2
    std::optional<double> radial_frequency_hz;  ///< w_r0 / 2pi for the outer species
};

/// M / m.
double mass_ratio(const IonSpecies& outer, const IonSpecies& center);

/// l = (q^2 / (4 pi eps0 m w_z^2))^(1/3), meters.
double length_scale(const IonSpecies& species, double axial_frequency_hz);

/// Axial curvature a0 = m w_z^2 / q, V/m^2.
double axial_curvature(const IonSpecies& species, double axial_frequency_hz);

/// Pseudopotential radial frequency q chi / (sqrt(2) Omega m), as w_r0 / 2pi.
double radial_frequency_from_rf(const IonSpecies& species, double rf_frequency_hz, double rf_strength);

/// w_r0 / 2pi of the given species, from the direct value or from (Omega, chi).
double radial_frequency(const PhysicalTrapParams& trap, const IonSpecies& species);

/// epsilon = w_r0 / w_z.
double anisotropy(const PhysicalTrapParams& trap, const IonSpecies& outer);

/// w_x / 2pi = f_z sqrt(eps^2 - 1/2) (equal to w_y / 2pi at alpha = 1/2).
double transverse_secular_frequency(const PhysicalTrapParams& trap, const IonSpecies& outer);

struct PhysicalSpectrum {
    ModeSpectrum spectrum;
    std::vector<double> frequencies_hz;  ///< signed: negative marks an unstable mode
    double axial_frequency_hz = 0.0;
};

PhysicalSpectrum physical_spectrum(const CrystalConfig& config, const IonSpecies& outer,
                                   const IonSpecies& center, const PhysicalTrapParams& trap, Branch branch);

/// Logic-mode choice and its separation from the nearest mode.
struct LogicModeSpacing {
    std::size_t mode = 0;
    std::size_t neighbor = 0;
    double fractional = 0.0;
    double spacing_hz = 0.0;
};

LogicModeSpacing logic_mode_spacing(const PhysicalSpectrum& ps);

struct RadialRequirement {
    double epsilon_s = 0.0;
    double epsilon = 0.0;
    double radial_frequency_hz = 0.0;  ///< w_r0 / 2pi of the outer species
    bool marginal = false;             ///< ratio == 1: exactly at the instability point
};

/// Radial frequency needed for epsilon = ratio * epsilon_s(n, mu). ratio < 1 is rejected.
RadialRequirement epsilon_for_ratio(int n, const IonSpecies& outer, const IonSpecies& center,
                                    double axial_frequency_hz, double ratio);

}  // namespace ionchain
