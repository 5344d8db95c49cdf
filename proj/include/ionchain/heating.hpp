#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ionchain/physical.hpp"
#include "ionchain/types.hpp"

namespace ionchain {

/// Heating by a spatially uniform stochastic field. Field gradients are
/// neglected, so Cold modes do not heat.
struct HeatingRates {
    Branch branch = Branch::Axial;
    /// Rate of each mode over the rate of the lowest axial mode of N identical
    /// ions, for a flat field spectrum.
    std::vector<double> normalized;
    /// Quanta per second, when trap parameters and field noise were supplied.
    std::optional<std::vector<double>> physical;
    bool flat_spectrum = true;
};

/// Coupling of each mode to a uniform force: v_nc / sqrt(mu) + sum_{j != nc} v_j.
std::vector<double> uniform_field_coupling(const ModeSpectrum& spectrum);

/// r_k = (coupling_k)^2 / (N zeta_k). Requires a fully stable spectrum.
HeatingRates normalized_heating(const ModeSpectrum& spectrum);

/// Quanta per second, q^2 S_E(zeta_k w_z) / (4 m hbar zeta_k w_z) (coupling_k)^2,
/// with field_psd[k] the noise spectral density (V^2 m^-2 Hz^-1) at mode k.
std::vector<double> physical_heating(const ModeSpectrum& spectrum, const IonSpecies& outer,
                                     const PhysicalTrapParams& trap, std::span<const double> field_psd);

/// Same, with one spectral density for every mode.
HeatingRates heating_with_flat_noise(const ModeSpectrum& spectrum, const IonSpecies& outer,
                                     const PhysicalTrapParams& trap, double field_psd);

}  // namespace ionchain
