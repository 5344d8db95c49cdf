#include "ionchain/heating.hpp"

#include <cmath>
#include <sstream>

#include "ionchain/errors.hpp"

namespace ionchain {

namespace {

void require_stable(const ModeSpectrum& spectrum) {
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (!spectrum.stable(k)) {
            std::ostringstream os;
            os << "heating rates need a stable string; " << to_string(spectrum.branch()) << " mode " << k + 1
               << " has zeta^2 = " << spectrum.squared_frequency(k);
            throw DomainError(os.str());
        }
    }
}

}  // namespace

std::vector<double> uniform_field_coupling(const ModeSpectrum& spectrum) {
    const std::size_t center = spectrum.config().center();
    const double center_scale = 1.0 / std::sqrt(spectrum.config().mu());
    std::vector<double> out;
    out.reserve(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        const auto v = spectrum.eigenvector(k);
        double s = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) s += (j == center) ? v[j] * center_scale : v[j];
        out.push_back(s);
    }
    return out;
}

HeatingRates normalized_heating(const ModeSpectrum& spectrum) {
    require_stable(spectrum);
    const auto coupling = uniform_field_coupling(spectrum);
    const double n = static_cast<double>(spectrum.size());
    HeatingRates rates;
    rates.branch = spectrum.branch();
    for (std::size_t k = 0; k < spectrum.size(); ++k)
        rates.normalized.push_back(coupling[k] * coupling[k] / (n * spectrum.frequency(k)));
    return rates;
}

std::vector<double> physical_heating(const ModeSpectrum& spectrum, const IonSpecies& outer,
                                     const PhysicalTrapParams& trap, std::span<const double> field_psd) {
    require_stable(spectrum);
    validate_species(outer);
    if (field_psd.size() != spectrum.size()) {
        std::ostringstream os;
        os << "need one field spectral density per mode: got " << field_psd.size() << " for " << spectrum.size()
           << " modes";
        throw ValidationError(ValidationCode::MissingSpectralDensity, os.str());
    }
    if (!(trap.axial_frequency_hz > 0.0))
        throw ValidationError(ValidationCode::BadArgument, "axial frequency must be positive");

    const auto coupling = uniform_field_coupling(spectrum);
    const double q = outer.charge_c();
    const double w_z = 2.0 * constants::kPi * trap.axial_frequency_hz;
    std::vector<double> out;
    out.reserve(spectrum.size());
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (!(field_psd[k] > 0.0) || !std::isfinite(field_psd[k])) {
            std::ostringstream os;
            os << "field spectral density for mode " << k + 1 << " must be positive, got " << field_psd[k];
            throw ValidationError(ValidationCode::MissingSpectralDensity, os.str());
        }
        const double w_k = spectrum.frequency(k) * w_z;
        out.push_back(q * q * field_psd[k] / (4.0 * outer.mass_kg() * constants::kHbar * w_k) * coupling[k] *
                      coupling[k]);
    }
    return out;
}

HeatingRates heating_with_flat_noise(const ModeSpectrum& spectrum, const IonSpecies& outer,
                                     const PhysicalTrapParams& trap, double field_psd) {
    HeatingRates rates = normalized_heating(spectrum);
    const std::vector<double> psd(spectrum.size(), field_psd);
    rates.physical = physical_heating(spectrum, outer, trap, psd);
    return rates;
}

}  // namespace ionchain
