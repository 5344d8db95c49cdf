#include "ionchain/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ionchain/errors.hpp"

namespace ionchain {

const char* to_string(ValidationCode code) {
    switch (code) {
        case ValidationCode::EvenIonCount: return "EvenIonCount";
        case ValidationCode::TooFewIons: return "TooFewIons";
        case ValidationCode::TooManyIons: return "TooManyIons";
        case ValidationCode::NonPositiveMassRatio: return "NonPositiveMassRatio";
        case ValidationCode::MassRatioOutOfRange: return "MassRatioOutOfRange";
        case ValidationCode::NonPositiveAnisotropy: return "NonPositiveAnisotropy";
        case ValidationCode::MissingAnisotropy: return "MissingAnisotropy";
        case ValidationCode::NonSymmetricMatrix: return "NonSymmetricMatrix";
        case ValidationCode::BadArgument: return "BadArgument";
        case ValidationCode::MassRatioMismatch: return "MassRatioMismatch";
        case ValidationCode::UnknownSpecies: return "UnknownSpecies";
        case ValidationCode::MalformedSpeciesFile: return "MalformedSpeciesFile";
        case ValidationCode::MissingSpectralDensity: return "MissingSpectralDensity";
    }
    return "Unknown";
}

std::string_view to_string(Branch b) { return b == Branch::Axial ? "axial" : "transverse"; }

std::string_view to_string(ModeClass c) { return c == ModeClass::Cold ? "cold" : "hot"; }

Branch parse_branch(std::string_view s) {
    if (s == "axial") return Branch::Axial;
    if (s == "transverse") return Branch::Transverse;
    throw ValidationError(ValidationCode::BadArgument,
                          "unknown branch '" + std::string(s) + "' (expected axial or transverse)");
}

void validate_ion_count(int n) {
    if (n < 3) {
        throw ValidationError(ValidationCode::TooFewIons,
                              "ion count " + std::to_string(n) + " is below the minimum of 3");
    }
    if (n % 2 == 0) {
        throw ValidationError(ValidationCode::EvenIonCount,
                              "ion count " + std::to_string(n) + " is even; a center ion needs an odd count");
    }
    if (n > kMaxIons) {
        throw ValidationError(ValidationCode::TooManyIons, "ion count " + std::to_string(n) +
                                                               " exceeds the supported maximum of " +
                                                               std::to_string(kMaxIons));
    }
}

CrystalConfig make_config(int n, double mu, std::optional<double> epsilon) {
    validate_ion_count(n);
    if (!(mu > 0.0)) {
        std::ostringstream os;
        os << "mass ratio mu = " << mu << " must be positive";
        throw ValidationError(ValidationCode::NonPositiveMassRatio, os.str());
    }
    if (mu < kMinMassRatio || mu > kMaxMassRatio || !std::isfinite(mu)) {
        std::ostringstream os;
        os << "mass ratio mu = " << mu << " outside supported range [" << kMinMassRatio << ", "
           << kMaxMassRatio << "]";
        throw ValidationError(ValidationCode::MassRatioOutOfRange, os.str());
    }
    if (epsilon && !(*epsilon > 0.0 && std::isfinite(*epsilon))) {
        std::ostringstream os;
        os << "trap anisotropy epsilon = " << *epsilon << " must be positive and finite";
        throw ValidationError(ValidationCode::NonPositiveAnisotropy, os.str());
    }
    return CrystalConfig(n, mu, epsilon);
}

double CrystalConfig::require_epsilon() const {
    if (!epsilon_)
        throw ValidationError(ValidationCode::MissingAnisotropy,
                              "transverse modes need the trap anisotropy epsilon");
    return *epsilon_;
}

CrystalConfig CrystalConfig::with_mu(double mu) const { return make_config(n_, mu, epsilon_); }

CrystalConfig CrystalConfig::with_epsilon(double epsilon) const { return make_config(n_, mu_, epsilon); }

ModeSpectrum::ModeSpectrum(Branch branch, CrystalConfig config, std::vector<double> squared_frequencies,
                           std::vector<std::vector<double>> eigenvectors, std::vector<ModeClass> classes)
    : branch_(branch),
      config_(std::move(config)),
      squared_(std::move(squared_frequencies)),
      eigenvectors_(std::move(eigenvectors)),
      classes_(std::move(classes)) {
    if (eigenvectors_.size() != squared_.size() || classes_.size() != squared_.size())
        throw ValidationError(ValidationCode::BadArgument, "ModeSpectrum: inconsistent mode counts");
}

double ModeSpectrum::frequency(std::size_t k) const {
    const double z2 = squared_.at(k);
    if (!(z2 > 0.0)) {
        std::ostringstream os;
        os << to_string(branch_) << " mode " << k + 1 << " is unstable (zeta^2 = " << z2 << ")";
        throw DomainError(os.str());
    }
    return std::sqrt(z2);
}

double ModeSpectrum::signed_frequency(std::size_t k) const {
    const double z2 = squared_.at(k);
    return z2 >= 0.0 ? std::sqrt(z2) : -std::sqrt(-z2);
}

bool ModeSpectrum::all_stable() const {
    return std::all_of(squared_.begin(), squared_.end(), [](double z2) { return z2 > 0.0; });
}

std::size_t ModeSpectrum::cold_count() const {
    return static_cast<std::size_t>(std::count(classes_.begin(), classes_.end(), ModeClass::Cold));
}

}  // namespace ionchain
